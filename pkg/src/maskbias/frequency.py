"""Profession corpus-frequency estimation from Google Books ngram data.

The estimate multiplies each term's yearly relative frequencies (queried
from the ngram JSON endpoint, 1700 to 2000, smoothing 0) by the published
yearly token counts of the corpus, then sums over years. Case handling
follows the probed model: lowercase queries for the uncased model,
case-insensitive summation for the cased one.

Fetched series are cached on disk, one JSON file per (term, case mode), so
reproduction runs and tests work without network access.
"""

from __future__ import annotations

import csv
import json
import logging
import os
import time
import urllib.parse
from dataclasses import dataclass
from pathlib import Path
from typing import Protocol, Sequence

import numpy as np

from .templates import ProfessionList, Profession

logger = logging.getLogger(__name__)

YEAR_START = 1700
YEAR_END = 2000
N_YEARS = YEAR_END - YEAR_START + 1

CASE_MODES = ("lowercase", "case-insensitive", "as-is")

CACHE_ENV_VAR = "MASKBIAS_NGRAM_CACHE"

NGRAM_URL = "https://books.google.com/ngrams/json"


class FrequencyError(ValueError):
    pass


class NgramTransportError(RuntimeError):
    pass


def _default_years() -> tuple[int, ...]:
    return tuple(range(YEAR_START, YEAR_END + 1))


def _check_axis(years: tuple[int, ...], values: np.ndarray, what: str) -> None:
    if len(years) != values.shape[0]:
        raise FrequencyError(
            f"{what}: {len(years)} years but {values.shape[0]} values"
        )
    if any(b - a != 1 for a, b in zip(years, years[1:])):
        raise FrequencyError(f"{what}: years are not contiguous")
    if np.any(values < 0):
        raise FrequencyError(f"{what}: negative values")


@dataclass(frozen=True)
class YearlySeries:
    """Relative frequency of one term per year (dimensionless fractions).

    API-fetched series always cover 1700..2000 (301 values); toy axes are
    allowed for direct construction in computations and tests.
    """

    term: str
    case_mode: str
    values: np.ndarray
    years: tuple[int, ...] = _default_years()

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", np.asarray(self.values, dtype=np.float64))
        object.__setattr__(self, "years", tuple(self.years))
        if self.case_mode not in CASE_MODES:
            raise FrequencyError(f"unknown case mode {self.case_mode!r}")
        _check_axis(self.years, self.values, f"series for {self.term!r}")
        self.values.setflags(write=False)


@dataclass(frozen=True)
class CorpusSizes:
    """Total token count of the corpus per year."""

    values: np.ndarray
    years: tuple[int, ...] = _default_years()

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", np.asarray(self.values, dtype=np.float64))
        object.__setattr__(self, "years", tuple(self.years))
        _check_axis(self.years, self.values, "corpus sizes")
        self.values.setflags(write=False)


@dataclass(frozen=True)
class FrequencyTable:
    professions: ProfessionList
    f: np.ndarray
    case_mode: str

    def __post_init__(self) -> None:
        object.__setattr__(self, "f", np.asarray(self.f, dtype=np.float64))
        if self.f.shape != (self.professions.p,):
            raise FrequencyError(
                f"frequency vector shape {self.f.shape} does not match p={self.professions.p}"
            )
        if np.any(self.f < 0):
            raise FrequencyError("negative frequency estimate")
        self.f.setflags(write=False)


class NgramTransport(Protocol):
    def get(self, content: str, case_insensitive: bool) -> list[dict]: ...


class HttpNgramTransport:
    """Live client for the ngram JSON endpoint with rate limiting and retries."""

    def __init__(
        self,
        corpus: str = "en-2019",
        requests_per_minute: int = 30,
        max_retries: int = 3,
        session=None,
    ):
        import requests

        self.corpus = corpus
        self.min_interval = 60.0 / max(1, requests_per_minute)
        self.max_retries = max_retries
        self.session = session or requests.Session()
        self._last_request = 0.0

    def get(self, content: str, case_insensitive: bool) -> list[dict]:
        import requests

        params = {
            "content": content,
            "year_start": str(YEAR_START),
            "year_end": str(YEAR_END),
            "corpus": self.corpus,
            "smoothing": "0",
        }
        if case_insensitive:
            params["case_insensitive"] = "true"

        delay = 1.0
        for attempt in range(self.max_retries + 1):
            wait = self.min_interval - (time.monotonic() - self._last_request)
            if wait > 0:
                time.sleep(wait)
            try:
                self._last_request = time.monotonic()
                resp = self.session.get(NGRAM_URL, params=params, timeout=30)
                resp.raise_for_status()
                return resp.json()
            except (requests.RequestException, ValueError) as exc:
                if attempt == self.max_retries:
                    raise NgramTransportError(
                        f"ngram query for {content!r} failed after "
                        f"{self.max_retries + 1} attempts: {exc}"
                    ) from exc
                logger.warning("ngram query %r failed (%s), retrying in %.0fs", content, exc, delay)
                time.sleep(delay)
                delay *= 2
        raise AssertionError("unreachable")


def _fixture_name(content: str, case_insensitive: bool) -> str:
    slug = urllib.parse.quote(content, safe="")
    suffix = "ci" if case_insensitive else "cs"
    return f"{slug}__{suffix}.json"


class FixtureNgramTransport:
    """Offline transport reading pre-recorded API responses from a directory.

    A missing fixture behaves like a term absent from the corpus (the live
    endpoint returns an empty list for those), with a warning.
    """

    def __init__(self, root: str | Path):
        self.root = Path(root)
        if not self.root.is_dir():
            raise NgramTransportError(f"fixture directory not found: {self.root}")

    def get(self, content: str, case_insensitive: bool) -> list[dict]:
        path = self.root / _fixture_name(content, case_insensitive)
        if not path.exists():
            logger.warning("no ngram fixture for %r, treating as absent term", content)
            return []
        with path.open("r", encoding="utf-8") as fh:
            return json.load(fh)

    @staticmethod
    def store(root: str | Path, content: str, case_insensitive: bool, payload: list[dict]) -> Path:
        root = Path(root)
        root.mkdir(parents=True, exist_ok=True)
        path = root / _fixture_name(content, case_insensitive)
        path.write_text(json.dumps(payload, sort_keys=True), encoding="utf-8")
        return path


def _cache_path(cache_dir: Path, term: str, case_mode: str) -> Path:
    slug = urllib.parse.quote(term, safe="")
    return cache_dir / f"{slug}__{case_mode}.json"


def _atomic_write_text(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


def _series_from_response(
    payload: list[dict], content: str, case_insensitive: bool
) -> np.ndarray:
    if not isinstance(payload, list):
        raise NgramTransportError(f"malformed ngram response for {content!r}: not a list")
    if not payload:
        return np.zeros(N_YEARS, dtype=np.float64)

    def values_of(entry: dict) -> np.ndarray:
        series = entry.get("timeseries")
        if not isinstance(series, list) or len(series) != N_YEARS:
            raise NgramTransportError(
                f"malformed ngram response for {content!r}: bad timeseries length"
            )
        return np.asarray(series, dtype=np.float64)

    if case_insensitive:
        # the endpoint reports the casing sum as a parent "... (All)" entry
        for entry in payload:
            if str(entry.get("ngram", "")).endswith("(All)"):
                return values_of(entry)
        total = np.zeros(N_YEARS, dtype=np.float64)
        for entry in payload:
            total += values_of(entry)
        return total

    for entry in payload:
        if entry.get("ngram") == content:
            return values_of(entry)
    return values_of(payload[0])


def fetch_yearly_series(
    term: str,
    case_mode: str,
    transport: NgramTransport,
    cache_dir: str | Path | None = None,
) -> YearlySeries:
    """Yearly relative frequencies of one term, via cache when warm.

    lowercase mode queries the lowercased term; case-insensitive mode lets
    the endpoint sum over casings; as-is passes the term verbatim. A term
    absent from the corpus yields an all-zero series.
    """
    if case_mode not in CASE_MODES:
        raise FrequencyError(f"unknown case mode {case_mode!r}")
    if cache_dir is None and os.environ.get(CACHE_ENV_VAR):
        cache_dir = os.environ[CACHE_ENV_VAR]

    cache_file = None
    if cache_dir is not None:
        cache_file = _cache_path(Path(cache_dir), term, case_mode)
        if cache_file.exists():
            doc = json.loads(cache_file.read_text(encoding="utf-8"))
            return YearlySeries(
                term=term,
                case_mode=case_mode,
                values=np.asarray(doc["values"], dtype=np.float64),
            )

    content = term.lower() if case_mode == "lowercase" else term
    case_insensitive = case_mode == "case-insensitive"
    payload = transport.get(content, case_insensitive)
    values = _series_from_response(payload, content, case_insensitive)
    series = YearlySeries(term=term, case_mode=case_mode, values=values)

    if cache_file is not None:
        cache_file.parent.mkdir(parents=True, exist_ok=True)
        doc = {
            "term": term,
            "case_mode": case_mode,
            "year_start": YEAR_START,
            "year_end": YEAR_END,
            "values": [float(v) for v in values],
        }
        _atomic_write_text(cache_file, json.dumps(doc, sort_keys=True))
    return series


def total_frequency(y: YearlySeries, s: CorpusSizes) -> float:
    """Inner product of yearly corpus sizes with yearly relative frequencies."""
    if y.years != s.years:
        raise FrequencyError(
            f"year axis mismatch: series covers {y.years[0]}..{y.years[-1]}, "
            f"sizes cover {s.years[0]}..{s.years[-1]}"
        )
    return float(np.dot(s.values, y.values))


def load_corpus_sizes(path: str | Path) -> CorpusSizes:
    """Read the checked-in "year,tokens" CSV and slice it to 1700..2000."""
    by_year: dict[int, float] = {}
    with open(path, "r", encoding="utf-8", newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or row[0].lstrip().startswith("#"):
                continue
            if lineno == 1 and not row[0].strip().lstrip("-").isdigit():
                continue  # header
            if len(row) < 2:
                raise FrequencyError(f"{path}:{lineno}: expected year,tokens")
            try:
                year, tokens = int(row[0]), float(row[1])
            except ValueError:
                raise FrequencyError(f"{path}:{lineno}: bad year/tokens {row!r}") from None
            if year in by_year:
                raise FrequencyError(f"{path}:{lineno}: duplicate year {year}")
            by_year[year] = tokens

    missing = [y for y in range(YEAR_START, YEAR_END + 1) if y not in by_year]
    if missing:
        raise FrequencyError(
            f"{path}: missing corpus sizes for {len(missing)} years "
            f"({missing[0]}..{missing[-1]})"
        )
    values = np.array([by_year[y] for y in range(YEAR_START, YEAR_END + 1)], dtype=np.float64)
    return CorpusSizes(values=values)


def build_frequency_table(
    professions: ProfessionList,
    case_mode: str,
    transport: NgramTransport,
    sizes: CorpusSizes,
    cache_dir: str | Path | None = None,
) -> FrequencyTable:
    f = np.empty(professions.p, dtype=np.float64)
    for t, prof in enumerate(professions.items):
        series = fetch_yearly_series(prof.name, case_mode, transport, cache_dir)
        f[t] = total_frequency(series, sizes)
    return FrequencyTable(professions=professions, f=f, case_mode=case_mode)


def rank_professions(
    table: FrequencyTable, top_n: int
) -> list[tuple[Profession, float]]:
    """Top-n professions by estimated frequency, ties kept in list order."""
    if not 0 <= top_n <= table.professions.p:
        raise FrequencyError(
            f"top_n={top_n} outside [0, {table.professions.p}]"
        )
    order = np.argsort(-table.f, kind="stable")
    return [(table.professions.items[i], float(table.f[i])) for i in order[:top_n]]


def write_frequency_table(table: FrequencyTable, path: str | Path) -> None:
    path = Path(path)
    rows = [f"# case_mode={table.case_mode}"]
    rows.append("profession,source,frequency")
    for prof, value in zip(table.professions.items, table.f):
        name = prof.name.replace('"', '""')
        quoted = f'"{name}"' if "," in prof.name else name
        rows.append(f"{quoted},{prof.source},{float(value)!r}")
    _atomic_write_text(path, "\n".join(rows) + "\n")


def read_frequency_table(path: str | Path) -> FrequencyTable:
    path = Path(path)
    with path.open("r", encoding="utf-8", newline="") as fh:
        first = fh.readline().strip()
        if not first.startswith("# case_mode="):
            raise FrequencyError(f"{path}: missing case_mode comment line")
        case_mode = first.split("=", 1)[1]
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["profession", "source", "frequency"]:
            raise FrequencyError(f"{path}: bad header {header!r}")
        items, values = [], []
        for row in reader:
            if not row:
                continue
            items.append(Profession(name=row[0], source=row[1]))
            values.append(float(row[2]))
    return FrequencyTable(
        professions=ProfessionList(items=tuple(items)),
        f=np.asarray(values, dtype=np.float64),
        case_mode=case_mode,
    )

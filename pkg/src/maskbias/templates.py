"""Probe template construction.

Every probe sentence has the fixed shape ``<mask> <verb> <det> <profession>.``
with the verb drawn from "is"/"works as" and the determiner picked by the
initial sound of the profession. The prior-estimation variant puts a second
mask token in the profession slot.
"""

from __future__ import annotations

import csv
import logging
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from importlib import resources

logger = logging.getLogger(__name__)

VERBS: tuple[str, ...] = ("is", "works as")

SOURCE_STEREOTYPE = "stereotype-list"
SOURCE_WIKI = "wiki-list"
SOURCE_BOTH = "both"

# Mask spellings that must never appear inside a profession name.
_MASK_SPELLINGS = ("[MASK]", "<mask>")

_VOWEL_LETTERS = "aeiou"


class TemplateError(ValueError):
    pass


class _PriorMask:
    """Sentinel for the profession slot of the prior-estimation template."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "PRIOR_MASK"


PRIOR_MASK = _PriorMask()


@dataclass(frozen=True)
class Profession:
    name: str
    source: str = SOURCE_STEREOTYPE

    def __post_init__(self) -> None:
        if not self.name:
            raise TemplateError("profession name is empty")
        for mask in _MASK_SPELLINGS:
            if mask in self.name:
                raise TemplateError(
                    f"profession name {self.name!r} contains mask token {mask!r}"
                )


@dataclass(frozen=True)
class ProfessionList:
    """Stably ordered, case-sensitively deduplicated profession set.

    The position of a profession here is the column index used by every
    matrix downstream, so ordering must never change between runs.
    """

    items: tuple[Profession, ...]

    def __post_init__(self) -> None:
        names = [p.name for p in self.items]
        if len(names) != len(set(names)):
            raise TemplateError("duplicate profession names after dedup")

    @property
    def p(self) -> int:
        return len(self.items)

    def names(self) -> tuple[str, ...]:
        return tuple(item.name for item in self.items)

    def index(self, name: str) -> int:
        for i, item in enumerate(self.items):
            if item.name == name:
                return i
        raise KeyError(name)


@dataclass(frozen=True)
class TemplateSpec:
    verb: str
    determiner: str
    profession: Profession | _PriorMask
    rendered: str

    @property
    def is_prior(self) -> bool:
        return self.profession is PRIOR_MASK

    @property
    def profession_label(self) -> str:
        """Manifest/score-table spelling: the mask token for the prior template."""
        if self.is_prior:
            # rendered = "<mask> <verb> a <mask>." so the label is the mask itself
            return self.rendered.split()[0]
        return self.profession.name


def _read_list_file(path: Path) -> list[str]:
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise TemplateError(f"profession list not found: {path}") from None
    names = []
    seen = set()
    for raw in text.splitlines():
        name = raw.strip()
        if not name or name.startswith("#"):
            continue
        if name in seen:
            logger.warning("duplicate %r within %s, keeping first occurrence", name, path)
            continue
        seen.add(name)
        names.append(name)
    return names


def load_professions(
    list_paths: Sequence[str | Path],
    source_labels: Sequence[str] | None = None,
) -> ProfessionList:
    """Merge newline-delimited profession files into one ordered list.

    Files are concatenated in the given order and deduplicated case
    sensitively, first occurrence wins. A name present in files with
    different source labels is marked "both". With the two published
    lists (60 stereotyped + 893 wiki professions) the merged size is 923.
    """
    if not list_paths:
        raise TemplateError("no profession list paths given")
    if source_labels is None:
        if len(list_paths) > 2:
            raise TemplateError("source_labels required for more than two list files")
        source_labels = (SOURCE_STEREOTYPE, SOURCE_WIKI)[: len(list_paths)]
    if len(source_labels) != len(list_paths):
        raise TemplateError("source_labels must match list_paths in length")

    order: list[str] = []
    sources: dict[str, set[str]] = {}
    for path, label in zip(list_paths, source_labels):
        for name in _read_list_file(Path(path)):
            if name not in sources:
                order.append(name)
                sources[name] = set()
            sources[name].add(label)

    if not order:
        raise TemplateError("merged profession list is empty")

    items = []
    for name in order:
        labels = sources[name]
        source = SOURCE_BOTH if len(labels) > 1 else next(iter(labels))
        items.append(Profession(name=name, source=source))
    return ProfessionList(items=tuple(items))


def default_profession_paths() -> tuple[Path, Path]:
    """Paths of the bundled stereotype and wiki list files."""
    base = resources.files("maskbias").joinpath("data/professions")
    return Path(str(base / "stereotype_60.txt")), Path(str(base / "wiki_893.txt"))


def load_determiner_overrides(path: str | Path) -> dict[str, str]:
    """Read the exception lexicon: one ``name<TAB>a|an`` entry per line.

    A key ending in "-" matches any profession starting with that prefix.
    """
    overrides: dict[str, str] = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2 or parts[1] not in ("a", "an"):
            raise TemplateError(f"{path}:{lineno}: expected 'name<TAB>a|an', got {raw!r}")
        overrides[parts[0].lower()] = parts[1]
    return overrides


def default_determiner_overrides() -> dict[str, str]:
    path = resources.files("maskbias").joinpath("data/determiner_overrides.tsv")
    return load_determiner_overrides(str(path))


def choose_determiner(
    profession: Profession | str, overrides: Mapping[str, str] | None = None
) -> str:
    """Pick "a" or "an" by initial sound.

    The base rule is the vowel-letter heuristic; the override lexicon
    corrects words whose spelling and initial phoneme disagree ("heir",
    "user", "one-man band", ...). Exact entries win over prefix entries.
    """
    name = profession.name if isinstance(profession, Profession) else profession
    if not name:
        raise TemplateError("profession name is empty")
    if overrides is None:
        overrides = default_determiner_overrides()
    key = name.lower()
    if key in overrides:
        return overrides[key]
    for entry, det in overrides.items():
        if entry.endswith("-") and key.startswith(entry[:-1]):
            return det
    return "an" if key[0] in _VOWEL_LETTERS else "a"


def render_template(
    verb: str,
    profession: Profession | _PriorMask,
    mask_token: str = "[MASK]",
    overrides: Mapping[str, str] | None = None,
) -> TemplateSpec:
    """Render one probe sentence for the given model mask token.

    The prior variant substitutes the mask token for the profession and
    always keeps the determiner "a".
    """
    if verb not in VERBS:
        raise TemplateError(f"unknown verb {verb!r}, expected one of {VERBS}")
    if profession is PRIOR_MASK:
        det = "a"
        slot = mask_token
    else:
        det = choose_determiner(profession, overrides)
        slot = profession.name
    rendered = f"{mask_token} {verb} {det} {slot}."
    return TemplateSpec(verb=verb, determiner=det, profession=profession, rendered=rendered)


def enumerate_probe_set(
    professions: ProfessionList,
    verbs: Iterable[str] = VERBS,
    mask_token: str = "[MASK]",
    overrides: Mapping[str, str] | None = None,
) -> list[TemplateSpec]:
    """All (verb, profession) probes plus one prior template per verb.

    Output order is: for each verb (input order, deduplicated), professions
    in list order, then that verb's prior template. Total size is
    ``len(verbs) * (p + 1)``.
    """
    verb_list = list(dict.fromkeys(verbs))
    if not verb_list:
        raise TemplateError("no verbs given")
    if professions.p == 0:
        raise TemplateError("profession list is empty")
    if overrides is None:
        overrides = default_determiner_overrides()

    specs = []
    for verb in verb_list:
        for prof in professions.items:
            specs.append(render_template(verb, prof, mask_token, overrides))
        specs.append(render_template(verb, PRIOR_MASK, mask_token, overrides))
    return specs


MANIFEST_FIELDS = ("verb", "profession", "rendered")


def write_manifest(specs: Sequence[TemplateSpec], path: str | Path) -> None:
    """Write the probe manifest CSV consumed by the scoring adapter."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    with tmp.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(MANIFEST_FIELDS)
        for spec in specs:
            writer.writerow([spec.verb, spec.profession_label, spec.rendered])
    tmp.replace(path)


def count_masks(rendered: str, mask_token: str) -> int:
    return len(re.findall(re.escape(mask_token), rendered))

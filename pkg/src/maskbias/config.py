"""Model profiles and run configuration.

A model profile pins everything that differs between the two probed MLMs:
mask token spelling, pronoun casing, the checkpoint count of the released
score tables, and the plateau start index. A run config is a single TOML
document that drives the CLI end to end.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Mapping

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ModelProfile:
    name: str
    mask_token: str
    pronouns: tuple[str, str]  # (he-form, she-form), casing per model
    expected_b: int | None = None
    k: int | None = None
    alt_k: int | None = None
    seeds: tuple[int, ...] = ()

    @property
    def he(self) -> str:
        return self.pronouns[0]

    @property
    def she(self) -> str:
        return self.pronouns[1]

    @property
    def case_mode(self) -> str:
        """Ngram case mode matching the model's casing behaviour."""
        return "lowercase" if self.pronouns[0].islower() else "case-insensitive"


def _profile_from_table(name: str, table: Mapping[str, Any]) -> ModelProfile:
    try:
        pronouns = tuple(table["pronouns"])
        if len(pronouns) != 2:
            raise ConfigError(f"model {name!r}: pronouns must be a pair")
        return ModelProfile(
            name=name,
            mask_token=table["mask_token"],
            pronouns=pronouns,  # type: ignore[arg-type]
            expected_b=table.get("expected_b"),
            k=table.get("k"),
            alt_k=table.get("alt_k"),
            seeds=tuple(table.get("seeds", ())),
        )
    except KeyError as exc:
        raise ConfigError(f"model {name!r}: missing profile key {exc}") from None


def load_model_profiles(path: str | Path) -> dict[str, ModelProfile]:
    """Read a ``[models.<name>]`` profile file."""
    with open(path, "rb") as fh:
        doc = tomllib.load(fh)
    models = doc.get("models")
    if not models:
        raise ConfigError(f"{path}: no [models.*] sections")
    return {name: _profile_from_table(name, table) for name, table in models.items()}


def default_model_profiles() -> dict[str, ModelProfile]:
    path = resources.files("maskbias").joinpath("data/model_profiles.toml")
    return load_model_profiles(str(path))


@dataclass
class ModelRunConfig:
    profile: ModelProfile
    scores_path: Path | None = None
    seeds: tuple[int, ...] = ()
    k: int | None = None  # plateau override; falls back to profile.k


@dataclass
class FrequencyConfig:
    corpus_sizes_path: Path | None = None
    cache_dir: Path | None = None
    fixture_dir: Path | None = None
    corpus: str = "en-2019"
    requests_per_minute: int = 30
    case_modes: tuple[str, ...] = ("lowercase", "case-insensitive")


@dataclass
class AnalysisConfig:
    sources: tuple[str, ...] = ("unnormalized", "normalized")
    histogram_bins: int = 30
    frequency_tables: dict[str, Path] = field(default_factory=dict)


@dataclass
class ReportConfig:
    formats: tuple[str, ...] = ("svg", "png")
    heatmap_floor: float = 0.6
    trajectory_professions: tuple[str, ...] = ()  # empty: first profession


@dataclass
class RunConfig:
    out_dir: Path
    profession_paths: tuple[Path, ...]
    profession_labels: tuple[str, ...] | None
    determiner_overrides_path: Path | None
    verbs: tuple[str, ...]
    models: dict[str, ModelRunConfig]
    frequency: FrequencyConfig
    analysis: AnalysisConfig
    report: ReportConfig


def _resolve(base: Path, value: str) -> Path:
    path = Path(os.path.expanduser(value))
    return path if path.is_absolute() else (base / path)


def load_run_config(path: str | Path) -> RunConfig:
    """Parse a run config TOML file; relative paths resolve against its directory."""
    path = Path(path)
    try:
        with path.open("rb") as fh:
            doc = tomllib.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from None
    base = path.parent

    from .templates import default_profession_paths

    prof = doc.get("professions", {})
    if "lists" in prof:
        prof_paths = tuple(_resolve(base, p) for p in prof["lists"])
    else:
        prof_paths = default_profession_paths()
    labels = tuple(prof["labels"]) if "labels" in prof else None
    overrides = (
        _resolve(base, prof["determiner_overrides"])
        if "determiner_overrides" in prof
        else None
    )

    verbs = tuple(doc.get("templates", {}).get("verbs", ("is", "works as")))

    profiles = default_model_profiles()
    extra_profiles = doc.get("model_profiles")
    if extra_profiles:
        profiles.update(load_model_profiles(_resolve(base, extra_profiles)))

    models: dict[str, ModelRunConfig] = {}
    for name, table in doc.get("models", {}).items():
        profile = profiles.get(name)
        if profile is None:
            profile = _profile_from_table(name, table)
        else:
            # per-run overrides of profile fields
            merged = {
                "mask_token": table.get("mask_token", profile.mask_token),
                "pronouns": table.get("pronouns", profile.pronouns),
                "expected_b": table.get("expected_b", profile.expected_b),
                "k": profile.k,
                "alt_k": profile.alt_k,
                "seeds": table.get("seeds", profile.seeds),
            }
            profile = _profile_from_table(name, merged)
        models[name] = ModelRunConfig(
            profile=profile,
            scores_path=_resolve(base, table["scores"]) if "scores" in table else None,
            seeds=tuple(table.get("seeds", [s for s in profile.seeds if s >= 0])),
            k=table.get("k", profile.k),
        )

    freq_tbl = doc.get("frequency", {})
    frequency = FrequencyConfig(
        corpus_sizes_path=(
            _resolve(base, freq_tbl["corpus_sizes"]) if "corpus_sizes" in freq_tbl else None
        ),
        cache_dir=_resolve(base, freq_tbl["cache_dir"]) if "cache_dir" in freq_tbl else None,
        fixture_dir=(
            _resolve(base, freq_tbl["fixture_dir"]) if "fixture_dir" in freq_tbl else None
        ),
        corpus=freq_tbl.get("corpus", "en-2019"),
        requests_per_minute=freq_tbl.get("requests_per_minute", 30),
        case_modes=tuple(freq_tbl.get("case_modes", ("lowercase", "case-insensitive"))),
    )

    ana_tbl = doc.get("analysis", {})
    analysis = AnalysisConfig(
        sources=tuple(ana_tbl.get("sources", ("unnormalized", "normalized"))),
        histogram_bins=ana_tbl.get("histogram_bins", 30),
        frequency_tables={
            mode: _resolve(base, fp)
            for mode, fp in ana_tbl.get("frequency_tables", {}).items()
        },
    )

    rep_tbl = doc.get("report", {})
    report = ReportConfig(
        formats=tuple(rep_tbl.get("formats", ("svg", "png"))),
        heatmap_floor=rep_tbl.get("heatmap_floor", 0.6),
        trajectory_professions=tuple(rep_tbl.get("trajectory_professions", ())),
    )

    return RunConfig(
        out_dir=_resolve(base, doc.get("out_dir", "out")),
        profession_paths=prof_paths,
        profession_labels=labels,
        determiner_overrides_path=overrides,
        verbs=verbs,
        models=models,
        frequency=frequency,
        analysis=analysis,
        report=report,
    )

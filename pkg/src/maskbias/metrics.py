"""Numeric core: bias ratios, certainty, plateau statistics, correlation.

All statistics follow two fixed policies that are surfaced in report
metadata rather than hidden here:

* standard deviation is the population SD (divide by n), because the
  sampled checkpoints are treated as the full population of steps;
* Pearson correlation on a zero-variance input is an error, never a
  silent 0 or NaN.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

SD_POLICY = "population"

Source = Literal["normalized", "unnormalized"]
SOURCES: tuple[str, ...] = ("normalized", "unnormalized")


class MetricError(ValueError):
    """A metric is undefined for its input (zero divisor, zero variance, ...)."""


def _ctx(context: str) -> str:
    return f" ({context})" if context else ""


def bias_ratio(p_he: float, p_she: float, context: str = "") -> float:
    """Ratio of the two pronoun probabilities; 1.0 means the checkpoint is fair.

    ``context`` is carried into error messages, typically "step=..., profession=...".
    """
    if not 0.0 <= p_he <= 1.0:
        raise MetricError(f"p_he={p_he!r} outside [0, 1]{_ctx(context)}")
    if not 0.0 <= p_she <= 1.0:
        raise MetricError(f"p_she={p_she!r} outside [0, 1]{_ctx(context)}")
    if p_she == 0.0:
        raise MetricError(f"p_she is zero, bias ratio undefined{_ctx(context)}")
    return p_he / p_she


def normalized_ratio(
    r: float, prior_he: float, prior_she: float, context: str = ""
) -> float:
    """Rescale a bias ratio by the pronoun priors estimated from the all-mask template."""
    if prior_he <= 0.0:
        raise MetricError(f"prior for 'he' is not positive{_ctx(context)}")
    if prior_she <= 0.0:
        raise MetricError(f"prior for 'she' is not positive{_ctx(context)}")
    # grouped so equal priors cancel exactly
    return r * (prior_she / prior_he)


def certainty(p_he: float, p_she: float, context: str = "") -> float:
    """Total probability mass on the pronoun pair; higher reads as more natural."""
    if not 0.0 <= p_he <= 1.0 or not 0.0 <= p_she <= 1.0:
        raise MetricError(f"probabilities outside [0, 1]{_ctx(context)}")
    if p_he == 0.0 and p_she == 0.0:
        raise MetricError(f"both pronoun probabilities are zero{_ctx(context)}")
    return p_he + p_she


def coefficient_of_variation(values: Sequence[float] | np.ndarray, context: str = "") -> float:
    """Population standard deviation divided by the arithmetic mean."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1:
        raise MetricError(f"expected a 1-d sequence, got shape {arr.shape}{_ctx(context)}")
    if arr.size < 2:
        raise MetricError(f"need at least 2 values, got {arr.size}{_ctx(context)}")
    mean = float(arr.mean())
    if mean == 0.0:
        raise MetricError(f"mean is zero, CV undefined{_ctx(context)}")
    if np.all(arr == arr[0]):
        return 0.0  # constant input: exact zero, no cancellation noise
    sd = float(arr.std(ddof=0))
    return sd / mean


def pearson(
    x: Sequence[float] | np.ndarray, y: Sequence[float] | np.ndarray, context: str = ""
) -> float:
    """Product-moment correlation coefficient, clipped to [-1, 1] for fp safety."""
    xa = np.asarray(x, dtype=np.float64)
    ya = np.asarray(y, dtype=np.float64)
    if xa.ndim != 1 or ya.ndim != 1:
        raise MetricError(f"expected 1-d sequences{_ctx(context)}")
    if xa.size != ya.size:
        raise MetricError(f"length mismatch: {xa.size} vs {ya.size}{_ctx(context)}")
    if xa.size < 2:
        raise MetricError(f"need at least 2 points, got {xa.size}{_ctx(context)}")
    dx = xa - xa.mean()
    dy = ya - ya.mean()
    sx = math.sqrt(float(dx @ dx))
    sy = math.sqrt(float(dy @ dy))
    if sx == 0.0:
        raise MetricError(f"first argument has zero variance{_ctx(context)}")
    if sy == 0.0:
        raise MetricError(f"second argument has zero variance{_ctx(context)}")
    r = float(dx @ dy) / (sx * sy)
    return max(-1.0, min(1.0, r))


@dataclass(frozen=True)
class PlateauConfig:
    """Start row of the loss plateau within a run of b sampled checkpoints.

    Defaults per model live in the model profiles (36 of 62 for the RoBERTa
    run, 18 of 29 for BERT, with the shorter alternates 49 and 24).
    """

    k: int
    b: int

    def __post_init__(self) -> None:
        if not 0 <= self.k < self.b:
            raise MetricError(f"plateau start k={self.k} outside [0, {self.b})")


@dataclass(frozen=True)
class FluctuationSummary:
    """Per-profession plateau statistics for one (model, seed, verb) run.

    ``v`` is the coefficient of variation of each profession's ratio column
    over the plateau rows; the three mean vectors average certainty,
    normalized and unnormalized ratios over the same rows.
    """

    v: np.ndarray
    mean_certainty: np.ndarray
    mean_normalized: np.ndarray
    mean_unnormalized: np.ndarray
    source: str
    professions: tuple[str, ...]
    k: int

    def __post_init__(self) -> None:
        p = len(self.professions)
        for name in ("v", "mean_certainty", "mean_normalized", "mean_unnormalized"):
            vec = getattr(self, name)
            if vec.shape != (p,):
                raise MetricError(f"{name} has shape {vec.shape}, expected ({p},)")
        if self.source not in SOURCES:
            raise MetricError(f"unknown source {self.source!r}")


def fluctuation_summary(mset, cfg: PlateauConfig, source: Source) -> FluctuationSummary:
    """CV and plateau means over rows ``k..b`` of an assembled matrix set.

    ``source`` selects which ratio matrix the CV is computed from; the mean
    vectors are always produced for certainty and for both ratio kinds.
    """
    if cfg.b != len(mset.steps):
        raise MetricError(
            f"plateau config b={cfg.b} does not match matrix rows {len(mset.steps)}"
        )
    if source not in SOURCES:
        raise MetricError(f"unknown source {source!r}")
    ratios = mset.N if source == "normalized" else mset.R
    names = tuple(p.name for p in mset.professions.items)

    v = np.empty(len(names), dtype=np.float64)
    for t, name in enumerate(names):
        v[t] = coefficient_of_variation(
            ratios[cfg.k :, t], context=f"profession={name!r}"
        )

    return FluctuationSummary(
        v=v,
        mean_certainty=mset.C[cfg.k :].mean(axis=0),
        mean_normalized=mset.N[cfg.k :].mean(axis=0),
        mean_unnormalized=mset.R[cfg.k :].mean(axis=0),
        source=source,
        professions=names,
        k=cfg.k,
    )

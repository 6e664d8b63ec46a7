"""The five research-question analyses over assembled matrices and summaries.

RQ1  extrema and distribution of the per-profession fluctuation vector v
RQ2  correlation of v with mean certainty
RQ3  correlation of v with estimated corpus frequency
RQ4  checkpoint-pair correlations of ratio rows within one run
RQ5  seed-pair correlations of plateau-averaged ratios across runs
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .datastore import ScoreMatrixSet
from .frequency import FrequencyTable
from .metrics import FluctuationSummary, MetricError, pearson


class AnalysisError(ValueError):
    pass


@dataclass(frozen=True)
class CorrelationMatrix:
    """Symmetric Pearson grid with exact unit diagonal.

    ``kind`` is "checkpoint-pair" (labels are steps) or "seed-pair" (labels
    are seed indices).
    """

    labels: tuple[int, ...]
    values: np.ndarray
    kind: str

    def __post_init__(self) -> None:
        n = len(self.labels)
        if self.values.shape != (n, n):
            raise AnalysisError(f"matrix shape {self.values.shape} does not match {n} labels")
        if not np.array_equal(self.values, self.values.T):
            raise AnalysisError("correlation matrix is not exactly symmetric")
        if not np.all(np.diagonal(self.values) == 1.0):
            raise AnalysisError("correlation matrix diagonal is not exactly 1")
        if np.any(self.values < -1.0) or np.any(self.values > 1.0):
            raise AnalysisError("correlation entries outside [-1, 1]")
        if self.kind not in ("checkpoint-pair", "seed-pair"):
            raise AnalysisError(f"unknown correlation kind {self.kind!r}")
        self.values.setflags(write=False)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "labels": list(self.labels),
            "values": [[float(v) for v in row] for row in self.values],
        }


def _pairwise(rows: np.ndarray, labels: tuple[int, ...], kind: str, what: str) -> CorrelationMatrix:
    n = rows.shape[0]
    for i in range(n):
        if np.all(rows[i] == rows[i][0]):
            raise MetricError(f"zero variance in {what} {labels[i]}")
    values = np.eye(n, dtype=np.float64)
    for i in range(n):
        for j in range(i + 1, n):
            rho = pearson(rows[i], rows[j], context=f"{what}s {labels[i]} and {labels[j]}")
            values[i, j] = rho
            values[j, i] = rho
    return CorrelationMatrix(labels=labels, values=values, kind=kind)


def _ratio_rows(mset: ScoreMatrixSet, source: str) -> np.ndarray:
    if source == "normalized":
        return mset.N
    if source == "unnormalized":
        return mset.R
    raise AnalysisError(f"unknown source {source!r}")


@dataclass(frozen=True)
class FluctuationStats:
    """RQ1: extrema of v plus a fixed-bin histogram over [0, max(v)]."""

    v_min: float
    v_max: float
    bin_counts: tuple[int, ...]
    bin_edges: tuple[float, ...]

    def to_dict(self) -> dict:
        return {
            "min": self.v_min,
            "max": self.v_max,
            "histogram": {
                "counts": list(self.bin_counts),
                "edges": list(self.bin_edges),
            },
        }


def rq1_stats(summary: FluctuationSummary, bins: int = 30) -> FluctuationStats:
    if bins < 1:
        raise AnalysisError(f"need at least one histogram bin, got {bins}")
    v = summary.v
    v_max = float(v.max())
    # degenerate all-zero v still needs a well-formed support
    hist_range = (0.0, v_max if v_max > 0.0 else 1.0)
    counts, edges = np.histogram(v, bins=bins, range=hist_range)
    return FluctuationStats(
        v_min=float(v.min()),
        v_max=v_max,
        bin_counts=tuple(int(c) for c in counts),
        bin_edges=tuple(float(e) for e in edges),
    )


def rq2_certainty_correlation(summary: FluctuationSummary) -> float:
    """Pearson correlation between fluctuation and mean certainty."""
    return pearson(summary.v, summary.mean_certainty, context="v vs mean certainty")


def rq3_frequency_correlation(summary: FluctuationSummary, freq: FrequencyTable) -> float:
    """Pearson correlation between fluctuation and estimated corpus frequency."""
    if summary.professions != freq.professions.names():
        raise AnalysisError(
            "profession axes differ between fluctuation summary and frequency table"
        )
    return pearson(summary.v, freq.f, context="v vs corpus frequency")


def rq4_checkpoint_correlations(mset: ScoreMatrixSet, source: str) -> CorrelationMatrix:
    """Pairwise correlation of ratio rows across all checkpoints of one run."""
    rows = _ratio_rows(mset, source)
    if rows.shape[0] < 2:
        raise AnalysisError(f"need at least 2 checkpoints, got {rows.shape[0]}")
    return _pairwise(rows, mset.steps, "checkpoint-pair", "ratio row at step")


def rq5_seed_correlations(
    summaries: Mapping[int, FluctuationSummary], source: str
) -> CorrelationMatrix:
    """Pairwise correlation of plateau-averaged ratios across seed runs."""
    if len(summaries) < 2:
        raise AnalysisError(f"need at least 2 seeds, got {len(summaries)}")
    seeds = tuple(sorted(summaries))
    axes = {summaries[s].professions for s in seeds}
    if len(axes) != 1:
        raise AnalysisError("profession axes differ across seeds")
    if source == "normalized":
        rows = np.stack([summaries[s].mean_normalized for s in seeds])
    elif source == "unnormalized":
        rows = np.stack([summaries[s].mean_unnormalized for s in seeds])
    else:
        raise AnalysisError(f"unknown source {source!r}")
    return _pairwise(rows, seeds, "seed-pair", "averaged ratios of seed")

"""Figure rendering and report-bundle export.

Figures follow the source material's conventions: the prior template is
marked with an x in scatter plots, and heatmap values below the floor are
clamped in colour only. Exported numbers are never truncated.

All output is deterministic for fixed inputs: SVG ids are salted with a
fixed string, creation dates are stripped, JSON/CSV writers emit canonical
bytes, and every file is written atomically (temp then rename).
"""

from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .analysis import CorrelationMatrix
from .datastore import ScoreMatrixSet

FIGURE_KINDS = ("trajectory", "scatter-with-marginals", "heatmap", "frequency-rank")

_SVG_SALT = "maskbias"

PRIOR_LABEL = "prior"


class ReportError(ValueError):
    pass


@dataclass(frozen=True)
class FigureSpec:
    kind: str
    inputs: Mapping[str, object]
    style: Mapping[str, object] = field(default_factory=dict)
    output: Path | None = None

    def __post_init__(self) -> None:
        if self.kind not in FIGURE_KINDS:
            raise ReportError(f"unknown figure kind {self.kind!r}")


def _atomic_bytes(path: Path, data: bytes) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_bytes(data)
    os.replace(tmp, path)


def _save(fig, path: Path, formats: Sequence[str]) -> list[Path]:
    """Render one figure to every requested format, deterministically."""
    written = []
    with matplotlib.rc_context({"svg.hashsalt": _SVG_SALT}):
        for fmt in formats:
            target = path.with_suffix(f".{fmt}")
            buf = io.BytesIO()
            metadata = {"Date": None} if fmt == "svg" else None
            fig.savefig(buf, format=fmt, metadata=metadata)
            _atomic_bytes(target, buf.getvalue())
            written.append(target)
    plt.close(fig)
    return written


def normalize_series(values: np.ndarray) -> np.ndarray:
    """Divide a series by its own maximum so the peak is exactly 1."""
    values = np.asarray(values, dtype=np.float64)
    peak = values.max()
    if peak <= 0.0:
        raise ReportError("cannot max-normalize an all-zero series")
    return values / peak


def render_trajectory(
    mset: ScoreMatrixSet,
    professions: Sequence[str],
    normalize_by_max: bool,
    out_base: str | Path,
    formats: Sequence[str] = ("svg",),
) -> list[Path]:
    """Pronoun probabilities against pre-training step, one panel per template.

    ``professions`` selects columns by name; the entry "prior" selects the
    prior-estimation template. With ``normalize_by_max`` each he/she series
    is divided by its own maximum over the run.
    """
    if not professions:
        raise ReportError("empty profession selection")

    panels = []
    for name in professions:
        if name == PRIOR_LABEL:
            panels.append((f"{PRIOR_LABEL} ({mset.verb})", mset.prior_he, mset.prior_she))
        else:
            t = mset.professions.index(name)
            panels.append((name, mset.P_he[:, t], mset.P_she[:, t]))

    fig, axes = plt.subplots(
        1, len(panels), figsize=(4.2 * len(panels), 3.4), squeeze=False, sharex=True
    )
    for ax, (title, he, she) in zip(axes[0], panels):
        if normalize_by_max:
            he, she = normalize_series(he), normalize_series(she)
        ax.plot(mset.steps, he, label="he", color="tab:blue")
        ax.plot(mset.steps, she, label="she", color="tab:orange")
        ax.set_title(title)
        ax.set_xlabel("pre-training step")
        ax.set_ylabel("max-normalized probability" if normalize_by_max else "probability")
        ax.legend()
    fig.tight_layout()
    return _save(fig, Path(out_base), formats)


@dataclass(frozen=True)
class ScatterArtifacts:
    paths: tuple[Path, ...]
    x_counts: tuple[int, ...]
    y_counts: tuple[int, ...]


def render_scatter_with_marginals(
    x: np.ndarray,
    y: np.ndarray,
    out_base: str | Path,
    prior_point: tuple[float, float] | None = None,
    xlabel: str = "mean certainty",
    ylabel: str = "fluctuation (CV)",
    bins: int = 30,
    formats: Sequence[str] = ("svg",),
) -> ScatterArtifacts:
    """Scatter of per-profession points with marginal histograms.

    The optional prior point (the prior template's certainty and CV) is
    drawn as an x marker.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape:
        raise ReportError(f"length mismatch: {x.shape} vs {y.shape}")

    fig = plt.figure(figsize=(5.2, 5.2))
    grid = fig.add_gridspec(
        2, 2, width_ratios=(4, 1), height_ratios=(1, 4), hspace=0.08, wspace=0.08
    )
    ax = fig.add_subplot(grid[1, 0])
    ax_top = fig.add_subplot(grid[0, 0], sharex=ax)
    ax_right = fig.add_subplot(grid[1, 1], sharey=ax)

    ax.scatter(x, y, s=8, alpha=0.55, edgecolors="none")
    if prior_point is not None:
        ax.scatter([prior_point[0]], [prior_point[1]], marker="x", s=70, color="red")
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)

    x_counts, _, _ = ax_top.hist(x, bins=bins, color="gray")
    y_counts, _, _ = ax_right.hist(y, bins=bins, orientation="horizontal", color="gray")
    ax_top.tick_params(labelbottom=False)
    ax_right.tick_params(labelleft=False)

    paths = _save(fig, Path(out_base), formats)
    return ScatterArtifacts(
        paths=tuple(paths),
        x_counts=tuple(int(c) for c in x_counts),
        y_counts=tuple(int(c) for c in y_counts),
    )


def render_heatmap(
    cm: CorrelationMatrix,
    out_base: str | Path,
    floor: float = 0.6,
    formats: Sequence[str] = ("svg",),
    title: str = "",
) -> list[Path]:
    """Correlation heatmap; values below the floor are clamped in colour only."""
    fig, ax = plt.subplots(figsize=(5.4, 4.6))
    image = ax.imshow(
        cm.values, vmin=floor, vmax=1.0, cmap="viridis", origin="lower",
        interpolation="nearest",
    )
    n = len(cm.labels)
    ticks = list(range(0, n, max(1, n // 8)))
    ax.set_xticks(ticks, [str(cm.labels[i]) for i in ticks], rotation=90, fontsize=7)
    ax.set_yticks(ticks, [str(cm.labels[i]) for i in ticks], fontsize=7)
    axis_label = "step" if cm.kind == "checkpoint-pair" else "seed"
    ax.set_xlabel(axis_label)
    ax.set_ylabel(axis_label)
    if title:
        ax.set_title(title)
    fig.colorbar(image, ax=ax, label="Pearson r")
    fig.tight_layout()
    return _save(fig, Path(out_base), formats)


def render_frequency_rank(
    f: np.ndarray,
    out_base: str | Path,
    case_mode: str = "",
    formats: Sequence[str] = ("svg",),
) -> list[Path]:
    """All professions sorted by estimated frequency, log scale."""
    values = np.sort(np.asarray(f, dtype=np.float64))[::-1]
    fig, ax = plt.subplots(figsize=(5.2, 3.6))
    ax.plot(np.arange(1, len(values) + 1), values)
    positive = values[values > 0]
    if positive.size:
        ax.set_yscale("log")
    ax.set_xlabel("rank")
    ax.set_ylabel("estimated frequency")
    if case_mode:
        ax.set_title(case_mode)
    fig.tight_layout()
    return _save(fig, Path(out_base), formats)


def _json_bytes(document: dict) -> bytes:
    return (
        json.dumps(document, indent=2, sort_keys=True, ensure_ascii=False, allow_nan=False)
        + "\n"
    ).encode("utf-8")


def _csv_bytes(header: Sequence[str], rows: Sequence[Sequence[object]]) -> bytes:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue().encode("utf-8")


def export_report(
    document: dict,
    tables: Mapping[str, tuple[Sequence[str], Sequence[Sequence[object]]]],
    out_dir: str | Path,
) -> list[Path]:
    """Write report/report.json and report/tables/*.csv, canonical bytes.

    ``tables`` maps a table name to (header, rows). Floats are serialized
    with repr so re-runs on identical inputs are byte-identical.
    """
    if not document:
        raise ReportError("refusing to export an empty report")
    out_dir = Path(out_dir)
    written = []

    report_path = out_dir / "report" / "report.json"
    _atomic_bytes(report_path, _json_bytes(document))
    written.append(report_path)

    for name in sorted(tables):
        header, rows = tables[name]
        path = out_dir / "report" / "tables" / f"{name}.csv"
        _atomic_bytes(path, _csv_bytes(header, rows))
        written.append(path)
    return written

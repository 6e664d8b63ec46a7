"""Command-line pipeline: templates, analyze, freq, report.

Every subcommand is driven by one TOML run config (see README for the
schema) plus a handful of overriding flags. All outputs are written
atomically; identical config and inputs produce identical bytes.
"""

from __future__ import annotations

import logging
import sys
from pathlib import Path

import click
import numpy as np

from . import __version__
from .analysis import (
    rq1_stats,
    rq2_certainty_correlation,
    rq3_frequency_correlation,
    rq4_checkpoint_correlations,
    rq5_seed_correlations,
)
from .config import ConfigError, RunConfig, load_run_config
from .datastore import assemble_matrices, parse_score_table
from .frequency import (
    FixtureNgramTransport,
    HttpNgramTransport,
    NgramTransportError,
    build_frequency_table,
    load_corpus_sizes,
    rank_professions,
    read_frequency_table,
    write_frequency_table,
)
from .metrics import (
    SD_POLICY,
    PlateauConfig,
    coefficient_of_variation,
    fluctuation_summary,
)
from .report import (
    PRIOR_LABEL,
    export_report,
    render_frequency_rank,
    render_heatmap,
    render_scatter_with_marginals,
    render_trajectory,
)
from .templates import (
    enumerate_probe_set,
    default_determiner_overrides,
    load_determiner_overrides,
    load_professions,
    write_manifest,
)

logger = logging.getLogger(__name__)

TOP_N = 20


class _OfflineTransport:
    """Fails on any fetch: offline mode with no fixture directory relies on cache."""

    def get(self, content, case_insensitive):
        raise NgramTransportError(
            f"offline mode: {content!r} is not cached and no fixture directory is set"
        )


def _verb_slug(verb: str) -> str:
    return verb.replace(" ", "_")


def _load_inputs(cfg: RunConfig):
    professions = load_professions(cfg.profession_paths, cfg.profession_labels)
    if cfg.determiner_overrides_path is not None:
        overrides = load_determiner_overrides(cfg.determiner_overrides_path)
    else:
        overrides = default_determiner_overrides()
    return professions, overrides


def run_templates(cfg: RunConfig, out_dir: Path) -> list[Path]:
    professions, overrides = _load_inputs(cfg)
    out_dir.mkdir(parents=True, exist_ok=True)
    profiles = {name: mrc.profile for name, mrc in cfg.models.items()}
    if not profiles:
        from .config import default_model_profiles

        profiles = default_model_profiles()
    written = []
    for name in sorted(profiles):
        specs = enumerate_probe_set(
            professions, cfg.verbs, profiles[name].mask_token, overrides
        )
        path = out_dir / f"templates_{name}.csv"
        write_manifest(specs, path)
        written.append(path)
        click.echo(f"{path}: {len(specs)} templates ({professions.p} professions)")
    return written


def _prior_scatter_point(mset, k: int) -> tuple[float, float]:
    """Certainty and CV of the prior template itself over the plateau rows."""
    prior_ratio = mset.prior_he[k:] / mset.prior_she[k:]
    prior_certainty = mset.prior_he[k:] + mset.prior_she[k:]
    return (
        float(prior_certainty.mean()),
        coefficient_of_variation(prior_ratio, context="prior template"),
    )


def run_analyze(
    cfg: RunConfig,
    out_dir: Path,
    k_override: int | None = None,
    verbs: tuple[str, ...] | None = None,
    sources: tuple[str, ...] | None = None,
) -> list[Path]:
    professions, _ = _load_inputs(cfg)
    verbs = verbs or cfg.verbs
    sources = sources or cfg.analysis.sources
    bins = cfg.analysis.histogram_bins
    formats = cfg.report.formats

    if not cfg.models:
        raise ConfigError("no [models.*] sections in config, nothing to analyze")

    freq_tables = {
        mode: read_frequency_table(path)
        for mode, path in sorted(cfg.analysis.frequency_tables.items())
    }

    profiles = {name: mrc.profile for name, mrc in cfg.models.items()}
    document: dict = {
        "tool": {"name": "maskbias", "version": __version__},
        "policies": {
            "sd": SD_POLICY,
            "pearson_zero_variance": "error",
            "ratio_space": "linear",
            "ngram_corpus": cfg.frequency.corpus,
        },
        "parameters": {
            "verbs": list(verbs),
            "sources": list(sources),
            "histogram_bins": bins,
            "professions": professions.p,
        },
        "runs": [],
        "seed_correlations": [],
    }
    tables: dict = {}
    written: list[Path] = []

    for model_name in sorted(cfg.models):
        mrc = cfg.models[model_name]
        if mrc.scores_path is None:
            raise ConfigError(f"model {model_name!r}: no scores path configured")
        if not mrc.scores_path.exists():
            raise ConfigError(
                f"model {model_name!r}: scores file not found: {mrc.scores_path}"
            )
        records = parse_score_table(mrc.scores_path, profiles)
        k = k_override if k_override is not None else mrc.k
        if k is None:
            raise ConfigError(f"model {model_name!r}: no plateau index k configured")
        freq_table = freq_tables.get(mrc.profile.case_mode)

        summaries: dict[tuple[str, str], dict[int, object]] = {}
        for seed in mrc.seeds:
            if seed < 0:
                continue  # public checkpoints have a single step, no dynamics
            for verb in verbs:
                mset = assemble_matrices(
                    records, model_name, seed, verb, professions, profiles
                )
                expected_b = mrc.profile.expected_b
                if expected_b is not None and mset.b != expected_b:
                    logger.info(
                        "%s seed %d verb %r: b=%d differs from the released data (b=%d)",
                        model_name, seed, verb, mset.b, expected_b,
                    )
                plateau = PlateauConfig(k=k, b=mset.b)
                fig_dir = out_dir / "figures" / model_name / str(seed) / _verb_slug(verb)

                trajectory_names = list(cfg.report.trajectory_professions) or [
                    professions.items[0].name
                ]
                written += render_trajectory(
                    mset,
                    [PRIOR_LABEL] + trajectory_names,
                    normalize_by_max=True,
                    out_base=fig_dir / "trajectory",
                    formats=formats,
                )

                for source in sources:
                    summary = fluctuation_summary(mset, plateau, source)
                    summaries.setdefault((verb, source), {})[seed] = summary

                    stats = rq1_stats(summary, bins=bins)
                    rq2 = rq2_certainty_correlation(summary)
                    rq3 = (
                        rq3_frequency_correlation(summary, freq_table)
                        if freq_table is not None
                        else None
                    )
                    cm4 = rq4_checkpoint_correlations(mset, source)

                    prior_point = (
                        _prior_scatter_point(mset, k) if source == "unnormalized" else None
                    )
                    scatter = render_scatter_with_marginals(
                        summary.mean_certainty,
                        summary.v,
                        out_base=fig_dir / f"scatter_cv_certainty_{source}",
                        prior_point=prior_point,
                        bins=bins,
                        formats=formats,
                    )
                    written += list(scatter.paths)
                    written += render_heatmap(
                        cm4,
                        out_base=fig_dir / f"rq4_heatmap_{source}",
                        floor=cfg.report.heatmap_floor,
                        formats=formats,
                        title=f"{model_name} seed {seed} ({verb}, {source})",
                    )

                    run_key = f"{model_name}_seed{seed}_{_verb_slug(verb)}_{source}"
                    document["runs"].append(
                        {
                            "model": model_name,
                            "seed": seed,
                            "verb": verb,
                            "source": source,
                            "k": k,
                            "b": mset.b,
                            "steps": list(mset.steps),
                            "rq1": stats.to_dict(),
                            "rq2_certainty_correlation": rq2,
                            "rq3_frequency_correlation": rq3,
                            "rq3_case_mode": (
                                freq_table.case_mode if freq_table is not None else None
                            ),
                            "rq4": cm4.to_dict(),
                        }
                    )
                    tables[f"fluctuation_{run_key}"] = (
                        ("profession", "v", "mean_certainty", "mean_normalized", "mean_unnormalized"),
                        [
                            (
                                name,
                                float(summary.v[t]),
                                float(summary.mean_certainty[t]),
                                float(summary.mean_normalized[t]),
                                float(summary.mean_unnormalized[t]),
                            )
                            for t, name in enumerate(summary.professions)
                        ],
                    )
                    tables[f"rq4_{run_key}"] = (
                        ("step",) + tuple(str(s) for s in cm4.labels),
                        [
                            (cm4.labels[i],) + tuple(float(v) for v in cm4.values[i])
                            for i in range(len(cm4.labels))
                        ],
                    )

        for (verb, source), by_seed in sorted(summaries.items()):
            if len(by_seed) < 2:
                continue
            cm5 = rq5_seed_correlations(by_seed, source)
            document["seed_correlations"].append(
                {
                    "model": model_name,
                    "verb": verb,
                    "source": source,
                    "k": k,
                    "rq5": cm5.to_dict(),
                }
            )
            key = f"rq5_{model_name}_{_verb_slug(verb)}_{source}"
            tables[key] = (
                ("seed",) + tuple(str(s) for s in cm5.labels),
                [
                    (cm5.labels[i],) + tuple(float(v) for v in cm5.values[i])
                    for i in range(len(cm5.labels))
                ],
            )
            written += render_heatmap(
                cm5,
                out_base=out_dir / "figures" / model_name / "all" / _verb_slug(verb)
                / f"rq5_heatmap_{source}",
                floor=-1.0,
                formats=formats,
                title=f"{model_name} seed pairs ({verb}, {source})",
            )

    written += export_report(document, tables, out_dir)
    return written


def run_freq(cfg: RunConfig, out_dir: Path, live: bool) -> list[Path]:
    professions, _ = _load_inputs(cfg)
    if cfg.frequency.corpus_sizes_path is None:
        raise ConfigError("no corpus_sizes file configured under [frequency]")
    sizes = load_corpus_sizes(cfg.frequency.corpus_sizes_path)

    if live:
        transport = HttpNgramTransport(
            corpus=cfg.frequency.corpus,
            requests_per_minute=cfg.frequency.requests_per_minute,
        )
    elif cfg.frequency.fixture_dir is not None:
        transport = FixtureNgramTransport(cfg.frequency.fixture_dir)
    else:
        transport = _OfflineTransport()

    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for mode in cfg.frequency.case_modes:
        table = build_frequency_table(
            professions, mode, transport, sizes, cfg.frequency.cache_dir
        )
        table_path = out_dir / f"frequency_{mode}.csv"
        write_frequency_table(table, table_path)
        written.append(table_path)

        ranked = rank_professions(table, min(TOP_N, professions.p))
        top_path = out_dir / f"frequency_top{TOP_N}_{mode}.csv"
        lines = ["rank,profession,frequency"]
        for i, (prof, value) in enumerate(ranked, start=1):
            name = f'"{prof.name}"' if "," in prof.name else prof.name
            lines.append(f"{i},{name},{value!r}")
        tmp = top_path.with_name(top_path.name + ".tmp")
        tmp.write_text("\n".join(lines) + "\n", encoding="utf-8")
        tmp.replace(top_path)
        written.append(top_path)

        written += render_frequency_rank(
            table.f,
            out_base=out_dir / "figures" / f"frequency_rank_{mode}",
            case_mode=mode,
            formats=cfg.report.formats,
        )
        click.echo(f"{mode}: top profession is {ranked[0][0].name!r}" if ranked else mode)
    return written


def run_report(bundle_dir: Path, out_dir: Path, floor: float, formats: tuple[str, ...]) -> list[Path]:
    """Re-render heatmap figures from an exported bundle's report.json."""
    import json

    from .analysis import CorrelationMatrix

    report_path = bundle_dir / "report" / "report.json"
    if not report_path.exists():
        raise ConfigError(f"no report.json under {bundle_dir}")
    document = json.loads(report_path.read_text(encoding="utf-8"))
    written = []
    for run in document.get("runs", []):
        cm = CorrelationMatrix(
            labels=tuple(run["rq4"]["labels"]),
            values=np.asarray(run["rq4"]["values"], dtype=np.float64),
            kind=run["rq4"]["kind"],
        )
        base = (
            out_dir / "figures" / run["model"] / str(run["seed"])
            / _verb_slug(run["verb"]) / f"rq4_heatmap_{run['source']}"
        )
        written += render_heatmap(cm, out_base=base, floor=floor, formats=formats)
    for entry in document.get("seed_correlations", []):
        cm = CorrelationMatrix(
            labels=tuple(entry["rq5"]["labels"]),
            values=np.asarray(entry["rq5"]["values"], dtype=np.float64),
            kind=entry["rq5"]["kind"],
        )
        base = (
            out_dir / "figures" / entry["model"] / "all"
            / _verb_slug(entry["verb"]) / f"rq5_heatmap_{entry['source']}"
        )
        written += render_heatmap(cm, out_base=base, floor=-1.0, formats=formats)
    return written


@click.group()
@click.version_option(version=__version__, prog_name="maskbias")
def main() -> None:
    """Template-based gender-bias measurement over pre-training checkpoints."""
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")


def _config_option(fn):
    return click.option(
        "--config", "config_path", required=True, type=click.Path(exists=True),
        help="Run config TOML file.",
    )(fn)


def _out_option(fn):
    return click.option(
        "--out", "out_dir", default=None, type=click.Path(),
        help="Output directory (defaults to out_dir from the config).",
    )(fn)


def _run(step, *args):
    try:
        step(*args)
    except (ValueError, RuntimeError, OSError) as exc:
        raise click.ClickException(str(exc)) from exc


@main.command("templates")
@_config_option
@_out_option
def cmd_templates(config_path: str, out_dir: str | None) -> None:
    """Write per-model probe template manifests."""
    cfg = load_run_config(config_path)
    _run(run_templates, cfg, Path(out_dir) if out_dir else cfg.out_dir)


@main.command("analyze")
@_config_option
@_out_option
@click.option("--k", "k_override", default=None, type=int, help="Plateau start override.")
@click.option("--verb", "verbs", multiple=True, type=click.Choice(["is", "works as"]))
@click.option(
    "--source", "sources", multiple=True,
    type=click.Choice(["normalized", "unnormalized"]),
)
@click.option("--offline", is_flag=True, default=True, help="Accepted for symmetry; analyze never fetches.")
def cmd_analyze(
    config_path: str,
    out_dir: str | None,
    k_override: int | None,
    verbs: tuple[str, ...],
    sources: tuple[str, ...],
    offline: bool,
) -> None:
    """Run datastore -> metrics -> analysis -> report for configured runs."""
    cfg = load_run_config(config_path)
    _run(
        run_analyze,
        cfg,
        Path(out_dir) if out_dir else cfg.out_dir,
        k_override,
        verbs or None,
        sources or None,
    )


@main.command("freq")
@_config_option
@_out_option
@click.option(
    "--offline/--live", "offline", default=True,
    help="Offline (fixtures/cache, default) or live ngram API.",
)
def cmd_freq(config_path: str, out_dir: str | None, offline: bool) -> None:
    """Estimate corpus frequencies and write tables, rankings, and figures."""
    cfg = load_run_config(config_path)
    _run(run_freq, cfg, Path(out_dir) if out_dir else cfg.out_dir, not offline)


@main.command("report")
@click.option("--bundle", "bundle_dir", required=True, type=click.Path(exists=True))
@_out_option
@click.option("--floor", default=0.6, type=float, help="Heatmap colour floor.")
@click.option("--format", "formats", multiple=True, default=("svg",))
def cmd_report(
    bundle_dir: str, out_dir: str | None, floor: float, formats: tuple[str, ...]
) -> None:
    """Re-render figures from an exported report bundle."""
    target = Path(out_dir) if out_dir else Path(bundle_dir)
    _run(run_report, Path(bundle_dir), target, floor, formats)


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""Generate the bundled end-to-end fixture dataset under tests/fixtures/e2e/.

Synthetic but schema-exact: score tables for two models (three seeds for the
uncased one), ngram response fixtures, a corpus-size file, and the run
config that ties them together. Everything is seeded, so re-running this
script reproduces identical bytes.

Run from the repository root:  python scripts/gen_e2e_fixture.py
"""

import json
import sys
from pathlib import Path

import numpy as np

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from maskbias.config import default_model_profiles, load_run_config  # noqa: E402
from maskbias.datastore import ScoreRecord, serialize_score_table  # noqa: E402
from maskbias.frequency import FixtureNgramTransport, N_YEARS, YEAR_START, YEAR_END  # noqa: E402
from maskbias.templates import (  # noqa: E402
    PRIOR_MASK,
    Profession,
    ProfessionList,
    render_template,
    default_determiner_overrides,
)

OUT = ROOT / "tests" / "fixtures" / "e2e"

PROFESSIONS = ["nurse", "doctor", "engineer", "teacher", "president", "officer", "artist", "umpire"]

MODELS = {
    "bert-base-uncased": {"seeds": [0, 1, 2], "steps": [2000, 4000, 6000, 8000, 10000, 12000]},
    "roberta-base": {"seeds": [0], "steps": [10000, 20000, 30000, 40000, 50000]},
}

VERBS = ("is", "works as")
K = 2

CONFIG = """\
# end-to-end fixture run config (synthetic data, schema-exact)
out_dir = "out"

[professions]
lists = ["professions.txt"]
labels = ["stereotype-list"]

[templates]
verbs = ["is", "works as"]

[models."bert-base-uncased"]
scores = "scores_bert-base-uncased.csv"
seeds = [0, 1, 2]
k = 2

[models."roberta-base"]
scores = "scores_roberta-base.csv"
seeds = [0]
k = 2

[frequency]
corpus_sizes = "corpus_sizes.csv"
fixture_dir = "ngram"
case_modes = ["lowercase", "case-insensitive"]

[analysis]
sources = ["unnormalized", "normalized"]
histogram_bins = 10

[analysis.frequency_tables]
lowercase = "frequency_lowercase.csv"
"case-insensitive" = "frequency_case-insensitive.csv"

[report]
formats = ["svg", "png"]
"""


def gen_scores(rng: np.random.Generator) -> None:
    profiles = default_model_profiles()
    overrides = default_determiner_overrides()
    prof_list = ProfessionList(items=tuple(Profession(p) for p in PROFESSIONS))
    for model, layout in MODELS.items():
        profile = profiles[model]
        he, she = profile.pronouns
        records = []
        for seed in layout["seeds"]:
            for step in layout["steps"]:
                for verb in VERBS:
                    for prof in list(prof_list.items) + [PRIOR_MASK]:
                        spec = render_template(verb, prof, profile.mask_token, overrides)
                        p_he = float(rng.uniform(0.05, 0.45))
                        p_she = float(rng.uniform(0.05, 0.45))
                        for pronoun, score in ((he, p_he), (she, p_she)):
                            records.append(
                                ScoreRecord(
                                    pronoun=pronoun,
                                    score=score,
                                    profession=spec.profession_label,
                                    template=spec.rendered,
                                    full_sentence=spec.rendered.replace(
                                        profile.mask_token, pronoun, 1
                                    ),
                                    model=model,
                                    seed=seed,
                                    checkpoint=step,
                                )
                            )
        serialize_score_table(records, OUT / f"scores_{model}.csv")
        print(f"scores_{model}.csv: {len(records)} records")


def gen_corpus_sizes() -> None:
    lines = ["year,tokens"]
    for i, year in enumerate(range(YEAR_START, YEAR_END + 1)):
        lines.append(f"{year},{1_000_000 + 12_000 * i}")
    (OUT / "corpus_sizes.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")


def gen_ngram_fixtures(rng: np.random.Generator) -> None:
    root = OUT / "ngram"
    for term in PROFESSIONS:
        base = rng.uniform(0.0, 2e-6, N_YEARS)
        base[: rng.integers(20, 120)] = 0.0  # older years often empty
        uplift = 1.0 + float(rng.uniform(0.1, 1.5))
        lower = [{"ngram": term.lower(), "timeseries": [float(v) for v in base]}]
        ci = [
            {
                "ngram": f"{term} (All)",
                "timeseries": [float(v * uplift) for v in base],
            },
            {"ngram": term, "timeseries": [float(v) for v in base]},
        ]
        FixtureNgramTransport.store(root, term.lower(), False, lower)
        FixtureNgramTransport.store(root, term, True, ci)


def gen_frequency_tables() -> None:
    from maskbias.cli import run_freq

    cfg = load_run_config(OUT / "config.toml")
    tmp = OUT / "_freq_tmp"
    run_freq(cfg, tmp, live=False)
    for mode in ("lowercase", "case-insensitive"):
        src = tmp / f"frequency_{mode}.csv"
        (OUT / f"frequency_{mode}.csv").write_bytes(src.read_bytes())
    import shutil

    shutil.rmtree(tmp)


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(20230515)
    (OUT / "professions.txt").write_text("\n".join(PROFESSIONS) + "\n", encoding="utf-8")
    (OUT / "config.toml").write_text(CONFIG, encoding="utf-8")
    gen_scores(rng)
    gen_corpus_sizes()
    gen_ngram_fixtures(rng)
    gen_frequency_tables()
    print(f"fixture dataset written to {OUT}")


if __name__ == "__main__":
    main()

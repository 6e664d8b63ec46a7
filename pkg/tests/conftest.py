import os
from pathlib import Path

import numpy as np
import pytest

from maskbias.datastore import ScoreRecord, assemble_matrices
from maskbias.templates import PRIOR_MASK, Profession, ProfessionList, render_template
from maskbias.templates import default_determiner_overrides

FIXTURES = Path(__file__).parent / "fixtures"

RELEASED_DATA_ENV = "MASKBIAS_RELEASED_DATA"
NGRAM_CACHE_ENV = "MASKBIAS_NGRAM_CACHE"
CORPUS_SIZES_ENV = "MASKBIAS_CORPUS_SIZES"


def released_data_dir() -> Path | None:
    value = os.environ.get(RELEASED_DATA_ENV)
    if value and Path(value).is_dir():
        return Path(value)
    return None


def real_ngram_cache_dir() -> Path | None:
    value = os.environ.get(NGRAM_CACHE_ENV)
    if value and Path(value).is_dir():
        return Path(value)
    return None


@pytest.fixture
def tiny_professions() -> ProfessionList:
    return ProfessionList(
        items=tuple(Profession(n) for n in ("nurse", "doctor", "engineer"))
    )


def synthetic_records(
    professions: ProfessionList,
    steps,
    model: str = "bert-base-uncased",
    seed: int = 0,
    verb: str = "is",
    rng: np.random.Generator | None = None,
    score_of=None,
):
    """Schema-exact records for every cell plus priors, one verb."""
    if rng is None:
        rng = np.random.default_rng(0)
    overrides = default_determiner_overrides()
    mask = "[MASK]" if model == "bert-base-uncased" else "<mask>"
    he, she = ("he", "she") if model == "bert-base-uncased" else ("He", "She")
    records = []
    for step in steps:
        for prof in list(professions.items) + [PRIOR_MASK]:
            spec = render_template(verb, prof, mask, overrides)
            if score_of is not None:
                p_he, p_she = score_of(step, spec)
            else:
                p_he = float(rng.uniform(0.05, 0.45))
                p_she = float(rng.uniform(0.05, 0.45))
            for pronoun, score in ((he, p_he), (she, p_she)):
                records.append(
                    ScoreRecord(
                        pronoun=pronoun,
                        score=score,
                        profession=spec.profession_label,
                        template=spec.rendered,
                        full_sentence=spec.rendered.replace(mask, pronoun, 1),
                        model=model,
                        seed=seed,
                        checkpoint=step,
                    )
                )
    return records


def make_matrix_set(
    professions: ProfessionList,
    steps=(1000, 2000, 3000),
    model: str = "bert-base-uncased",
    seed: int = 0,
    verb: str = "is",
    rng: np.random.Generator | None = None,
    score_of=None,
):
    records = synthetic_records(
        professions, steps, model=model, seed=seed, verb=verb, rng=rng, score_of=score_of
    )
    return assemble_matrices(records, model, seed, verb, professions)

"""Score-table parsing, validation, and matrix assembly.

The canonical on-disk format is a UTF-8 CSV with header and eight columns:

    pronoun,score,profession,template,full_sentence,model,seed,checkpoint

One row holds one pronoun probability for one (template, checkpoint) pair.
The profession column carries either a profession name or the model's mask
token (rows of the prior-estimation template). The checkpoint column is the
pre-training step count, or empty for the single public checkpoint, which is
always seed -1. The released tables serialize the absent checkpoint as NaN;
both spellings parse, the empty field is written.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable, Mapping, Sequence

import numpy as np

from .config import ModelProfile, default_model_profiles
from .metrics import MetricError
from .templates import ProfessionList

COLUMNS = (
    "pronoun",
    "score",
    "profession",
    "template",
    "full_sentence",
    "model",
    "seed",
    "checkpoint",
)

VALID_SEEDS = frozenset({-1, 0, 1, 2, 3, 4})

# Row label used for the public checkpoint, whose step count is absent.
PUBLIC_CHECKPOINT_STEP = -1


class DataFormatError(ValueError):
    """A malformed or invalid score-table row; carries the 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message}")


class AssemblyError(ValueError):
    pass


@dataclass(frozen=True)
class ScoreRecord:
    pronoun: str
    score: float
    profession: str
    template: str
    full_sentence: str
    model: str
    seed: int
    checkpoint: int | None

    def __post_init__(self) -> None:
        if not 0.0 <= self.score <= 1.0:
            raise DataFormatError(f"score out of range: {self.score!r}")
        if self.seed not in VALID_SEEDS:
            raise DataFormatError(f"unknown seed index: {self.seed!r}")
        if self.checkpoint is None and self.seed != -1:
            raise DataFormatError(
                f"absent checkpoint requires seed -1, got seed {self.seed}"
            )

    @property
    def is_he_class(self) -> bool:
        return self.pronoun.lower() == "he"


def _open_maybe(source: str | Path | IO[str]) -> tuple[IO[str], bool]:
    if isinstance(source, (str, Path)):
        return open(source, "r", encoding="utf-8", newline=""), True
    return source, False


def _parse_checkpoint(raw: str) -> int | None:
    text = raw.strip()
    if text == "" or text.lower() == "nan":
        return None
    try:
        # released tables may carry the step as a float like "20000.0"
        value = float(text)
    except ValueError:
        raise ValueError(f"bad checkpoint value {raw!r}") from None
    if not value.is_integer():
        raise ValueError(f"bad checkpoint value {raw!r}")
    return int(value)


def parse_score_table(
    source: str | Path | IO[str],
    profiles: Mapping[str, ModelProfile] | None = None,
) -> list[ScoreRecord]:
    """Parse and validate a score-table CSV, preserving row order.

    Pronoun casing is checked against the model profile when the model is
    known; unknown models accept any of he/she/He/She. Every failure names
    the offending line.
    """
    if profiles is None:
        profiles = default_model_profiles()
    fh, owned = _open_maybe(source)
    try:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DataFormatError("empty input, expected header row") from None
        if tuple(header) != COLUMNS:
            raise DataFormatError(
                f"bad header {header!r}, expected {','.join(COLUMNS)}", line=1
            )

        records = []
        for row in reader:
            line = reader.line_num
            if not row:
                continue
            if len(row) != len(COLUMNS):
                raise DataFormatError(
                    f"expected {len(COLUMNS)} fields, got {len(row)}", line=line
                )
            pronoun, score_raw, profession, template, full_sentence, model, seed_raw, ckpt_raw = row
            try:
                score = float(score_raw)
            except ValueError:
                raise DataFormatError(f"bad score value {score_raw!r}", line=line) from None
            try:
                seed = int(seed_raw)
            except ValueError:
                raise DataFormatError(f"bad seed value {seed_raw!r}", line=line) from None
            try:
                checkpoint = _parse_checkpoint(ckpt_raw)
            except ValueError as exc:
                raise DataFormatError(str(exc), line=line) from None
            if not model:
                raise DataFormatError("empty model name", line=line)

            profile = profiles.get(model)
            if profile is not None:
                if pronoun not in profile.pronouns:
                    raise DataFormatError(
                        f"unknown pronoun {pronoun!r} for model {model!r}, "
                        f"expected one of {profile.pronouns}",
                        line=line,
                    )
            elif pronoun not in ("he", "she", "He", "She"):
                raise DataFormatError(f"unknown pronoun {pronoun!r}", line=line)

            try:
                records.append(
                    ScoreRecord(
                        pronoun=pronoun,
                        score=score,
                        profession=profession,
                        template=template,
                        full_sentence=full_sentence,
                        model=model,
                        seed=seed,
                        checkpoint=checkpoint,
                    )
                )
            except DataFormatError as exc:
                raise DataFormatError(str(exc), line=line) from None
        return records
    finally:
        if owned:
            fh.close()


def serialize_score_table(
    records: Iterable[ScoreRecord], target: str | Path | IO[str]
) -> None:
    """Write records in the canonical CSV format (inverse of parse)."""
    if isinstance(target, (str, Path)):
        with open(target, "w", encoding="utf-8", newline="") as fh:
            serialize_score_table(records, fh)
        return
    writer = csv.writer(target)
    writer.writerow(COLUMNS)
    for rec in records:
        writer.writerow(
            [
                rec.pronoun,
                repr(rec.score),
                rec.profession,
                rec.template,
                rec.full_sentence,
                rec.model,
                rec.seed,
                "" if rec.checkpoint is None else rec.checkpoint,
            ]
        )


def serialize_to_string(records: Iterable[ScoreRecord]) -> str:
    buf = io.StringIO()
    serialize_score_table(records, buf)
    return buf.getvalue()


def professions_from_records(
    records: Sequence[ScoreRecord],
    mask_tokens: Iterable[str] = ("[MASK]", "<mask>"),
    source: str = "wiki-list",
) -> ProfessionList:
    """Profession axis in first-appearance order, as defined by a score table.

    The released data is the authority on the exact profession set and its
    column order; this derives both, skipping prior-template rows. The true
    origin list of each name is not recoverable from the table, so every
    entry gets the same ``source`` label.
    """
    from .templates import Profession

    masks = set(mask_tokens)
    seen: dict[str, None] = {}
    for rec in records:
        if rec.profession not in masks:
            seen.setdefault(rec.profession, None)
    if not seen:
        raise AssemblyError("no profession rows found in records")
    return ProfessionList(items=tuple(Profession(name, source) for name in seen))


def template_verb(template: str, mask_token: str) -> str:
    """Recover the verb of a rendered template string."""
    prefix = mask_token + " "
    if not template.startswith(prefix):
        raise AssemblyError(
            f"template {template!r} does not start with mask token {mask_token!r}"
        )
    rest = template[len(prefix) :]
    if rest.startswith("is "):
        return "is"
    if rest.startswith("works as "):
        return "works as"
    raise AssemblyError(f"cannot determine verb of template {template!r}")


@dataclass(frozen=True)
class ScoreMatrixSet:
    """Aligned per-(model, seed, verb) matrices of shape (checkpoints, professions).

    Rows follow ``steps`` (strictly increasing; the public checkpoint, whose
    step is absent, is labelled -1), columns follow the profession list. For
    the released data b is 62 for the RoBERTa run and 29 for each BERT run.
    """

    model: str
    seed: int
    verb: str
    steps: tuple[int, ...]
    professions: ProfessionList
    P_he: np.ndarray
    P_she: np.ndarray
    R: np.ndarray
    N: np.ndarray
    C: np.ndarray
    prior_he: np.ndarray
    prior_she: np.ndarray

    def __post_init__(self) -> None:
        b, p = len(self.steps), self.professions.p
        for name in ("P_he", "P_she", "R", "N", "C"):
            if getattr(self, name).shape != (b, p):
                raise AssemblyError(f"{name} has shape {getattr(self, name).shape}, expected {(b, p)}")
        for name in ("prior_he", "prior_she"):
            if getattr(self, name).shape != (b,):
                raise AssemblyError(f"{name} has shape {getattr(self, name).shape}, expected ({b},)")
        if any(a >= z for a, z in zip(self.steps, self.steps[1:])):
            raise AssemblyError("steps are not strictly increasing")
        for name in ("P_he", "P_she", "R", "N", "C", "prior_he", "prior_she"):
            getattr(self, name).setflags(write=False)

    @property
    def b(self) -> int:
        return len(self.steps)


def assemble_matrices(
    records: Sequence[ScoreRecord],
    model: str,
    seed: int,
    verb: str,
    professions: ProfessionList,
    profiles: Mapping[str, ModelProfile] | None = None,
) -> ScoreMatrixSet:
    """Build the aligned matrix set for one (model, seed, verb).

    Requires exactly one he-class and one she-class score per (checkpoint,
    profession) cell plus prior-template scores for every checkpoint; any
    missing or duplicate cell is a hard error naming the step and profession.
    """
    if profiles is None:
        profiles = default_model_profiles()
    profile = profiles.get(model)
    if profile is None:
        raise AssemblyError(f"no model profile for {model!r}")
    mask = profile.mask_token

    prof_index = {prof.name: t for t, prof in enumerate(professions.items)}

    cells: dict[tuple[int, int, bool], float] = {}
    priors: dict[tuple[int, bool], float] = {}
    steps_seen: set[int] = set()
    for rec in records:
        if rec.model != model or rec.seed != seed:
            continue
        if template_verb(rec.template, mask) != verb:
            continue
        step = PUBLIC_CHECKPOINT_STEP if rec.checkpoint is None else rec.checkpoint
        steps_seen.add(step)
        he = rec.is_he_class
        if rec.profession == mask:
            key = (step, he)
            if key in priors:
                raise AssemblyError(
                    f"duplicate prior record (step={step}, pronoun={rec.pronoun!r})"
                )
            priors[key] = rec.score
        else:
            t = prof_index.get(rec.profession)
            if t is None:
                raise AssemblyError(
                    f"record profession {rec.profession!r} not in the profession list"
                )
            ckey = (step, t, he)
            if ckey in cells:
                raise AssemblyError(
                    f"duplicate cell (step={step}, profession={rec.profession!r}, "
                    f"pronoun={rec.pronoun!r})"
                )
            cells[ckey] = rec.score

    if not steps_seen:
        raise AssemblyError(
            f"no records for model={model!r} seed={seed} verb={verb!r}"
        )
    steps = tuple(sorted(steps_seen))
    b, p = len(steps), professions.p

    P_he = np.empty((b, p), dtype=np.float64)
    P_she = np.empty((b, p), dtype=np.float64)
    prior_he = np.empty(b, dtype=np.float64)
    prior_she = np.empty(b, dtype=np.float64)

    for m, step in enumerate(steps):
        for label, he in (("he", True), ("she", False)):
            if (step, he) not in priors:
                raise AssemblyError(
                    f"missing {label}-class prior record for step {step}"
                )
        prior_he[m] = priors[(step, True)]
        prior_she[m] = priors[(step, False)]
        if prior_he[m] <= 0.0 or prior_she[m] <= 0.0:
            raise MetricError(
                f"non-positive prior for prior template at step {step}"
            )
        for t, prof in enumerate(professions.items):
            for label, he in (("he", True), ("she", False)):
                score = cells.get((step, t, he))
                if score is None:
                    raise AssemblyError(
                        f"missing {label}-class cell (step={step}, "
                        f"profession={prof.name!r})"
                    )
                if he:
                    P_he[m, t] = score
                else:
                    P_she[m, t] = score

    zero_she = np.argwhere(P_she == 0.0)
    if zero_she.size:
        m, t = zero_she[0]
        raise MetricError(
            f"p_she is zero, bias ratio undefined (step={steps[m]}, "
            f"profession={professions.items[t].name!r})"
        )
    C = P_he + P_she
    zero_c = np.argwhere(C == 0.0)
    if zero_c.size:
        m, t = zero_c[0]
        raise MetricError(
            f"both pronoun probabilities are zero (step={steps[m]}, "
            f"profession={professions.items[t].name!r})"
        )
    R = P_he / P_she
    N = R * (prior_she / prior_he)[:, None]

    return ScoreMatrixSet(
        model=model,
        seed=seed,
        verb=verb,
        steps=steps,
        professions=professions,
        P_he=P_he,
        P_she=P_she,
        R=R,
        N=N,
        C=C,
        prior_he=prior_he,
        prior_she=prior_she,
    )

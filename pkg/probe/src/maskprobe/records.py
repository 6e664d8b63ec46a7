"""Build and write canonical score-table rows.

Output columns, in order: pronoun, score, profession, template,
full_sentence, model, seed, checkpoint. The checkpoint field is empty for
the public checkpoint (seed -1). Exactly two rows per (template,
checkpoint): one per pronoun.
"""

import csv
import os
from pathlib import Path

from .manifest import ManifestEntry
from .profiles import Profile

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


def build_rows(
    entries: list[ManifestEntry],
    scorer,
    profile: Profile,
    seed: int,
    checkpoint: int | None,
) -> list[tuple]:
    """Score every manifest entry, emitting the he-row then the she-row."""
    if checkpoint is None and seed != -1:
        raise ValueError("absent checkpoint is only valid for the public seed -1")
    rows = []
    for entry in entries:
        p_he, p_she = scorer.pronoun_probabilities(entry.rendered, profile.pronouns)
        for pronoun, score in zip(profile.pronouns, (p_he, p_she)):
            if not 0.0 <= score <= 1.0:
                raise ValueError(
                    f"scorer returned {score!r} for {entry.rendered!r}; not a probability"
                )
            # the first mask is the pronoun slot; the prior template keeps its second mask
            full_sentence = entry.rendered.replace(profile.mask_token, pronoun, 1)
            rows.append(
                (
                    pronoun,
                    repr(score),
                    entry.profession,
                    entry.rendered,
                    full_sentence,
                    profile.name,
                    seed,
                    "" if checkpoint is None else checkpoint,
                )
            )
    return rows


def write_rows(rows: list[tuple], path, append: bool = False) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if append and path.exists():
        with path.open("a", encoding="utf-8", newline="") as fh:
            csv.writer(fh).writerows(rows)
        return
    tmp = path.with_name(path.name + ".tmp")
    with tmp.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(COLUMNS)
        writer.writerows(rows)
    os.replace(tmp, path)

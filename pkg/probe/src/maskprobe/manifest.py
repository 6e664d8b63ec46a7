"""Template manifest reader (CSV: verb, profession, rendered)."""

import csv
from dataclasses import dataclass
from pathlib import Path

FIELDS = ("verb", "profession", "rendered")


@dataclass(frozen=True)
class ManifestEntry:
    verb: str
    profession: str  # a profession name, or the mask token for the prior template
    rendered: str


def read_manifest(path) -> list[ManifestEntry]:
    path = Path(path)
    with path.open("r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(header) != FIELDS:
            raise ValueError(f"{path}: bad manifest header {header!r}")
        entries = []
        for row in reader:
            if not row:
                continue
            if len(row) != 3:
                raise ValueError(f"{path}:{reader.line_num}: expected 3 fields")
            entries.append(ManifestEntry(*row))
    if not entries:
        raise ValueError(f"{path}: empty manifest")
    return entries

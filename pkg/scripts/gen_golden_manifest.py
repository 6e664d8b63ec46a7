#!/usr/bin/env python3
"""Freeze the golden probe manifest for the bundled profession lists.

Regenerate whenever the bundled lists or the determiner lexicon change:

    python scripts/gen_golden_manifest.py
"""

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from maskbias.templates import (  # noqa: E402
    default_profession_paths,
    enumerate_probe_set,
    load_professions,
    write_manifest,
)

OUT = ROOT / "tests" / "fixtures" / "golden" / "templates_bert-base-uncased.csv"


def main() -> None:
    professions = load_professions(default_profession_paths())
    specs = enumerate_probe_set(professions, ("is", "works as"), "[MASK]")
    OUT.parent.mkdir(parents=True, exist_ok=True)
    write_manifest(specs, OUT)
    print(f"{OUT}: {len(specs)} templates for {professions.p} professions")


if __name__ == "__main__":
    main()

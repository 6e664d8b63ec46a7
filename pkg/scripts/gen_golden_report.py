#!/usr/bin/env python3
"""Freeze the golden report.json produced by analyzing the fixture dataset.

Figures are excluded on purpose: their bytes depend on the plotting library
version, while report.json carries only computed numbers. Regenerate after
any intentional change to the fixture data or the report schema:

    python scripts/gen_golden_report.py
"""

import shutil
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from maskbias.cli import run_analyze  # noqa: E402
from maskbias.config import load_run_config  # noqa: E402

OUT = ROOT / "tests" / "fixtures" / "golden" / "report.json"


def main() -> None:
    cfg = load_run_config(ROOT / "tests" / "fixtures" / "e2e" / "config.toml")
    tmp = Path(tempfile.mkdtemp(prefix="golden_report_"))
    try:
        run_analyze(cfg, tmp)
        OUT.parent.mkdir(parents=True, exist_ok=True)
        shutil.copyfile(tmp / "report" / "report.json", OUT)
    finally:
        shutil.rmtree(tmp)
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()

"""maskprobe command line.

Examples:

    # public checkpoint of the uncased model, stub scorer smoke run
    maskprobe --manifest templates_bert-base-uncased.csv \
        --model bert-base-uncased --steps public --scorer stub --out scores.csv

    # replication checkpoints of seed 1 at three steps
    maskprobe --manifest templates_bert-base-uncased.csv \
        --model bert-base-uncased --seed 1 --steps 20000,40000,60000 \
        --checkpoint-template /ckpts/seed1/step-{step} --out scores.csv
"""

import argparse
import logging
import sys

from .manifest import read_manifest
from .profiles import default_profiles, load_profiles
from .records import build_rows, write_rows
from .scorer import HuggingFaceScorer, ProbeError, StubScorer

logger = logging.getLogger(__name__)


def parse_args(argv=None):
    parser = argparse.ArgumentParser(
        prog="maskprobe",
        description="Score masked probe templates against MLM checkpoints.",
    )
    parser.add_argument("--manifest", required=True, help="template manifest CSV")
    parser.add_argument("--model", required=True, help="model name (profile key)")
    parser.add_argument("--seed", type=int, default=-1, help="pre-training seed index")
    parser.add_argument(
        "--steps", default="public",
        help="comma-separated step counts, or 'public' for the single public checkpoint",
    )
    parser.add_argument("--out", required=True, help="output score-table CSV")
    parser.add_argument(
        "--scorer", choices=("hf", "stub"), default="hf",
        help="hf: real checkpoints; stub: deterministic pseudo-probabilities",
    )
    parser.add_argument(
        "--checkpoint-template", default=None,
        help="path pattern with {step} for replication checkpoints",
    )
    parser.add_argument("--model-path", default=None,
                        help="checkpoint path for the public run (defaults to --model)")
    parser.add_argument("--profiles", default=None, help="model profile TOML override")
    parser.add_argument("--device", default="cpu")
    parser.add_argument("--local-files-only", action="store_true")
    return parser.parse_args(argv)


def make_scorer(args, location: str):
    if args.scorer == "stub":
        return StubScorer(salt=location)
    return HuggingFaceScorer(
        location, device=args.device, local_files_only=args.local_files_only
    )


def run(args) -> int:
    profiles = load_profiles(args.profiles) if args.profiles else default_profiles()
    profile = profiles.get(args.model)
    if profile is None:
        logger.error("no profile for model %r (known: %s)", args.model, sorted(profiles))
        return 2
    entries = read_manifest(args.manifest)
    for entry in entries:
        if not entry.rendered.startswith(profile.mask_token):
            logger.error(
                "manifest %r is not rendered with %r's mask token %r",
                args.manifest, profile.name, profile.mask_token,
            )
            return 2

    if args.steps == "public":
        if args.seed != -1:
            logger.error("--steps public implies the public checkpoint (seed -1)")
            return 2
        checkpoints = [(-1, None, args.model_path or profile.name)]
    else:
        try:
            steps = [int(s) for s in args.steps.split(",") if s]
        except ValueError:
            logger.error("bad --steps value %r", args.steps)
            return 2
        if not steps:
            logger.error("no steps given")
            return 2
        if args.checkpoint_template is None and args.scorer != "stub":
            logger.error("--checkpoint-template is required for step runs")
            return 2
        checkpoints = [
            (args.seed, step,
             (args.checkpoint_template or "{step}").format(step=step))
            for step in steps
        ]

    first = True
    lossy = 0
    for seed, step, location in checkpoints:
        try:
            scorer = make_scorer(args, location)
            rows = build_rows(entries, scorer, profile, seed, step)
        except (ProbeError, ValueError) as exc:
            logger.error("%s", exc)
            return 1
        write_rows(rows, args.out, append=not first)
        lossy += len(scorer.lossy_templates)
        first = False
        label = "public" if step is None else f"step {step}"
        logger.info("%s %s: wrote %d rows", profile.name, label, len(rows))
    if lossy:
        logger.warning("%d templates had their mask count changed by the tokenizer", lossy)
    return 0


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    return run(parse_args(argv))


if __name__ == "__main__":
    sys.exit(main())

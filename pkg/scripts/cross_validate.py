#!/usr/bin/env python3
"""Run the full cross-validation battery at configurable sizes.

Every connected positroid up to --max-n is pushed through all four h*
pipelines; random larger instances check base-point independence and the
subdivision route.  Exits nonzero on the first disagreement.

Example:
    python scripts/cross_validate.py --max-n 6 --samples 200 --jobs 4
"""

import argparse
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from positroid_hstar import cli  # noqa: E402


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-n", type=int, default=6)
    parser.add_argument("--samples", type=int, default=200,
                        help="random subdivision sample count")
    parser.add_argument("--w0-samples", type=int, default=50)
    parser.add_argument("--seed", type=int, default=20240814)
    parser.add_argument("--jobs", type=int, default=1)
    args = parser.parse_args()

    return cli.main([
        "verify", "--scope", "all",
        "--max-n", str(args.max_n),
        "--seed", str(args.seed),
        "--w0-samples", str(args.w0_samples),
        "--subdivision-samples", str(args.samples),
        "--jobs", str(args.jobs),
    ])


if __name__ == "__main__":
    sys.exit(main())

"""Recompute every worked example claim by claim and write a JSON summary.

    python3 scripts/reproduce_examples.py --out results/repro.json
"""
import argparse
import json
import sys
from pathlib import Path

from mpcodes.repro import EXAMPLES, run_repro


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("examples", nargs="*", default=sorted(EXAMPLES), help="subset of example ids")
    p.add_argument("--out", type=Path, help="write all reports as one JSON file")
    args = p.parse_args(argv)

    reports = []
    for ex in args.examples:
        rep = run_repro(ex)
        print(rep.render(), end="\n\n")
        reports.append(rep)
    if args.out:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(json.dumps([r.to_json() for r in reports], indent=2))
    failed = [r.example for r in reports if not r.passed]
    print("all claims passed" if not failed else f"failed: {', '.join(failed)}")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())

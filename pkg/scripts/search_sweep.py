"""Count matrices satisfying a predicate over a grid of rings and shapes.

    python3 scripts/search_sweep.py --rings F2 F3 --max-size 3 --workers 4
"""
import argparse
import csv
import sys
import time
from dataclasses import dataclass

from mpcodes import config
from mpcodes.catalog import SMALL_RINGS as RINGS
from mpcodes.classify import search
from mpcodes.errors import SearchSpaceTooLarge
from mpcodes.ring import make_ring


@dataclass
class SweepConfig:
    rings: tuple = ("F2", "F3")
    max_size: int = 3
    workers: int = 1
    square_only: bool = True


def predicates(m: int):
    yield "nsc"
    yield "qo"
    for mp in range(1, m):
        yield f"two-way={mp}"


def sweep(cfg: SweepConfig):
    for name in cfg.rings:
        ring = make_ring(RINGS[name])
        for m in range(1, cfg.max_size + 1):
            for l in range(m, cfg.max_size + 1):
                if cfg.square_only and l != m:
                    continue
                for pred in predicates(m):
                    t0 = time.perf_counter()
                    try:
                        raw = search(ring, m, l, pred, workers=cfg.workers)
                        classes = len(search(ring, m, l, pred, up_to_block_basis=True)) if pred.startswith("two-way") else ""
                    except SearchSpaceTooLarge:
                        continue
                    yield name, m, l, pred, len(raw), classes, round(time.perf_counter() - t0, 3)


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--rings", nargs="+", default=list(SweepConfig.rings), choices=sorted(RINGS))
    p.add_argument("--max-size", type=int, default=SweepConfig.max_size)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--rectangular", action="store_true", help="include m < l shapes")
    p.add_argument("--cap-search", type=int, default=config.limits.max_search)
    args = p.parse_args(argv)
    config.limits.max_search = args.cap_search
    cfg = SweepConfig(tuple(args.rings), args.max_size, args.workers, not args.rectangular)

    out = csv.writer(sys.stdout)
    out.writerow(["ring", "m", "l", "predicate", "count", "block_basis_classes", "seconds"])
    for row in sweep(cfg):
        out.writerow(row)
        sys.stdout.flush()
    return 0


if __name__ == "__main__":
    sys.exit(main())

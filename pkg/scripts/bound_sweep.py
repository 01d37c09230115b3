"""Compare every applicable distance bound with the enumerated distance on random instances.

Prints, per ring, how often each bound applies, how often it is tight, and
whether any sandwich check failed.

    python3 scripts/bound_sweep.py --cases 500 --seed 7
"""
import argparse
import sys
from collections import Counter
from dataclasses import dataclass

import numpy as np

from mpcodes.catalog import SMALL_RINGS as RINGS
from mpcodes.code import span
from mpcodes.errors import EnumerationCapExceeded
from mpcodes.matrix import RingMatrix, is_frr
from mpcodes.mpc import LOWER_ORDER, MpcSpec, bound_report
from mpcodes.ring import make_ring


@dataclass
class BoundSweepConfig:
    cases: int = 200
    seed: int = 0
    max_positions: int = 9  # n * l
    max_gens: int = 2


def random_spec(ring, rng, cfg: BoundSweepConfig):
    while True:
        n, l = int(rng.integers(1, 4)), int(rng.integers(1, 4))
        if n * l <= cfg.max_positions:
            break
    m = int(rng.integers(1, l + 1))
    for _ in range(100):
        a = RingMatrix(ring, rng.integers(0, ring.order, size=(m, l)))
        if is_frr(a):
            break
    else:
        return None
    codes = []
    for _ in range(m):
        k = int(rng.integers(0, cfg.max_gens + 1))
        codes.append(span(ring, list(rng.integers(0, ring.order, size=(k, n))), n))
    # half the time, use the two-block shape [C' x m', C'' x m'']
    if m >= 2 and rng.random() < 0.5:
        mp = int(rng.integers(1, m))
        codes = [codes[0]] * mp + [codes[-1]] * (m - mp)
    return MpcSpec(codes, a)


def run(ring_name: str, cfg: BoundSweepConfig):
    ring = make_ring(RINGS[ring_name])
    rng = np.random.default_rng(cfg.seed)
    applied, tight, best = Counter(), Counter(), Counter()
    failures = 0
    done = 0
    while done < cfg.cases:
        spec = random_spec(ring, rng, cfg)
        if spec is None:
            continue
        try:
            rep = bound_report(spec)
        except EnumerationCapExceeded:
            continue
        done += 1
        failures += rep.verified_sandwich is False
        for name, v in rep.lower_bounds().items():
            applied[name] += 1
            tight[name] += v == rep.d_H
        if rep.best_lower:
            best[rep.best_lower] += 1
    return applied, tight, best, failures


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--rings", nargs="+", default=sorted(RINGS), choices=sorted(RINGS))
    p.add_argument("--cases", type=int, default=BoundSweepConfig.cases)
    p.add_argument("--seed", type=int, default=BoundSweepConfig.seed)
    args = p.parse_args(argv)
    cfg = BoundSweepConfig(args.cases, args.seed)

    bad = 0
    for name in args.rings:
        applied, tight, best, failures = run(name, cfg)
        bad += failures
        print(f"== {name}: {cfg.cases} instances, sandwich failures {failures}")
        print(f"   {'bound':24s} {'applies':>8s} {'tight':>6s} {'best':>5s}")
        for b in LOWER_ORDER:
            print(f"   {b:24s} {applied[b]:8d} {tight[b]:6d} {best[b]:5d}")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())

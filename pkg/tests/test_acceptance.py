"""Acceptance gate: one check per criterion, at the stated tolerance.

Run ``pytest tests/test_acceptance.py -s`` for the per-criterion lines and the
printed details; the terminal summary lists PASS/FAIL per criterion.
"""
import functools
import itertools
import time

import numpy as np
import pytest

from mpcodes.catalog import matrix_t
from mpcodes.classify import (
    SfrrProfile,
    block_decomposition_problems,
    check_inverse_transpose_profile,
    find_profiles,
    has_partitioned_orthogonal,
    is_nsc,
    is_quasi_orthogonal,
    is_reversely_nsc,
    is_sfrr,
    search,
    sfrr_block_decompose,
)
from mpcodes.code import Code, code_intersection, dual, span
from mpcodes.matrix import RingMatrix, frr_certificate, inverse, is_frr
from mpcodes.mpc import (
    MpcSpec,
    bound_report,
    bound_two_way,
    build,
    dual_mpc,
    dual_quasi_orthogonal,
    exact_distance_sfrr,
    self_orthogonal_by_partition,
)
from mpcodes.repro import run_repro
from mpcodes.ring import make_ring

from conftest import RING_SPECS

criterion = pytest.mark.criterion


def timed(fn, *args):
    t0 = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - t0


# ---------------------------------------------------------------- 1 - 5, 7


@criterion(1, "ex5.2 summary table exact, < 5 s")
def test_ex52_table():
    rep, secs = timed(run_repro, "ex5.2")
    print("\n" + "\n".join(rep.table) + f"\n({secs:.2f} s)")
    rows = [r.split(None, 1)[1].split(None, 1) for r in rep.table[1:]]
    assert rows == [
        ["[12,5,4]", "not self-orthogonal"],
        ["[12,6,4]", "Type I self-dual"],
        ["[12,5,4]", "self-orthogonal"],
    ]
    assert rep.passed
    assert secs < 5


@criterion(2, "ex5.3 [40,20,8] Type II self-dual by full enumeration, < 120 s")
def test_ex53():
    rep, secs = timed(run_repro, "ex5.3")
    print("\n" + rep.render())
    byname = {c.text: c.observed for c in rep.claims}
    assert byname["codewords enumerated"] == 1 << 20
    assert byname["parameters"] == "[40,20,8]"
    assert byname["minimum weight"] == 8
    assert byname["every weight divisible by 4"] is True
    assert byname["self-dual (partition hypotheses and |C|^2 = 2^40)"] is True
    assert rep.passed
    assert secs < 120


@criterion(3, "ex4.1 classification of T and its inverse transpose")
def test_ex41():
    rep = run_repro("ex4.1")
    print("\n" + rep.render())
    assert rep.passed


@criterion(4, "search over F2: unique 3x3 two-way (2)-SFRR (= T), none 2x2, none 4x4, < 60 s")
def test_search_counts():
    f2 = make_ring(RING_SPECS["F2"])
    t0 = time.perf_counter()
    raw = search(f2, 3, 3, "two_way_sfrr{2}")
    classes = search(f2, 3, 3, "two_way_sfrr{2}", up_to_block_basis=True)
    two = search(f2, 2, 2, "two_way_sfrr{1}")
    four = {mp: search(f2, 4, 4, f"two_way_sfrr{{{mp}}}") for mp in (1, 2, 3)}
    secs = time.perf_counter() - t0
    print(
        f"\n3x3 (2): {len(raw)} matrices, {len(classes)} up to block row bases -> {[c.to_literals() for c in classes]}"
        f"\n2x2 (1): {len(two)}\n4x4: { {k: len(v) for k, v in four.items()} }\n({secs:.1f} s)"
    )
    # every raw matrix gives the same [C' x 2, C'' x 1]A for all C', C''
    assert classes == [matrix_t(f2)]
    assert len(raw) == 6
    assert two == []
    assert all(v == [] for v in four.values())
    assert secs < 60


@criterion(5, "two-way bound values of ex5.2 and ex5.3")
def test_bound_values():
    from mpcodes.catalog import code_c1, code_c2, code_c3, code_c3_prime, hamming_prime, hamming_second, matrix_a5

    t = matrix_t()
    i = bound_two_way(code_c2(), code_c1(), t, 2)
    ii = bound_two_way(code_c3(), code_c3_prime(), t, 2)
    v = bound_two_way(hamming_prime(), hamming_second(), matrix_a5(), 4)
    print(f"\n(i) {i}\n(ii) {ii}\nex5.3 {v}")
    assert (i.split_lower, i.sum_lower) == (4, 3)
    assert (ii.split_lower, ii.sum_lower) == (2, 4)
    assert (v.sum_lower, v.upper) == (8, 8)


@criterion(7, "every reproduced claim passes, no substitutions")
def test_all_claims():
    for ex in ("ex4.1", "ex5.1", "ex5.2"):
        rep = run_repro(ex)
        print(f"\n{ex}: {sum(c.passed for c in rep.claims)}/{len(rep.claims)}")
        assert rep.passed, [c.line() for c in rep.claims if not c.passed]


# -------------------------------------------------------- 6: property suite

CASES = 200


def all_vectors(ring, n):
    return np.array(list(itertools.product(range(ring.order), repeat=n)), dtype=np.int64).reshape(-1, n)


def brute_dual(ring, code: Code, n):
    """{x : <x, g> = 0 for all generators g}, by scanning R^n."""
    vecs = all_vectors(ring, n)
    ok = np.ones(len(vecs), dtype=bool)
    for g in code.generators:
        ok &= ring.sum(ring.mul_small[vecs, np.asarray(g, dtype=np.int64)[None, :]], axis=1) == ring.zero
    return vecs[ok]


def as_set(words):
    return {tuple(int(x) for x in w) for w in words}


def min_weight(words, n):
    w = (np.asarray(words) != 0).sum(axis=1)
    w = w[w > 0]
    return int(w.min()) if len(w) else n + 1


def pairwise_orthogonal(ring, words):
    words = np.asarray(words, dtype=np.int64)
    for u in words:
        prods = ring.mul_small[words, u[None, :]]
        if (ring.sum(prods, axis=1) != ring.zero).any():
            return False
    return True


def rand_matrix(ring, m, l, rng):
    return RingMatrix(ring, rng.integers(0, ring.order, size=(m, l)))


def rand_frr(ring, m, l, rng):
    for _ in range(100):
        a = rand_matrix(ring, m, l, rng)
        if is_frr(a):
            return a
    return RingMatrix(ring, np.eye(m, l, dtype=np.int64) * ring.one)


def rand_code(ring, n, rng):
    k = int(rng.integers(0, 3))
    return span(ring, list(rng.integers(0, ring.order, size=(k, n))), n)


def self_orthogonal_code(ring, n, rng):
    c = rand_code(ring, n, rng)
    return code_intersection(c, dual(c))


def shape(ring, rng, budget=4096):
    """(n, m, l) with m <= l and |R|^(n l) <= budget (at most 9 binary positions)."""
    while True:
        n, l = int(rng.integers(1, 4)), int(rng.integers(1, 4))
        m = int(rng.integers(1, l + 1))
        if ring.order ** (n * l) <= budget:
            return n, m, l


@functools.cache
def two_way_pool(ring):
    """Every two-way (m')-SFRR matrix of a few small shapes, found exhaustively."""
    pool = []
    for m, l in ((2, 2), (2, 3), (3, 3)):
        if ring.order ** (m * l) > 1 << 16:
            continue
        for mp in range(1, m):
            pool += [(a, mp) for a in search(ring, m, l, f"two-way={mp}")]
    return pool


def nested(ring, n, profile, rng):
    """Component codes equal inside each profile block and nested across blocks."""
    blocks = len(profile.indices) - 1
    gens = list(rng.integers(0, ring.order, size=(blocks, n)))
    chain = [span(ring, gens[: blocks - h], n) for h in range(blocks)]
    if profile.direction == "reverse":
        chain = chain[::-1]
    idx = profile.indices
    codes = []
    for h in range(blocks):
        size = idx[h + 1] - idx[h]
        codes += [chain[h]] * size
    return codes


def one_case(ring, rng, tally):
    n, m, l = shape(ring, rng)
    N = n * l

    # (a) Frobenius identities on a random code
    c = rand_code(ring, N if ring.order**N <= 4096 else n, rng)
    d = dual(c)
    assert c.cardinality * d.cardinality == ring.order**c.length
    assert dual(d) == c
    tally["a"] += 1

    # (b) dual formula against a scan of R^(nl)
    a = rand_frr(ring, m, l, rng)
    spec = MpcSpec([rand_code(ring, n, rng) for _ in range(m)], a)
    code = build(spec)
    assert as_set(dual_mpc(spec).words) == as_set(brute_dual(ring, code, N))
    tally["b"] += 1

    # (c) every applicable lower bound <= d_H <= two-way upper bound
    true_d = min_weight(code.words, N)
    rep = bound_report(spec, compute_true=False)
    for name, v in rep.lower_bounds().items():
        assert v <= true_d, (name, v, true_d)
    pool = [(mat, mp) for mat, mp in two_way_pool(ring) if ring.order ** (n * mat.l) <= 1 << 16]
    if pool:
        tw_a, mp = pool[int(rng.integers(len(pool)))]
        c1, c2 = rand_code(ring, n, rng), rand_code(ring, n, rng)
        tw = bound_two_way(c1, c2, tw_a, mp)
        d2 = min_weight(build(MpcSpec([c1] * mp + [c2] * (tw_a.m - mp), tw_a)).words, n * tw_a.l)
        assert max(tw.split_lower, tw.sum_lower, tw.swapped_lower) <= d2 <= tw.upper
        tally["c_two_way"] += 1
    tally["c"] += 1

    # (d) exact distance under block-equal, nested components
    found = find_profiles(a)
    for direction in ("forward", "reverse"):
        prof = found.maximal(direction)
        if prof is None:
            continue
        keep = tuple(i for i in prof.interior if rng.random() < 0.7)
        prof = SfrrProfile(m, keep, direction)
        codes = nested(ring, n, prof, rng)
        s = MpcSpec(codes, a)
        assert exact_distance_sfrr(s, prof) == min_weight(build(s).words, N)
        tally["d"] += 1

        if direction == "forward":
            # (e) profile transfer to the inverse transpose of the extension
            assert check_inverse_transpose_profile(a, prof)
            # (f) block decomposition postconditions
            assert block_decomposition_problems(a, sfrr_block_decompose(a, prof)) == []
            tally["f"] += 1
    # (e) NSC equivalences
    assert is_nsc(a) == is_sfrr(a, SfrrProfile(m, tuple(range(1, m))))
    sq = rand_matrix(ring, m, m, rng)
    if is_frr(sq):
        assert is_nsc(sq) == is_reversely_nsc(inverse(sq).T)
    tally["e"] += 1

    # (g) quasi-orthogonal dual and partition construction, checked pairwise
    so = [self_orthogonal_code(ring, n, rng) for _ in range(2)]
    if is_quasi_orthogonal(a):
        s = MpcSpec([so[0]] * m, a)
        built = build(s)
        assert pairwise_orthogonal(ring, built.words)
        assert built.issubset(dual_quasi_orthogonal(s))
        tally["g_qo"] += 1
    if m >= 2:
        mp = int(rng.integers(1, m))
        top = rand_frr(ring, mp, l, rng)
        kern = frr_certificate(top).kernel_basis
        if kern.m >= m - mp:
            pick = rng.choice(kern.m, size=m - mp, replace=False)
            stacked = RingMatrix(ring, np.concatenate([top.data, kern.data[pick]]))
            if is_frr(stacked) and has_partitioned_orthogonal(stacked, mp):
                r = self_orthogonal_by_partition(so[0], so[1], stacked, mp, exhaustive=True)
                assert pairwise_orthogonal(ring, r.code.words)
                if r.self_dual:
                    assert as_set(r.code.words) == as_set(brute_dual(ring, r.code, N))
                tally["g"] += 1


@criterion(6, "seeded property suite, >= 200 cases per ring over six rings, < 10 min")
@pytest.mark.parametrize("name", list(RING_SPECS))
def test_property_suite(name):
    ring = make_ring(RING_SPECS[name])
    rng = np.random.default_rng(20240601 + sorted(RING_SPECS).index(name))
    tally = dict.fromkeys(["a", "b", "c", "c_two_way", "d", "e", "f", "g", "g_qo"], 0)
    t0 = time.perf_counter()
    for _ in range(CASES):
        one_case(ring, rng, tally)
    print(f"\n{name}: {CASES} cases in {time.perf_counter() - t0:.1f} s, checks {tally}")
    for key in ("a", "b", "c", "e"):
        assert tally[key] == CASES
    assert tally["d"] > 0 and tally["f"] > 0 and tally["g"] > 0

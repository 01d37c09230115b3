import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mpcodes.catalog import code_c1, code_c2, code_c3, code_c3_prime, hamming_prime, hamming_second, matrix_a5, matrix_t
from mpcodes.classify import SfrrProfile, sfrr_block_decompose
from mpcodes.code import full_space, is_self_dual, span, zero_code
from mpcodes.errors import (
    LengthMismatch,
    NotNsc,
    NotPartitionedOrthogonal,
    NotQuasiOrthogonal,
    NotSelfOrthogonalComponent,
    NotTwoWaySfrr,
    ProfileNotSfrr,
    ShapeMismatch,
    SpecError,
)
from mpcodes.matrix import RingMatrix, is_frr
from mpcodes.mpc import (
    MpcSpec,
    bound_dual_sfrr,
    bound_nsc,
    bound_report,
    bound_rowcode,
    bound_sfrr,
    bound_two_way,
    build,
    dual_mpc,
    dual_quasi_orthogonal,
    exact_distance_sfrr,
    exactness_holds,
    self_orthogonal_by_partition,
)
from mpcodes.ring import ZMod, make_ring
from oracles import OracleRing, dual_set, product_code, to_lits

from conftest import RING_SPECS
from gen import rand_code, rand_frr

SPECS = list(RING_SPECS.values())
F2, F3 = ZMod(2), ZMod(3)


def as_set(code):
    return {to_lits(code.ring, w) for w in code.words}


def small_instance(spec, seed, budget=4096):
    ring = make_ring(spec)
    rng = np.random.default_rng(seed)
    for _ in range(50):
        n, l = int(rng.integers(1, 4)), int(rng.integers(1, 4))
        if ring.order ** (n * l) > budget:
            continue
        m = int(rng.integers(1, l + 1))
        a = rand_frr(ring, m, l, rng)
        if a is None:
            continue
        codes = [rand_code(ring, n, rng) for _ in range(m)]
        return ring, MpcSpec(codes, a)
    return ring, None


@given(st.sampled_from(SPECS), st.integers(0, 10**6))
def test_build_matches_oracle(spec, seed):
    ring, s = small_instance(spec, seed)
    if s is None:
        return
    o = OracleRing(spec)
    rows = [to_lits(ring, r) for r in s.matrix.data]
    expected = product_code(o, [as_set(c) for c in s.codes], rows, s.n)
    c = build(s)
    assert as_set(c) == expected
    # FRR A makes the construction injective
    assert c.cardinality == np.prod([x.cardinality for x in s.codes])


@given(st.sampled_from(SPECS), st.integers(0, 10**6))
def test_dual_matches_brute_force(spec, seed):
    ring, s = small_instance(spec, seed)
    if s is None:
        return
    o = OracleRing(spec)
    c = build(s)
    assert as_set(dual_mpc(s)) == dual_set(o, as_set(c), s.n * s.l)


def test_spec_validation():
    f2 = make_ring(F2)
    with pytest.raises(ShapeMismatch):
        MpcSpec([code_c1()], matrix_t())
    with pytest.raises(LengthMismatch):
        MpcSpec([code_c1(), code_c1(), zero_code(f2, 3)], matrix_t())


def test_json_round_trip_with_file_refs(tmp_path):
    import json
    from pathlib import Path

    data = Path(__file__).resolve().parents[1] / "data"
    s = MpcSpec.from_json(json.loads((data / "ex52_i.json").read_text()), base_dir=data)
    assert s.codes == [code_c2(), code_c2(), code_c1()] and s.matrix == matrix_t()
    back = MpcSpec.from_json(s.to_json())
    assert back.codes == s.codes and back.matrix == s.matrix
    with pytest.raises(SpecError):
        MpcSpec.from_json({"codes": []})


def test_example_codes():
    c = build(MpcSpec([code_c3(), code_c3(), code_c3_prime()], matrix_t()))
    assert (c.length, c.cardinality, c.d_H) == (12, 2**6, 4)
    assert is_self_dual(c)
    assert dual_mpc(MpcSpec([code_c3(), code_c3(), code_c3_prime()], matrix_t())) == c


def test_diagonal_matrix_gives_concatenation():
    f3 = make_ring(F3)
    a = RingMatrix(f3, [[1, 0], [0, 2]])
    c1, c2 = span(f3, [[1, 1]], 2), span(f3, [[1, 2]], 2)
    c = build(MpcSpec([c1, c2], a))
    assert c == span(f3, [[1, 0, 1, 0], [0, 2, 0, 1]], 4)


def test_full_space_with_invertible_matrix_has_zero_dual():
    f3 = make_ring(F3)
    a = RingMatrix(f3, [[1, 1], [1, 2]])
    s = MpcSpec([full_space(f3, 2)] * 2, a)
    assert dual_mpc(s).is_zero


def test_dual_quasi_orthogonal():
    f2 = make_ring(F2)
    a = RingMatrix(f2, [[1, 1, 1, 0], [0, 1, 1, 1]])
    s = MpcSpec([code_c1(), code_c1()], a)
    d = dual_quasi_orthogonal(s)
    assert d == dual_mpc(s) and build(s).issubset(d)
    with pytest.raises(NotQuasiOrthogonal):
        dual_quasi_orthogonal(MpcSpec([code_c1()] * 3, matrix_t()))
    with pytest.raises(NotSelfOrthogonalComponent) as info:
        dual_quasi_orthogonal(MpcSpec([code_c1(), code_c2()], a))
    assert info.value.index == 2


def test_quasi_orthogonal_self_dual_over_f3():
    f3 = make_ring(F3)
    a = RingMatrix.from_literals(f3, [[1, 1], [1, -1]])
    tern = span(f3, [[1, 1, 1, 0], [0, 1, 2, 1]], 4)
    assert is_self_dual(tern)
    s = MpcSpec([tern, tern], a)
    c = build(s)
    assert dual_quasi_orthogonal(s) == c
    o = OracleRing(F3)
    assert as_set(c) == dual_set(o, as_set(c), 8)


def test_rowcode_bounds_on_example():
    s = MpcSpec([code_c3(), code_c3(), code_c3_prime()], matrix_t())
    assert bound_rowcode(s, side="U") == 2
    assert bound_rowcode(s, side="L") == 2
    with pytest.raises(SpecError):
        bound_rowcode(s, side="X")


def test_identity_rowcode_bound_is_code_distance():
    f2 = make_ring(F2)
    s = MpcSpec([code_c1()], RingMatrix.identity(f2, 1))
    assert bound_rowcode(s) == 4


def test_sfrr_bounds_on_examples():
    prof = SfrrProfile(3, (2,))
    s = MpcSpec([code_c2(), code_c2(), code_c1()], matrix_t())
    assert bound_sfrr(s, prof) == 4
    iii = MpcSpec([code_c3(), code_c3(), code_c1()], matrix_t())
    assert exactness_holds(iii, prof)
    assert exact_distance_sfrr(iii, prof) == 4 == build(iii).d_H
    ii = MpcSpec([code_c3(), code_c3(), code_c3_prime()], matrix_t())
    assert exact_distance_sfrr(ii, prof) is None
    assert bound_dual_sfrr(ii, prof) == 2
    with pytest.raises(ProfileNotSfrr):
        bound_sfrr(s, SfrrProfile(3, (1,)))


def test_dual_bound_with_fewer_rows_than_columns():
    f2 = make_ring(F2)
    s = MpcSpec([code_c1()], RingMatrix(f2, [[1, 1]]))
    # dual of C1 has distance 2; the tail term is m + 1 = 2
    assert bound_dual_sfrr(s, SfrrProfile(1)) == 2
    assert bound_dual_sfrr(s, SfrrProfile(1)) <= dual_mpc(s).d_H


def test_nsc_bounds():
    f3 = make_ring(F3)
    a = RingMatrix(f3, [[1, 1], [1, 2]])
    c1 = full_space(f3, 2)
    c2 = span(f3, [[1, 1]], 2)
    s = MpcSpec([c1, c2], a)
    primal, dual_b = bound_nsc(s)
    d = build(s).d_H
    assert primal == d == exact_distance_sfrr(s, SfrrProfile(2, (1,)))
    assert dual_b <= dual_mpc(s).d_H
    with pytest.raises(NotNsc):
        bound_nsc(MpcSpec([code_c1()] * 3, matrix_t()))


def test_two_way_bounds_on_examples():
    b = bound_two_way(code_c2(), code_c1(), matrix_t(), 2)
    assert (b.split_lower, b.sum_lower, b.upper) == (4, 3, 4)
    b = bound_two_way(code_c3(), code_c3_prime(), matrix_t(), 2)
    assert (b.split_lower, b.sum_lower, b.upper) == (2, 4, 4)
    b = bound_two_way(hamming_prime(), hamming_second(), matrix_a5(), 4)
    assert b.sum_lower == b.upper == 8
    with pytest.raises(NotTwoWaySfrr):
        bound_two_way(code_c2(), code_c1(), matrix_t(), 1)


def test_two_way_swaps_small_top_block():
    f3 = make_ring(F3)
    # first matrix found by search(F3, 3, 3, "two-way=1")
    a = RingMatrix(f3, [[1, 1, 1], [0, 1, 1], [1, 0, 1]])
    c1, c2 = span(f3, [[1, 1]], 2), full_space(f3, 2)
    b = bound_two_way(c1, c2, a, 1)
    assert b.swapped and b.mprime == 2
    d = build(MpcSpec([c1, c2, c2], a)).d_H
    assert max(b.split_lower, b.sum_lower, b.swapped_lower) <= d <= b.upper


def test_partition_construction_examples():
    r = self_orthogonal_by_partition(code_c3(), code_c3_prime(), matrix_t(), 2, exhaustive=True)
    assert r.self_orthogonal and r.self_dual and r.code.cardinality == 2**6
    r = self_orthogonal_by_partition(code_c3(), code_c1(), matrix_t(), 2, exhaustive=True)
    assert r.self_orthogonal and not r.self_dual and r.code.cardinality == 2**5
    with pytest.raises(NotSelfOrthogonalComponent):
        self_orthogonal_by_partition(code_c2(), code_c1(), matrix_t(), 2)
    with pytest.raises(NotPartitionedOrthogonal):
        self_orthogonal_by_partition(code_c3(), code_c1(), matrix_t(make_ring(F3)), 2)


def test_report_on_example_i():
    s = MpcSpec([code_c2(), code_c2(), code_c1()], matrix_t())
    rep = bound_report(s)
    assert rep.d_H == 4 and rep.verified_sandwich
    assert (rep.two_way_split_lower, rep.two_way_sum_lower, rep.two_way_upper) == (4, 3, 4)
    assert rep.best_lower == "two_way_split_lower"
    assert rep.nsc_lower is None and rep.applicability["nsc_lower"].startswith("NotNsc")
    js = rep.to_json()
    assert js["forward_profile"] == {"direction": "forward", "indices": [0, 2, 3]}
    assert js["nsc_lower"] is None


def test_report_non_sfrr_profile_reason():
    f2 = make_ring(F2)
    s = MpcSpec([code_c1(), code_c1()], RingMatrix.identity(f2, 2))
    rep = bound_report(s, forward=SfrrProfile(2, (1,)))
    assert rep.sfrr_lower is None
    assert rep.applicability["sfrr_lower"].startswith("ProfileNotSfrr")
    assert rep.verified_sandwich


@given(st.sampled_from(SPECS), st.integers(0, 10**6))
def test_sandwich_on_random_instances(spec, seed):
    ring, s = small_instance(spec, seed)
    if s is None:
        return
    rep = bound_report(s)
    assert rep.verified_sandwich


@given(st.sampled_from(SPECS), st.integers(0, 10**6))
def test_block_decomposition_does_not_change_code(spec, seed):
    ring, s = small_instance(spec, seed)
    if s is None:
        return
    from mpcodes.classify import find_profiles

    prof = find_profiles(s.matrix).maximal("forward")
    if prof is None:
        return
    dec = sfrr_block_decompose(s.matrix, prof)
    # block lower-triangular Q with nested codes gives the same code; check Q invertible
    assert is_frr(dec.Q) and dec.Q.m == s.m


def test_t_decomposition_row_two():
    dec = sfrr_block_decompose(matrix_t(), SfrrProfile(3, (2,)))
    row = dec.QA.data[1]
    f2 = make_ring(F2)
    assert row[0] == 0 and row[1] == 1 and f2.is_unit(int(row[2]))

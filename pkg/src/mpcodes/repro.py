"""Claim-by-claim recomputation of the worked examples (ex4.1, ex5.1, ex5.2, ex5.3)."""
from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from . import catalog as cat
from .classify import (
    SfrrProfile,
    check_inverse_transpose_profile,
    has_partitioned_orthogonal,
    is_nsc,
    is_quasi_orthogonal,
    is_sfrr,
    is_two_way_sfrr,
    search,
)
from .code import (
    code_intersection,
    code_sum,
    inner_product,
    is_mds,
    is_self_dual,
    is_self_orthogonal,
    is_type_ii,
    params,
    row_code,
)
from .errors import UnknownExample
from .matrix import RingMatrix, inverse, is_frr
from .mpc import MpcSpec, bound_two_way, build, exact_distance_sfrr, self_orthogonal_by_partition
from .ring import ZMod, make_ring


@dataclass
class Claim:
    text: str
    expected: object
    observed: object

    @property
    def passed(self) -> bool:
        return self.expected == self.observed

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"{tag}  {self.text}: {self.observed!r}" + ("" if self.passed else f" (expected {self.expected!r})")


@dataclass
class ReproReport:
    example: str
    claims: list = field(default_factory=list)
    table: list = field(default_factory=list)
    seconds: float = 0.0

    def check(self, text, observed, expected=True):
        self.claims.append(Claim(text, expected, observed))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.claims)

    def render(self) -> str:
        out = [f"== {self.example}"]
        out += [c.line() for c in self.claims]
        if self.table:
            out.append("")
            out += self.table
        n_ok = sum(c.passed for c in self.claims)
        out.append(f"{n_ok}/{len(self.claims)} claims passed in {self.seconds:.2f} s")
        return "\n".join(out)

    def to_json(self) -> dict:
        return {
            "example": self.example,
            "passed": self.passed,
            "seconds": self.seconds,
            "claims": [{"claim": c.text, "observed": _plain(c.observed), "expected": _plain(c.expected), "passed": c.passed} for c in self.claims],
            "table": self.table,
        }


def _plain(x):
    if isinstance(x, (bool, int, str, type(None))):
        return x
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.generic):
        return x.item()
    return str(x)


def _label(code) -> str:
    return params(code).label(code.ring.order)


def _matrix_word(ring, cols, a: RingMatrix) -> np.ndarray:
    """(c_1 .. c_m) A for codewords given as the columns of an n x m matrix."""
    return (RingMatrix(ring, cols) @ a).data


# ------------------------------------------------------------------ ex4.1


def ex41(rep: ReproReport):
    f2 = cat.f2()
    T = cat.matrix_t(f2)
    rep.check("T is full-row-rank", is_frr(T))
    rep.check("T is (2)-SFRR", is_sfrr(T, SfrrProfile(3, (2,))))
    rep.check("U_T(1) is MDS", is_mds(row_code(T, 1)), False)
    rep.check("T is non-singular by columns", is_nsc(T), False)
    rep.check("T is reversely (3)-SFRR", is_sfrr(T, SfrrProfile(3, (3,), "reverse")))
    it = inverse(T).T
    rep.check("(T^-1)^T over F2 equals [[0,-1,1],[-1,0,1],[1,1,-1]]", it == cat.matrix_t_inverse_transpose(f2))
    rep.check("(T^-1)^T is reversely (3)-SFRR", is_sfrr(it, SfrrProfile(3, (3,), "reverse")))
    rep.check("profile transfer to (T^-1)^T agrees", check_inverse_transpose_profile(T, SfrrProfile(3, (2,))))
    for name, spec in (("F3", ZMod(3)), ("Z4", ZMod(4)), ("F4", cat.F4_SPEC), ("Z6", ZMod(6))):
        r = make_ring(spec)
        Tr = cat.matrix_t(r)
        ok = (
            is_sfrr(Tr, SfrrProfile(3, (2,)))
            and is_sfrr(Tr, SfrrProfile(3, (3,), "reverse"))
            and not is_nsc(Tr)
            and inverse(Tr).T == cat.matrix_t_inverse_transpose(r)
            and is_sfrr(inverse(Tr).T, SfrrProfile(3, (3,), "reverse"))
        )
        rep.check(f"same statements over {name}", ok)


# ------------------------------------------------------------------ ex5.1


def ex51(rep: ReproReport):
    f2 = cat.f2()
    T = cat.matrix_t(f2)
    for name, spec in (("F2", ZMod(2)), ("F3", ZMod(3)), ("Z4", ZMod(4)), ("F4", cat.F4_SPEC)):
        rep.check(f"T is two-way (2)-SFRR over {name}", is_two_way_sfrr(cat.matrix_t(make_ring(spec)), 2))
    rep.check("T has the 2-partitioned orthogonal property over F2", has_partitioned_orthogonal(T, 2))
    rep.check("T is quasi-orthogonal over F2", is_quasi_orthogonal(T), False)
    raw = search(f2, 3, 3, "two-way=2")
    classes = search(f2, 3, 3, "two-way=2", up_to_block_basis=True)
    rep.check("3x3 two-way (2)-SFRR matrices over F2 (all, same two row codes)", len(raw), 6)
    rep.check("... up to block-diagonal change of basis: one class", len(classes), 1)
    rep.check("... whose systematic representative is T", classes[0] == T if classes else False)

    for name, spec in (("F3", ZMod(3)), ("F5", ZMod(5)), ("Z9", ZMod(9))):
        r = make_ring(spec)
        h = RingMatrix.from_literals(r, [[1, 1], [1, -1]])
        rep.check(f"[[1,1],[1,-1]] two-way (1)-SFRR and quasi-orthogonal over {name}", is_two_way_sfrr(h, 1) and is_quasi_orthogonal(h))
    rep.check("[[1,1],[1,-1]] two-way (1)-SFRR over F2", is_two_way_sfrr(RingMatrix.from_literals(f2, [[1, 1], [1, -1]]), 1), False)
    # characteristic 4 is not enough: the determinant -2 has to be a unit
    z4 = make_ring(ZMod(4))
    rep.check("[[1,1],[1,-1]] two-way (1)-SFRR over Z4 (2 not a unit)", is_two_way_sfrr(RingMatrix.from_literals(z4, [[1, 1], [1, -1]]), 1), False)
    rep.check("2x2 two-way (1)-SFRR matrices over F2", len(search(f2, 2, 2, "two-way=1")), 0)
    f4 = cat.f4()
    for w in range(2, 4):  # the two elements of F4 outside {0, 1}
        a = RingMatrix(f4, [[f4.one, w], [w, f4.one]])
        rep.check(f"[[1,w],[w,1]] two-way (1)-SFRR and quasi-orthogonal over F4, w={f4.format(w)}", is_two_way_sfrr(a, 1) and is_quasi_orthogonal(a))

    first = [[1, 0, 1, 1], [0, 1, 1, -1], [1, 1, 1, 0], [1, -1, 0, 1]]
    second = [[1, 0, 1, 1], [0, 1, 1, -1], [1, 1, -1, 0], [1, -1, 0, -1]]
    for name, spec in (("F3", ZMod(3)), ("F5", ZMod(5)), ("Z9", ZMod(9))):
        a = RingMatrix.from_literals(make_ring(spec), first)
        rep.check(f"first 4x4 matrix two-way (2)-SFRR over {name}", is_two_way_sfrr(a, 2))
    rep.check(
        "first 4x4 matrix two-way (2)-SFRR over Z4 (2 not a unit)",
        is_two_way_sfrr(RingMatrix.from_literals(z4, first), 2),
        False,
    )
    for name, spec in (("F5", ZMod(5)), ("F7", ZMod(7)), ("Z25", ZMod(25))):
        a = RingMatrix.from_literals(make_ring(spec), second)
        rep.check(f"second 4x4 matrix two-way (2)-SFRR and quasi-orthogonal over {name}", is_two_way_sfrr(a, 2) and is_quasi_orthogonal(a))
    for mp in (1, 2, 3):
        rep.check(f"4x4 two-way ({mp})-SFRR matrices over F2", len(search(f2, 4, 4, f"two-way={mp}")), 0)


# ------------------------------------------------------------------ ex5.2


def ex52(rep: ReproReport):
    f2 = cat.f2()
    T = cat.matrix_t(f2)
    c1, c2, c3, c3p = cat.code_c1(f2), cat.code_c2(f2), cat.code_c3(f2), cat.code_c3_prime(f2)
    rep.check("T is two-way (2)-SFRR", is_two_way_sfrr(T, 2))
    rep.check("T has the 2-partitioned orthogonal property", has_partitioned_orthogonal(T, 2))
    comps = (
        ("C1", c1, "[4,1,4]", "self-orthogonal"),
        ("C2", c2, "[4,2,2]", "not self-orthogonal"),
        ("C3", c3, "[4,2,2]", "Type I self-dual"),
        ("C3'", c3p, "[4,2,2]", "Type I self-dual"),
    )
    for name, c, lab, duality in comps:
        rep.check(f"{name} parameters", _label(c), lab)
        rep.check(f"{name} duality", _duality(c), duality)

    # (i)
    rep.check("C2 ∩ C1 = 0", code_intersection(c2, c1).is_zero)
    rep.check("C2 + C1 parameters", _label(code_sum(c2, c1)), "[4,3,1]")
    b = bound_two_way(c2, c1, T, 2)
    rep.check("(i) split lower bound", b.split_lower, 4)
    rep.check("(i) sum lower bound", b.sum_lower, 3)
    rep.check("(i) upper bound", b.upper, 4)
    ci = build(MpcSpec([c2, c2, c1], T))
    rep.check("(i) [C2,C2,C1]T parameters", _label(ci), "[12,5,4]")
    rep.check("(i) self-orthogonal", is_self_orthogonal(ci, exhaustive=True), False)
    u = _matrix_word(f2, [[0, 0, 1], [0, 1, 1], [0, 1, 1], [0, 1, 1]], T)
    v = _matrix_word(f2, [[1, 0, 1], [0, 0, 1], [1, 0, 1], [0, 0, 1]], T)
    rep.check("(i) first witness product", u.tolist(), [[1, 1, 1], [1, 0, 0], [1, 0, 0], [1, 0, 0]])
    rep.check("(i) second witness product", v.tolist(), [[0, 1, 0], [1, 1, 1], [0, 1, 0], [1, 1, 1]])
    rep.check("(i) witnesses are codewords", ci.contains(u.ravel()) and ci.contains(v.ravel()))
    rep.check("(i) witness inner product", inner_product(f2, u, v), 1)

    # (ii)
    rep.check("C3 ∩ C3' = C1", code_intersection(c3, c3p) == c1)
    rep.check("C3 + C3' parameters", _label(code_sum(c3, c3p)), "[4,3,2]")
    b = bound_two_way(c3, c3p, T, 2)
    rep.check("(ii) split lower bound", b.split_lower, 2)
    rep.check("(ii) sum lower bound", b.sum_lower, 4)
    rep.check("(ii) upper bound", b.upper, 4)
    part = self_orthogonal_by_partition(c3, c3p, T, 2)
    cii = part.code
    rep.check("(ii) [C3,C3,C3']T parameters", _label(cii), "[12,6,4]")
    rep.check("(ii) self-dual from the partition construction", part.self_dual)
    rep.check("(ii) self-dual by exhaustive check", is_self_dual(cii, exhaustive=True))
    rep.check("(ii) Type II", is_type_ii(cii), False)
    w = _matrix_word(f2, [[1, 0, 1], [0, 1, 1], [1, 0, 0], [0, 1, 0]], T)
    rep.check("(ii) witness product", w.tolist(), [[0, 1, 0], [1, 0, 0], [1, 0, 1], [0, 1, 1]])
    rep.check("(ii) witness is a codeword", cii.contains(w.ravel()))
    rep.check("(ii) witness weight mod 4", int((w != 0).sum()) % 4, 2)

    # (iii)
    rep.check("C3 ⊇ C1", c1.issubset(c3))
    spec3 = MpcSpec([c3, c3, c1], T)
    rep.check("(iii) exact distance from nesting", exact_distance_sfrr(spec3, SfrrProfile(3, (2,))), 4)
    part3 = self_orthogonal_by_partition(c3, c1, T, 2)
    ciii = part3.code
    rep.check("(iii) [C3,C3,C1]T parameters", _label(ciii), "[12,5,4]")
    rep.check("(iii) self-orthogonal by exhaustive check", is_self_orthogonal(ciii, exhaustive=True))
    rep.check("(iii) self-dual", part3.self_dual, False)

    rep.table = [
        f"{'code':16s} {'parameters':12s} duality",
        f"{'[C2,C2,C1]T':16s} {_label(ci):12s} {_duality(ci)}",
        f"{'[C3,C3,C3’]T':16s} {_label(cii):12s} {_duality(cii)}",
        f"{'[C3,C3,C1]T':16s} {_label(ciii):12s} {_duality(ciii)}",
    ]
    rep.check("summary table", [r.split(None, 1)[1].strip() for r in rep.table[1:]], [
        "[12,5,4]     not self-orthogonal",
        "[12,6,4]     Type I self-dual",
        "[12,5,4]     self-orthogonal",
    ])


def _duality(code) -> str:
    if is_self_dual(code, exhaustive=True):
        return "Type II self-dual" if is_type_ii(code, exhaustive=True) else "Type I self-dual"
    return "self-orthogonal" if is_self_orthogonal(code, exhaustive=True) else "not self-orthogonal"


# ------------------------------------------------------------------ ex5.3


def ex53(rep: ReproReport):
    f2 = cat.f2()
    a = cat.matrix_a5(f2)
    cp, cpp = cat.hamming_prime(f2), cat.hamming_second(f2)
    rep.check("A is two-way (4)-SFRR", is_two_way_sfrr(a, 4))
    rep.check("A has the 4-partitioned orthogonal property", has_partitioned_orthogonal(a, 4))
    rep.check("C' parameters", _label(cp), "[8,4,4]")
    rep.check("C'' parameters", _label(cpp), "[8,4,4]")
    rep.check("C' is Type II", is_type_ii(cp, exhaustive=True))
    rep.check("C'' is Type II", is_type_ii(cpp, exhaustive=True))
    rep.check("C' ∩ C'' parameters", _label(code_intersection(cp, cpp)), "[8,1,8]")
    rep.check("C' + C'' parameters", _label(code_sum(cp, cpp)), "[8,7,2]")
    b = bound_two_way(cp, cpp, a, 4)
    rep.check("sum lower bound", b.sum_lower, 8)
    rep.check("upper bound", b.upper, 8)
    part = self_orthogonal_by_partition(cp, cpp, a, 4)
    c = part.code
    rep.check("codewords enumerated", c.cardinality, 1 << 20)
    weights = c.weights()
    rep.check("minimum weight", int(weights[weights > 0].min()), 8)
    rep.check("every weight divisible by 4", bool((weights % 4 == 0).all()))
    rep.check("self-orthogonal (partition construction, generator pairs)", part.self_orthogonal)
    rep.check("self-dual (partition hypotheses and |C|^2 = 2^40)", part.self_dual and c.cardinality**2 == 2**40)
    rep.check("parameters", _label(c), "[40,20,8]")
    rep.check("Type II", part.self_dual and bool((weights % 4 == 0).all()))


EXAMPLES = {"ex4.1": ex41, "ex5.1": ex51, "ex5.2": ex52, "ex5.3": ex53}


def run_repro(example_id: str) -> ReproReport:
    try:
        fn = EXAMPLES[example_id]
    except KeyError:
        raise UnknownExample(f"unknown example {example_id!r}; choose from {', '.join(EXAMPLES)}") from None
    rep = ReproReport(example_id)
    t0 = time.perf_counter()
    fn(rep)
    rep.seconds = time.perf_counter() - t0
    return rep

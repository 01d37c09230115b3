"""Matrix-product codes [C_1, ..., C_m]A, their duals and distance bounds."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import prod
from pathlib import Path

import numpy as np

from . import config
from .classify import (
    SfrrProfile,
    find_profiles,
    has_partitioned_orthogonal,
    is_nsc,
    is_quasi_orthogonal,
    is_two_way_sfrr,
    require_sfrr,
)
from .code import (
    Code,
    _cap,
    _unique_rows,
    code_intersection,
    code_sum,
    dual,
    full_space,
    is_self_dual,
    is_self_orthogonal,
    row_code,
    zero_code,
)
from .errors import (
    EnumerationCapExceeded,
    LengthMismatch,
    MpcError,
    NotNsc,
    NotPartitionedOrthogonal,
    NotQuasiOrthogonal,
    NotSelfOrthogonalComponent,
    NotTwoWaySfrr,
    ShapeMismatch,
    SpecError,
)
from .matrix import FrrCertificate, RingMatrix, frr_certificate, is_nonsingular
from .ring import Ring, WeightTable


@dataclass
class MpcSpec:
    codes: list
    matrix: RingMatrix
    certificate: FrrCertificate = field(init=False, repr=False)

    def __post_init__(self):
        self.codes = list(self.codes)
        if len(self.codes) != self.matrix.m:
            raise ShapeMismatch(f"{len(self.codes)} codes for a matrix with {self.matrix.m} rows")
        if not self.codes:
            raise SpecError("need at least one component code")
        n = self.codes[0].length
        for c in self.codes:
            if c.ring != self.matrix.ring:
                raise ShapeMismatch("component code over a different ring")
            if c.length != n:
                raise LengthMismatch("component codes of unequal length")
        self.certificate = frr_certificate(self.matrix)

    @property
    def ring(self) -> Ring:
        return self.matrix.ring

    @property
    def n(self) -> int:
        return self.codes[0].length

    @property
    def m(self) -> int:
        return self.matrix.m

    @property
    def l(self) -> int:
        return self.matrix.l

    @classmethod
    def from_json(cls, obj, base_dir=None, max_ring_order=None) -> "MpcSpec":
        base = Path(base_dir or ".")

        def load(x):
            if isinstance(x, str):
                return json.loads((base / x).read_text())
            return x

        try:
            matrix = RingMatrix.from_json(load(obj["matrix"]), max_ring_order)
            codes = [Code.from_json(load(c), max_ring_order) for c in obj["codes"]]
        except (KeyError, TypeError) as exc:
            raise SpecError(f"bad MPC spec JSON: {exc}") from exc
        return cls(codes, matrix)

    def to_json(self) -> dict:
        return {"codes": [c.to_json() for c in self.codes], "matrix": self.matrix.to_json()}


# -------------------------------------------------------------- enumeration


def _outer_flat(ring: Ring, words: np.ndarray, row: np.ndarray) -> np.ndarray:
    """Each word c (length n) -> c^T row (n x l), flattened row-major."""
    words = np.asarray(words, dtype=np.int64)
    row = np.asarray(row, dtype=np.int64)
    out = ring.mul_small[words[:, :, None], row[None, None, :]]
    return out.reshape(len(words), words.shape[1] * len(row))


def _sumset(ring: Ring, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """All sums x + y, x in a, y in b (rows), without deduplication."""
    return ring.add_small[a[:, None, :], b[None, :, :]].reshape(-1, a.shape[1])


def build(spec: MpcSpec) -> Code:
    """The code {(c_1 .. c_m) A}, codewords flattened row-major as n x l matrices."""
    ring, n, l = spec.ring, spec.n, spec.l
    a = spec.matrix.data
    _cap(prod(c.cardinality for c in spec.codes), "matrix-product code")
    words = np.zeros((1, n * l), dtype=ring.dtype)
    for j, c in enumerate(spec.codes):
        words = _sumset(ring, words, _outer_flat(ring, c.words, a[j]))
    linear = all(c.is_linear for c in spec.codes)
    gens = None
    if linear:
        gens = [_outer_flat(ring, c.generators, a[j]) for j, c in enumerate(spec.codes)]
        gens = np.concatenate(gens, axis=0) if gens else np.zeros((0, n * l), dtype=np.int64)
    return Code(ring, n * l, generators=gens, words=words, linear=linear)


def _plus_kernel_part(ring: Ring, first: Code, kernel: RingMatrix, n: int) -> Code:
    """first + M_{n x (l-m)}(R) G, by enumerating the second module and summing."""
    l = kernel.l
    gens = []
    for i in range(n):
        for r in range(kernel.m):
            g = np.zeros((n, l), dtype=np.int64)
            g[i] = kernel.data[r]
            gens.append(g.ravel())
    if not gens:
        return first
    second = Code(ring, n * l, generators=np.array(gens))
    _cap(first.cardinality * second.cardinality, "dual matrix-product code")
    words, _ = _unique_rows(_sumset(ring, first.words, second.words), ring.order)
    return Code(ring, n * l, words=words, generators=np.concatenate([first.generators, second.generators]), linear=True)


def dual_mpc(spec: MpcSpec) -> Code:
    """Dual of build(spec) as [C_1^⊥ .. C_m^⊥] B^T + M_{n x (l-m)}(R) G.

    B is the right inverse and G the kernel basis of A.
    """
    cert = spec.certificate
    first = build(MpcSpec([dual(c) for c in spec.codes], cert.right_inverse.T))
    return _plus_kernel_part(spec.ring, first, cert.kernel_basis, spec.n)


def dual_quasi_orthogonal(spec: MpcSpec) -> Code:
    """Dual for quasi-orthogonal A and self-orthogonal linear C_j:
    [C_1^⊥ .. C_m^⊥] A + M_{n x (l-m)}(R) G. Contains build(spec)."""
    if not is_quasi_orthogonal(spec.matrix):
        raise NotQuasiOrthogonal("A A^T is not diagonal with unit diagonal")
    for j, c in enumerate(spec.codes, start=1):
        if not c.is_linear or not is_self_orthogonal(c):
            raise NotSelfOrthogonalComponent(j)
    first = build(MpcSpec([dual(c) for c in spec.codes], spec.matrix))
    return _plus_kernel_part(spec.ring, first, spec.certificate.kernel_basis, spec.n)


# ------------------------------------------------------------------- bounds


def _d(code: Code) -> int | None:
    """Hamming distance, or None for the zero code (its bound terms are vacuous)."""
    return None if code.is_zero else code.min_distance()


def _least(terms, default: int) -> int:
    """min over (coefficient, distance) pairs, skipping vacuous ones."""
    vals = [k * d for k, d in terms if d is not None]
    return min(vals, default=default)


def bound_rowcode(spec: MpcSpec, weight: WeightTable | None = None, side: str = "U") -> int:
    """min_k d_H(C_k) * d_w(U_A(k))  (side U)  or  d_H(C_k) * d_w(L_A(k))  (side L)."""
    if side not in ("U", "L"):
        raise SpecError(f"side must be U or L, not {side!r}")
    kind = "prefix" if side == "U" else "suffix"
    terms = [(row_code(spec.matrix, k, kind).min_distance(weight), _d(c)) for k, c in enumerate(spec.codes, start=1)]
    return _least(terms, zero_code(spec.ring, spec.n * spec.l).min_distance(weight))


def _check_profile(spec: MpcSpec, profile: SfrrProfile):
    if profile.m != spec.m:
        raise SpecError(f"profile is for {profile.m} rows, matrix has {spec.m}")
    require_sfrr(spec.matrix, profile)


def bound_sfrr(spec: MpcSpec, profile: SfrrProfile) -> int:
    """Lower bound on d_H for a forward or reverse SFRR profile."""
    _check_profile(spec, profile)
    l, m, idx = spec.l, spec.m, profile.indices
    d = [None] + [_d(c) for c in spec.codes]  # 1-based
    terms = []
    if profile.direction == "forward":
        for h in range(1, len(idx)):
            terms += [(l - idx[h] + 1, d[k]) for k in range(idx[h - 1] + 1, idx[h] + 1)]
    else:
        for h in range(len(idx) - 1):
            terms += [(l - m + idx[h], d[k]) for k in range(idx[h], idx[h + 1])]
    return _least(terms, spec.n * l + 1)


def _blocks(profile: SfrrProfile):
    idx = profile.indices
    if profile.direction == "forward":
        return [list(range(idx[h - 1] + 1, idx[h] + 1)) for h in range(1, len(idx))]
    return [list(range(idx[h], idx[h + 1])) for h in range(len(idx) - 1)]


def exactness_holds(spec: MpcSpec, profile: SfrrProfile) -> bool:
    """Linear codes, equal inside each profile block, nested across blocks
    (decreasing for forward profiles, increasing for reverse ones)."""
    codes = spec.codes
    if not all(c.is_linear for c in codes):
        return False
    blocks = _blocks(profile)
    for b in blocks:
        if any(codes[k - 1] != codes[b[0] - 1] for k in b):
            return False
    reps = [codes[b[0] - 1] for b in blocks]
    if profile.direction == "forward":
        return all(y.issubset(x) for x, y in zip(reps, reps[1:]))
    return all(x.issubset(y) for x, y in zip(reps, reps[1:]))


def exact_distance_sfrr(spec: MpcSpec, profile: SfrrProfile) -> int | None:
    """Exact d_H when the nesting conditions hold, else None."""
    _check_profile(spec, profile)
    if not exactness_holds(spec, profile):
        return None
    l, m, idx = spec.l, spec.m, profile.indices
    d = [None] + [_d(c) for c in spec.codes]
    if profile.direction == "forward":
        terms = [(l - idx[h] + 1, d[idx[h]]) for h in range(1, len(idx))]
    else:
        terms = [(l - m + idx[h], d[idx[h]]) for h in range(len(idx) - 1)]
    return _least(terms, spec.n * l + 1)


def _dual_distances(spec: MpcSpec):
    return [None] + [_d(dual(c)) for c in spec.codes]


def bound_dual_sfrr(spec: MpcSpec, profile: SfrrProfile) -> int:
    """Lower bound on d_H of the dual code for a forward profile.

    Positions k > m behave like the full space (distance 1); that tail term is
    m + 1 when m < l and absent when m = l.
    """
    if profile.direction != "forward":
        raise SpecError("dual bound takes a forward profile")
    _check_profile(spec, profile)
    l, m = spec.l, spec.m
    idx = profile.indices + (l,)
    dd = _dual_distances(spec)
    terms = []
    for h in range(len(idx) - 1):
        for k in range(idx[h] + 1, idx[h + 1] + 1):
            terms.append((idx[h] + 1, dd[k] if k <= m else 1))
    return _least(terms, spec.n * l + 1)


def exact_dual_distance_sfrr(spec: MpcSpec, profile: SfrrProfile) -> int | None:
    if profile.direction != "forward":
        raise SpecError("dual bound takes a forward profile")
    _check_profile(spec, profile)
    if not exactness_holds(spec, profile):
        return None
    l, m, idx = spec.l, spec.m, profile.indices
    dd = _dual_distances(spec)
    terms = [(idx[h] + 1, dd[idx[h + 1]]) for h in range(len(idx) - 1)]
    if m < l:
        terms.append((m + 1, 1))
    return _least(terms, spec.n * l + 1)


def bound_nsc(spec: MpcSpec) -> tuple[int, int]:
    """(primal, dual) bounds for a matrix that is non-singular by columns."""
    if not is_nsc(spec.matrix):
        raise NotNsc("matrix is not non-singular by columns")
    l, m = spec.l, spec.m
    primal = _least([(l - k + 1, _d(c)) for k, c in enumerate(spec.codes, start=1)], spec.n * l + 1)
    dd = _dual_distances(spec)
    dual_terms = [(k, dd[k]) for k in range(1, m + 1)]
    if m < l:
        dual_terms.append((m + 1, 1))
    return primal, _least(dual_terms, spec.n * l + 1)


@dataclass(frozen=True)
class TwoWayBounds:
    split_lower: int  # best of the forward (m') and reverse (m'+1) profile bounds
    sum_lower: int  # via C', C' + C'', C' ∩ C''
    swapped_lower: int  # via C'', C' ∩ C'', C' + C''
    upper: int
    mprime: int
    swapped: bool  # rows were reordered so that m' >= m''

    def to_json(self) -> dict:
        return dict(self.__dict__)


def _two_way_parts(c1: Code, c2: Code, a: RingMatrix, mprime: int):
    m = a.m
    if not 1 <= mprime < m:
        raise SpecError(f"m' must satisfy 1 <= m' < {m}")
    if not (c1.is_linear and c2.is_linear):
        raise SpecError("two-way bounds need linear component codes")
    if not is_two_way_sfrr(a, mprime):
        raise NotTwoWaySfrr(f"matrix is not two-way ({mprime})-SFRR")
    swapped = mprime < m - mprime
    if swapped:
        a = RingMatrix(a.ring, np.concatenate([a.data[mprime:], a.data[:mprime]]))
        c1, c2, mprime = c2, c1, m - mprime
    return c1, c2, a, mprime, swapped


def bound_two_way(c1: Code, c2: Code, a: RingMatrix, mprime: int) -> TwoWayBounds:
    """Bounds for [C' x m', C'' x m''] A with A two-way (m')-SFRR.

    When m' < m'' the row blocks are exchanged first (an equivalent code).
    """
    c1, c2, a, mp, swapped = _two_way_parts(c1, c2, a, mprime)
    m, l = a.m, a.l
    mpp = m - mp
    spec = MpcSpec([c1] * mp + [c2] * mpp, a)
    split = max(
        bound_sfrr(spec, SfrrProfile(m, (mp,))),
        bound_sfrr(spec, SfrrProfile(m, (mp + 1,), "reverse")),
    )
    d1, d2 = _d(c1), _d(c2)
    d_sum, d_cap = _d(code_sum(c1, c2)), _d(code_intersection(c1, c2))
    top = c1.length * l + 1
    return TwoWayBounds(
        split_lower=split,
        sum_lower=_least([(l - mp + 1, d1), (l - mpp + 1, d_sum), (l - m + 1, d_cap)], top),
        swapped_lower=_least([(l - mpp + 1, d2), (l - m + 1, d_cap), (l - mp + 1, d_sum)], top),
        upper=_least([(l - mp + 1, d1), (l - mpp + 1, d2), (l - m + 1, d_cap)], top),
        mprime=mp,
        swapped=swapped,
    )


@dataclass
class PartitionReport:
    code: Code
    self_orthogonal: bool
    self_dual: bool
    exhaustive: bool


def self_orthogonal_by_partition(c1: Code, c2: Code, a: RingMatrix, mprime: int, exhaustive: bool | None = None) -> PartitionReport:
    """[C' x m', C'' x m''] A is self-orthogonal when A' ⊥ A'' and C', C'' are;
    self-dual when moreover C', C'' are self-dual and A is invertible.

    The conclusion is re-checked on the built code (all codeword pairs when
    feasible) and the self-dual claim is confirmed by cardinality.
    """
    m = a.m
    if not has_partitioned_orthogonal(a, mprime):
        raise NotPartitionedOrthogonal(f"rows 1..{mprime} are not orthogonal to rows {mprime + 1}..{m}")
    for j, c in ((1, c1), (mprime + 1, c2)):
        if not c.is_linear or not is_self_orthogonal(c):
            raise NotSelfOrthogonalComponent(j)
    code = build(MpcSpec([c1] * mprime + [c2] * (m - mprime), a))
    if exhaustive is None:
        exhaustive = code.cardinality**2 <= config.limits.max_pairs
    if not is_self_orthogonal(code, exhaustive):
        raise AssertionError("partition construction produced a code that is not self-orthogonal")
    self_dual = a.m == a.l and is_nonsingular(a) and is_self_dual(c1) and is_self_dual(c2)
    if self_dual and code.cardinality**2 != a.ring.order ** code.length:
        raise AssertionError("partition construction: self-dual hypotheses hold but |C|^2 != |R|^(nl)")
    return PartitionReport(code, True, self_dual, exhaustive)


# ------------------------------------------------------------- full report

LOWER_ORDER = (
    "two_way_split_lower",
    "two_way_sum_lower",
    "two_way_swapped_lower",
    "sfrr_lower",
    "rev_sfrr_lower",
    "nsc_lower",
    "row_prefix_lower",
    "row_suffix_lower",
)
BOUND_FIELDS = LOWER_ORDER + (
    "two_way_upper",
    "sfrr_exact",
    "rev_sfrr_exact",
    "sfrr_dual_lower",
    "sfrr_dual_exact",
    "nsc_dual_lower",
)


@dataclass
class BoundReport:
    """Every distance bound that applies to one matrix-product code.

    ``None`` marks an inapplicable bound; ``applicability`` maps each bound
    name to "ok" or the failed hypothesis.
    """

    row_prefix_lower: int | None = None
    row_suffix_lower: int | None = None
    sfrr_lower: int | None = None
    rev_sfrr_lower: int | None = None
    sfrr_exact: int | None = None
    rev_sfrr_exact: int | None = None
    sfrr_dual_lower: int | None = None
    sfrr_dual_exact: int | None = None
    nsc_lower: int | None = None
    nsc_dual_lower: int | None = None
    two_way_split_lower: int | None = None
    two_way_sum_lower: int | None = None
    two_way_upper: int | None = None
    two_way_swapped_lower: int | None = None
    forward_profile: SfrrProfile | None = None
    reverse_profile: SfrrProfile | None = None
    mprime: int | None = None
    weighted: bool = False
    d_H: int | None = None
    d_w: int | None = None
    dual_d_H: int | None = None
    best_lower: str | None = None
    verified_sandwich: bool | None = None
    applicability: dict = field(default_factory=dict)

    def lower_bounds(self) -> dict:
        names = [n for n in LOWER_ORDER if not (self.weighted and n.startswith("row_"))]
        return {n: getattr(self, n) for n in names if getattr(self, n) is not None}

    def to_json(self) -> dict:
        out = {}
        for k, v in self.__dict__.items():
            out[k] = v.to_json() if isinstance(v, SfrrProfile) else v
        return out

    def table(self) -> str:
        rows = []
        for name in BOUND_FIELDS:
            v = getattr(self, name)
            status = self.applicability.get(name, "")
            mark = "  <- best lower" if name == self.best_lower else ""
            rows.append(f"{name:24s} {('-' if v is None else v)!s:>6}  {'' if status == 'ok' else status}{mark}")
        for name in ("d_H", "d_w", "dual_d_H", "verified_sandwich"):
            v = getattr(self, name)
            if v is not None:
                rows.append(f"{name:24s} {v!s:>6}")
        return "\n".join(r.rstrip() for r in rows)


def _two_block_split(codes) -> int | None:
    """m' for codes shaped [C' x m', C'' x m''] with C' != C'', else None."""
    m = len(codes)
    for mp in range(1, m):
        if all(c == codes[0] for c in codes[:mp]) and all(c == codes[-1] for c in codes[mp:]) and codes[0] != codes[-1]:
            return mp
    return None


def _try(report: BoundReport, names, fn):
    try:
        vals = fn()
    except MpcError as exc:
        for n in names:
            report.applicability[n] = f"{type(exc).__name__}: {exc}"
        return
    if len(names) == 1:
        vals = (vals,)
    for n, v in zip(names, vals):
        setattr(report, n, v)
        report.applicability[n] = "ok" if v is not None else "nesting conditions fail"


def bound_report(
    spec: MpcSpec,
    weight: WeightTable | None = None,
    forward: SfrrProfile | None = None,
    reverse: SfrrProfile | None = None,
    mprime: int | None = None,
    compute_true: bool = True,
) -> BoundReport:
    rep = BoundReport(weighted=weight is not None and not weight.is_hamming)
    a, m = spec.matrix, spec.m
    w = weight if rep.weighted else None
    rep.row_prefix_lower = bound_rowcode(spec, w, "U")
    rep.row_suffix_lower = bound_rowcode(spec, w, "L")
    rep.applicability["row_prefix_lower"] = rep.applicability["row_suffix_lower"] = "ok"

    if forward is None or reverse is None:
        found = find_profiles(a)
        forward = forward or found.maximal("forward") or SfrrProfile(m)
        reverse = reverse or found.maximal("reverse") or SfrrProfile(m, (), "reverse")
    rep.forward_profile, rep.reverse_profile = forward, reverse
    _try(rep, ["sfrr_lower"], lambda: bound_sfrr(spec, forward))
    _try(rep, ["sfrr_exact"], lambda: exact_distance_sfrr(spec, forward))
    _try(rep, ["rev_sfrr_lower"], lambda: bound_sfrr(spec, reverse))
    _try(rep, ["rev_sfrr_exact"], lambda: exact_distance_sfrr(spec, reverse))
    _try(rep, ["sfrr_dual_lower"], lambda: bound_dual_sfrr(spec, forward))
    _try(rep, ["sfrr_dual_exact"], lambda: exact_dual_distance_sfrr(spec, forward))
    _try(rep, ["nsc_lower", "nsc_dual_lower"], lambda: bound_nsc(spec))

    tw = ("two_way_split_lower", "two_way_sum_lower", "two_way_upper", "two_way_swapped_lower")
    if mprime is None:
        mprime = _two_block_split(spec.codes)
    if mprime is None:
        for n in tw:
            rep.applicability[n] = "codes are not of the form [C' x m', C'' x m'']"
    else:
        rep.mprime = mprime

        def two_way():
            codes = spec.codes
            if any(c != codes[0] for c in codes[:mprime]) or any(c != codes[-1] for c in codes[mprime:]):
                raise SpecError(f"codes are not of the form [C' x {mprime}, C'' x {m - mprime}]")
            b = bound_two_way(codes[0], codes[-1], a, mprime)
            return b.split_lower, b.sum_lower, b.upper, b.swapped_lower

        _try(rep, list(tw), two_way)

    lows = rep.lower_bounds()
    if lows:
        best = max(lows.values())
        rep.best_lower = next(n for n in LOWER_ORDER if lows.get(n) == best)

    if compute_true:
        try:
            code = build(spec)
            rep.d_H = code.d_H
            if rep.weighted:
                rep.d_w = code.min_distance(weight)
        except EnumerationCapExceeded:
            pass
        try:
            rep.dual_d_H = dual_mpc(spec).d_H
        except EnumerationCapExceeded:
            pass
        if rep.d_H is not None:
            rep.verified_sandwich = sandwich_holds(rep)
    return rep


def sandwich_holds(rep: BoundReport) -> bool:
    d = rep.d_H
    ok = all(v <= d for v in rep.lower_bounds().values())
    if rep.weighted and rep.d_w is not None:
        ok &= rep.row_prefix_lower <= rep.d_w and rep.row_suffix_lower <= rep.d_w
    if rep.two_way_upper is not None:
        ok &= d <= rep.two_way_upper
    for ex in (rep.sfrr_exact, rep.rev_sfrr_exact):
        if ex is not None:
            ok &= ex == d
    if rep.dual_d_H is not None:
        for lo in (rep.sfrr_dual_lower, rep.nsc_dual_lower):
            if lo is not None:
                ok &= lo <= rep.dual_d_H
        if rep.sfrr_dual_exact is not None:
            ok &= rep.sfrr_dual_exact == rep.dual_d_H
    return bool(ok)


__all__ = [
    "MpcSpec",
    "build",
    "dual_mpc",
    "dual_quasi_orthogonal",
    "bound_rowcode",
    "bound_sfrr",
    "exact_distance_sfrr",
    "exactness_holds",
    "bound_dual_sfrr",
    "exact_dual_distance_sfrr",
    "bound_nsc",
    "bound_two_way",
    "TwoWayBounds",
    "self_orthogonal_by_partition",
    "PartitionReport",
    "BoundReport",
    "bound_report",
    "sandwich_holds",
    "full_space",
]

"""Matrix classes used by the matrix-product constructions.

Definitional checks go through the row codes U_A(k) / L_A(k) and their MDS
property. Where a second route exists (all maximal minors units, for FRR
matrices) it is used as an independent cross-check and as the fast path for
exhaustive matrix search.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import config
from .code import is_mds, row_code
from .errors import NotFrr, ProfileNotSfrr, SearchSpaceTooLarge, Singular, SpecError
from .matrix import RingMatrix, extend_to_invertible, frr_certificate, inverse, is_frr, is_nonsingular, matmul, prefix_minors
from .ring import Ring, make_ring


# ----------------------------------------------------------------- profiles


@dataclass(frozen=True)
class SfrrProfile:
    """Index sequence for a (reversely) SFRR matrix with ``m`` rows.

    Only the interior indices are stored; the endpoints are implicit
    (0 and m forward, 1 and m+1 reverse), so ``SfrrProfile(3, (2,))`` is the
    "(2)" profile of a 3-row matrix.
    """

    m: int
    interior: tuple[int, ...] = ()
    direction: str = "forward"

    def __post_init__(self):
        if self.direction not in ("forward", "reverse"):
            raise SpecError(f"profile direction must be forward or reverse, not {self.direction!r}")
        interior = tuple(int(i) for i in self.interior)
        lo, hi = self.endpoints
        seq = (lo,) + interior + (hi,)
        if any(a >= b for a, b in zip(seq, seq[1:])):
            raise SpecError(f"profile indices {list(seq)} are not strictly increasing")
        object.__setattr__(self, "interior", interior)

    @property
    def endpoints(self):
        return (0, self.m) if self.direction == "forward" else (1, self.m + 1)

    @property
    def indices(self) -> tuple[int, ...]:
        lo, hi = self.endpoints
        return (lo,) + self.interior + (hi,)

    @property
    def t(self) -> int:
        return len(self.indices) - 1

    @classmethod
    def from_json(cls, obj, m: int) -> "SfrrProfile":
        try:
            direction = obj.get("direction", "forward")
            idx = [int(i) for i in obj["indices"]]
        except (AttributeError, KeyError, TypeError, ValueError) as exc:
            raise SpecError(f"bad profile JSON: {exc}") from exc
        prof = cls(m, tuple(idx[1:-1]), direction)
        if tuple(idx) != prof.indices:
            raise SpecError(f"profile endpoints must be {prof.endpoints}, got {idx}")
        return prof

    def to_json(self) -> dict:
        return {"direction": self.direction, "indices": list(self.indices)}

    def __str__(self):
        body = ",".join(map(str, self.interior)) or "-"
        return f"{'reversely ' if self.direction == 'reverse' else ''}({body})"


def sfrr_failure(a: RingMatrix, profile: SfrrProfile) -> int | None:
    """First profile index whose row code is not MDS, or None. Raises NotFrr."""
    frr_certificate(a)
    kind = "prefix" if profile.direction == "forward" else "suffix"
    for i in profile.indices:
        if not is_mds(row_code(a, i, kind)):
            return i
    return None


def is_sfrr(a: RingMatrix, profile: SfrrProfile | None = None) -> bool:
    if profile is None:
        profile = SfrrProfile(a.m)
    return sfrr_failure(a, profile) is None


def require_sfrr(a: RingMatrix, profile: SfrrProfile):
    bad = sfrr_failure(a, profile)
    if bad is not None:
        raise ProfileNotSfrr(bad, profile.direction)


@dataclass(frozen=True)
class ProfileSets:
    """Indices k with U_A(k) (forward) or L_A(k) (reverse) MDS.

    Valid profiles are exactly the subsets containing both endpoints.
    """

    m: int
    forward: frozenset
    reverse: frozenset

    def maximal(self, direction: str = "forward") -> SfrrProfile | None:
        s = self.forward if direction == "forward" else self.reverse
        prof = SfrrProfile(self.m, (), direction)
        lo, hi = prof.endpoints
        if lo not in s or hi not in s:
            return None
        return SfrrProfile(self.m, tuple(sorted(i for i in s if lo < i < hi)), direction)


def find_profiles(a: RingMatrix) -> ProfileSets:
    frr_certificate(a)
    m = a.m
    fwd = frozenset(k for k in range(0, m + 1) if is_mds(row_code(a, k, "prefix")))
    rev = frozenset(k for k in range(1, m + 2) if is_mds(row_code(a, k, "suffix")))
    return ProfileSets(m, fwd, rev)


# ----------------------------------------------------------- minor helpers


def _all_units(ring: Ring, layer: dict, n: int) -> np.ndarray:
    if not layer:
        return np.zeros(n, dtype=bool)
    ok = np.ones(n, dtype=bool)
    for det in layer.values():
        ok &= ring.unit_mask[det]
    return ok


def batch_sfrr(ring: Ring, data: np.ndarray) -> np.ndarray:
    """All maximal minors units (an FRR matrix generating an MDS code), batched."""
    N, m, l = data.shape
    if m > l:
        return np.zeros(N, dtype=bool)
    if m == 0:
        return np.ones(N, dtype=bool)
    return _all_units(ring, prefix_minors(ring, data)[m], N)


def batch_two_way(ring: Ring, data: np.ndarray, mprime: int) -> np.ndarray:
    m = data.shape[1]
    if not 1 <= mprime < m:
        return np.zeros(data.shape[0], dtype=bool)
    return batch_sfrr(ring, data[:, :mprime]) & batch_sfrr(ring, data[:, mprime:]) & batch_sfrr(ring, data)


def batch_nsc(ring: Ring, data: np.ndarray) -> np.ndarray:
    N, m, l = data.shape
    if m > l:
        return np.zeros(N, dtype=bool)
    minors = prefix_minors(ring, data)
    ok = np.ones(N, dtype=bool)
    for t in range(1, m + 1):
        ok &= _all_units(ring, minors[t], N)
    return ok


def batch_quasi_orthogonal(ring: Ring, data: np.ndarray) -> np.ndarray:
    N, m, l = data.shape
    if m > l:
        return np.zeros(N, dtype=bool)
    g = matmul(ring, data, data.transpose(0, 2, 1))
    diag = g[:, np.arange(m), np.arange(m)]
    off = g.copy()
    off[:, np.arange(m), np.arange(m)] = 0
    return ring.unit_mask[diag].all(axis=1) & (off == 0).all(axis=(1, 2))


# --------------------------------------------------------------- predicates


def is_nsc(a: RingMatrix) -> bool:
    """Every t x t submatrix of the first t rows is nonsingular, for all t."""
    return bool(batch_nsc(a.ring, a.data[None])[0])


def is_reversely_nsc(a: RingMatrix) -> bool:
    return bool(batch_nsc(a.ring, a.data[::-1][None])[0])


def is_two_way_sfrr(a: RingMatrix, mprime: int) -> bool:
    """Forward (m')-SFRR and reversely (m'+1)-SFRR at once.

    Computed twice: through the row codes, and through the minors of the top
    block, the bottom block and the whole matrix. The two must agree.
    """
    m = a.m
    if not 1 <= mprime < m:
        raise SpecError(f"m' must satisfy 1 <= m' < {m}")
    if is_frr(a):
        by_codes = is_sfrr(a, SfrrProfile(m, (mprime,))) and is_sfrr(a, SfrrProfile(m, (mprime + 1,), "reverse"))
    else:
        by_codes = False
    by_blocks = bool(batch_two_way(a.ring, a.data[None], mprime)[0])
    if by_codes != by_blocks:
        raise AssertionError(f"two-way SFRR routes disagree for m'={mprime}: codes={by_codes}, minors={by_blocks}")
    return by_codes


def is_quasi_orthogonal(a: RingMatrix) -> bool:
    return bool(batch_quasi_orthogonal(a.ring, a.data[None])[0])


def has_partitioned_orthogonal(a: RingMatrix, mprime: int) -> bool:
    if not 1 <= mprime < a.m:
        raise SpecError(f"m' must satisfy 1 <= m' < {a.m}")
    return not (a.rows(0, mprime) @ a.rows(mprime).T).data.any()


def check_inverse_transpose_profile(a: RingMatrix, profile: SfrrProfile) -> bool:
    """Whether "A is profile-SFRR" and "(Ã^-1)^T is reversely SFRR with shifted
    profile" agree for this instance (they always should)."""
    if profile.direction != "forward":
        raise SpecError("expects a forward profile")
    at, _, _ = extend_to_invertible(a)
    dual_side = inverse(at).T
    m, l = a.m, a.l
    shifted = tuple(i + 1 for i in profile.interior) + ((m + 1,) if m < l else ())
    rev = SfrrProfile(l, shifted, "reverse")
    return is_sfrr(a, profile) == is_sfrr(dual_side, rev)


# ------------------------------------------------------- block decomposition


@dataclass(frozen=True)
class BlockDecomposition:
    Q: RingMatrix
    QA: RingMatrix
    block_sizes: tuple[int, ...]
    profile: SfrrProfile


def sfrr_block_decompose(a: RingMatrix, profile: SfrrProfile) -> BlockDecomposition:
    """Block lower triangular Q making QA block upper triangular with identity
    diagonal blocks; row i_h of QA is (0..0, 1, units...).

    Invert the leading diagonal block, clear the rows below it, move on.
    """
    if profile.direction != "forward":
        raise SpecError("block decomposition needs a forward profile")
    require_sfrr(a, profile)
    ring = a.ring
    m = a.m
    cur = a.data.copy()
    q = RingMatrix.identity(ring, m).data.copy()
    idx = profile.indices
    for h in range(1, len(idx)):
        r0, r1 = idx[h - 1], idx[h]
        try:
            qh = inverse(RingMatrix(ring, cur[r0:r1, r0:r1])).data
        except Singular as exc:
            raise ProfileNotSfrr(r1, "forward") from exc
        cur[r0:r1] = matmul(ring, qh, cur[r0:r1])
        q[r0:r1] = matmul(ring, qh, q[r0:r1])
        if r1 < m:
            coef = cur[r1:, r0:r1].copy()
            cur[r1:] = ring.add_table[cur[r1:], ring.neg_table[matmul(ring, coef, cur[r0:r1])]]
            q[r1:] = ring.add_table[q[r1:], ring.neg_table[matmul(ring, coef, q[r0:r1])]]
    dec = BlockDecomposition(
        RingMatrix(ring, q),
        RingMatrix(ring, cur),
        tuple(b - a_ for a_, b in zip(idx, idx[1:])),
        profile,
    )
    problems = block_decomposition_problems(a, dec)
    if problems:
        raise AssertionError("; ".join(problems))
    return dec


def block_decomposition_problems(a: RingMatrix, dec: BlockDecomposition) -> list[str]:
    """Every way ``dec`` fails its contract (empty list when valid)."""
    ring = a.ring
    out = []
    Q, QA = dec.Q.data, dec.QA.data
    idx = dec.profile.indices
    if (dec.Q @ a) != dec.QA:
        out.append("QA != Q @ A")
    if not is_nonsingular(dec.Q):
        out.append("Q is singular")
    for h in range(1, len(idx)):
        r0, r1 = idx[h - 1], idx[h]
        if Q[r0:r1, r1:].any():
            out.append(f"Q has nonzero entries above block {h}")
        if not is_nonsingular(RingMatrix(ring, Q[r0:r1, r0:r1])):
            out.append(f"diagonal block {h} of Q is singular")
        if QA[r0:r1, :r0].any():
            out.append(f"QA has nonzero entries left of block {h}")
        if RingMatrix(ring, QA[r0:r1, r0:r1]) != RingMatrix.identity(ring, r1 - r0):
            out.append(f"diagonal block {h} of QA is not the identity")
        row = QA[r1 - 1]
        if row[: r1 - 1].any() or row[r1 - 1] != ring.one:
            out.append(f"row {r1} of QA does not start (0,...,0,1)")
        if not ring.unit_mask[row[r1:]].all():
            out.append(f"row {r1} of QA has a non-unit after its pivot")
    return out


# ------------------------------------------------------------------- search

PREDICATES = ("two-way", "qo", "nsc")


def parse_predicate(text: str):
    """``two-way=<m'>`` / ``two_way_sfrr{m'}`` / ``qo`` / ``nsc`` -> (name, arg)."""
    t = text.strip()
    for prefix in ("two-way=", "two_way=", "two_way_sfrr="):
        if t.startswith(prefix):
            return "two-way", int(t[len(prefix):])
    if t.startswith("two_way_sfrr{") and t.endswith("}"):
        return "two-way", int(t[len("two_way_sfrr{"):-1])
    if t in ("qo", "quasi_orthogonal"):
        return "qo", None
    if t == "nsc":
        return "nsc", None
    raise SpecError(f"unknown search predicate {text!r}")


def _candidates(q: int, m: int, l: int, start: int, stop: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    cells = m * l
    places = q ** np.arange(cells - 1, -1, -1, dtype=np.int64)  # first entry most significant
    return ((idx[:, None] // places[None, :]) % q).reshape(-1, m, l)


def _search_chunk(args):
    spec, m, l, pred, arg, start, stop = args
    ring = make_ring(spec, max_order=1 << 30)
    data = _candidates(ring.order, m, l, start, stop)
    if pred == "two-way":
        ok = batch_two_way(ring, data, arg)
    elif pred == "qo":
        ok = batch_quasi_orthogonal(ring, data)
    else:
        ok = batch_nsc(ring, data)
    return data[ok]


def search(
    ring: Ring,
    m: int,
    l: int,
    predicate: str,
    workers: int | None = None,
    chunk: int = 1 << 15,
    up_to_block_basis: bool = False,
) -> list[RingMatrix]:
    """Every m x l matrix satisfying ``predicate``, in lexicographic order of
    canonical entry indices. Output does not depend on ``workers``.

    With ``up_to_block_basis`` (two-way predicate only) matrices that differ by
    an invertible block-diagonal row transform are merged; see
    :func:`block_basis_classes`.
    """
    pred, arg = parse_predicate(predicate)
    total = ring.order ** (m * l)
    if total > config.limits.max_search:
        raise SearchSpaceTooLarge(f"{total} candidate matrices exceeds cap {config.limits.max_search}")
    if pred == "two-way" and not 1 <= arg < m:
        raise SpecError(f"m' must satisfy 1 <= m' < {m}")
    workers = config.limits.workers if workers is None else workers
    jobs = [(ring.spec, m, l, pred, arg, s, min(s + chunk, total)) for s in range(0, total, chunk)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_search_chunk, jobs))
    else:
        parts = [_search_chunk(j) for j in jobs]
    found = [RingMatrix(ring, d) for part in parts for d in part]
    if up_to_block_basis:
        if pred != "two-way":
            raise SpecError("block-basis grouping only applies to the two-way predicate")
        return [cls[0] for cls in block_basis_classes(found, arg)]
    return found


def _is_systematic(block: np.ndarray, one: int) -> bool:
    k = block.shape[0]
    eye = np.zeros((k, k), dtype=np.int64)
    eye[np.arange(k), np.arange(k)] = one
    return np.array_equal(block[:, :k], eye)


def block_basis_classes(mats: list[RingMatrix], mprime: int) -> list[list[RingMatrix]]:
    """Group FRR matrices by the pair (row code of rows 1..m', row code of the rest).

    Two FRR matrices share both row codes exactly when one is Q times the other
    for an invertible block-diagonal Q, and such a Q leaves every code
    [C' x m', C'' x m''] A unchanged. Each class is listed with its systematic
    member first (both blocks start with an identity) when there is one,
    otherwise with its lexicographically first member. Classes are ordered by
    their first member in search order.
    """
    from .code import span

    classes: dict = {}
    for a in mats:
        top = span(a.ring, list(a.data[:mprime]), a.l).keys
        bottom = span(a.ring, list(a.data[mprime:]), a.l).keys
        classes.setdefault((top.tobytes(), bottom.tobytes()), []).append(a)
    out = []
    for members in classes.values():
        sys_ = [a for a in members if _is_systematic(a.data[:mprime], a.ring.one) and _is_systematic(a.data[mprime:], a.ring.one)]
        if sys_:
            members = sys_[:1] + [a for a in members if a is not sys_[0]]
        out.append(members)
    return out


__all__ = [
    "SfrrProfile",
    "ProfileSets",
    "BlockDecomposition",
    "is_nsc",
    "is_reversely_nsc",
    "is_sfrr",
    "sfrr_failure",
    "require_sfrr",
    "find_profiles",
    "is_two_way_sfrr",
    "is_quasi_orthogonal",
    "has_partitioned_orthogonal",
    "check_inverse_transpose_profile",
    "sfrr_block_decompose",
    "block_decomposition_problems",
    "search",
    "block_basis_classes",
    "parse_predicate",
    "NotFrr",
]

"""Exact linear algebra over a finite commutative ring.

FRR certification works one local component at a time: over a local ring the
non-units form the maximal ideal, so a full-row-rank row always contains a
unit to pivot on. Column operations bring ``A`` to ``(I | 0)`` while tracking
the invertible ``P`` with ``A P = (I | 0)``; the right inverse and the kernel
basis are read off ``P`` and glued back together through the CRT lift.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import config
from .errors import NotFrr, NotSquare, ShapeMismatch, Singular, SpecError
from .ring import Ring, RingElement, make_ring, spec_from_json, spec_to_json


class RingMatrix:
    """Dense matrix of element indices over one ring."""

    __slots__ = ("ring", "data")

    def __init__(self, ring: Ring, data):
        arr = np.array(data, dtype=np.int64)
        if arr.ndim != 2:
            raise ShapeMismatch(f"matrix data must be 2-D, got shape {arr.shape}")
        if arr.size and (arr.min() < 0 or arr.max() >= ring.order):
            raise SpecError("matrix entry outside the ring")
        arr.setflags(write=False)
        self.ring = ring
        self.data = arr

    # -- constructors
    @classmethod
    def from_literals(cls, ring: Ring, rows) -> "RingMatrix":
        rows = [list(r) for r in rows]
        if rows and len({len(r) for r in rows}) != 1:
            raise ShapeMismatch("ragged matrix rows")
        return cls(ring, [[ring.parse(x) for x in r] for r in rows] if rows else np.zeros((0, 0)))

    @classmethod
    def identity(cls, ring: Ring, m: int) -> "RingMatrix":
        d = np.zeros((m, m), dtype=np.int64)
        d[np.arange(m), np.arange(m)] = ring.one
        return cls(ring, d)

    @classmethod
    def zeros(cls, ring: Ring, m: int, l: int) -> "RingMatrix":
        return cls(ring, np.zeros((m, l), dtype=np.int64))

    @classmethod
    def from_json(cls, obj, max_ring_order=None) -> "RingMatrix":
        try:
            ring = make_ring(spec_from_json(obj["ring"]), max_ring_order)
            return cls.from_literals(ring, obj["rows"])
        except (KeyError, TypeError) as exc:
            raise SpecError(f"bad matrix JSON: {exc}") from exc

    def to_json(self) -> dict:
        return {"ring": spec_to_json(self.ring.spec), "rows": self.to_literals()}

    def to_literals(self):
        return [[self.ring.literal(x) for x in row] for row in self.data]

    # -- shape
    @property
    def shape(self):
        return self.data.shape

    @property
    def m(self) -> int:
        return self.data.shape[0]

    @property
    def l(self) -> int:
        return self.data.shape[1]

    @property
    def T(self) -> "RingMatrix":
        return RingMatrix(self.ring, self.data.T)

    def rows(self, start, stop=None) -> "RingMatrix":
        return RingMatrix(self.ring, self.data[start:stop])

    def cols(self, idx) -> "RingMatrix":
        return RingMatrix(self.ring, self.data[:, list(idx)])

    def __getitem__(self, key):
        return RingElement(self.ring, int(self.data[key]))

    # -- arithmetic
    def _check(self, other):
        if not isinstance(other, RingMatrix) or other.ring != self.ring:
            raise ShapeMismatch("matrices over different rings")

    def __matmul__(self, other: "RingMatrix") -> "RingMatrix":
        self._check(other)
        if self.l != other.m:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        return RingMatrix(self.ring, matmul(self.ring, self.data, other.data))

    def __add__(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot add {self.shape} and {other.shape}")
        return RingMatrix(self.ring, self.ring.add_table[self.data, other.data])

    def __neg__(self):
        return RingMatrix(self.ring, self.ring.neg_table[self.data])

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return (
            isinstance(other, RingMatrix)
            and other.ring == self.ring
            and other.shape == self.shape
            and np.array_equal(other.data, self.data)
        )

    __hash__ = None

    def __repr__(self):
        body = "; ".join(" ".join(self.ring.format(x) for x in row) for row in self.data)
        return f"RingMatrix[{self.ring.name}]({body})"

    def pretty(self) -> str:
        cells = [[self.ring.format(x) for x in row] for row in self.data]
        w = max((len(c) for row in cells for c in row), default=1)
        return "\n".join(" ".join(c.rjust(w) for c in row) for row in cells)


def matmul(ring: Ring, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Index-array matrix product; works batched over leading axes of ``a``."""
    if a.shape[-1] == 0:
        return np.zeros(a.shape[:-1] + (b.shape[-1],), dtype=np.int64)
    prod = ring.mul_table[a[..., :, :, None], b[..., None, :, :]]
    return ring.sum(prod, axis=prod.ndim - 2)


def hstack(*ms: RingMatrix) -> RingMatrix:
    return RingMatrix(ms[0].ring, np.concatenate([m.data for m in ms], axis=1))


def vstack(*ms: RingMatrix) -> RingMatrix:
    return RingMatrix(ms[0].ring, np.concatenate([m.data for m in ms], axis=0))


# -------------------------------------------------------------- components


def split_matrix(a: RingMatrix) -> list[RingMatrix]:
    ring = a.ring
    return [RingMatrix(c, ring.projections[k][a.data]) for k, (c, _) in enumerate(ring.decompose())]


def join_matrices(ring: Ring, parts) -> RingMatrix:
    return RingMatrix(ring, ring.lift([p.data for p in parts]))


# ------------------------------------------------------------ FRR machinery


@dataclass(frozen=True)
class FrrCertificate:
    right_inverse: RingMatrix  # B, l x m, A B = I
    kernel_basis: RingMatrix  # G, (l-m) x l, rows freely generate {x : A x = 0}


def _annihilator(ring: Ring, values) -> int:
    """Smallest nonzero x with x * v = 0 for every v in ``values``."""
    vals = np.asarray(list(values), dtype=np.int64)
    for x in range(1, ring.order):
        if not vals.size or (ring.mul_table[x, vals] == 0).all():
            return x
    raise AssertionError("no annihilator: a row with no unit entry over a local ring")  # pragma: no cover


def _local_reduce(ring: Ring, a: np.ndarray):
    """Column-reduce ``a`` over a local ring.

    Returns ``P`` with ``a P = (I | 0)``; on failure returns ``(None, b)`` where
    ``b`` is a nonzero row with ``b a = 0``.
    """
    m, l = a.shape
    cur = [[int(x) for x in row] for row in a]
    P = [[ring.one if i == j else 0 for j in range(l)] for i in range(l)]
    mul, add, neg = ring.mul_table, ring.add_table, ring.neg_table

    def col_swap(M, i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]

    def col_scale(M, j, u):
        for row in M:
            row[j] = int(mul[row[j], u])

    def col_axpy(M, dst, src, c):  # col_dst -= c * col_src
        nc = int(neg[c])
        for row in M:
            row[dst] = int(add[row[dst], mul[nc, row[src]]])

    for i in range(m):
        row = cur[i]
        piv = next((j for j in range(i, l) if ring.unit_mask[row[j]]), None)
        if piv is None:
            x = _annihilator(ring, row[i:])
            b = [0] * m
            b[i] = x
            for r in range(i):
                b[r] = int(neg[mul[x, row[r]]])
            return None, b
        if piv != i:
            col_swap(cur, i, piv)
            col_swap(P, i, piv)
        u = ring.inv(cur[i][i])
        col_scale(cur, i, u)
        col_scale(P, i, u)
        for j in range(l):
            if j != i and cur[i][j]:
                c = cur[i][j]
                col_axpy(cur, j, i, c)
                col_axpy(P, j, i, c)
    return np.array(P, dtype=np.int64).reshape(l, l), None


def frr_certificate(a: RingMatrix) -> FrrCertificate:
    """Right inverse and kernel basis of a full-row-rank matrix.

    Raises :class:`NotFrr` (with a lifted dependency witness) otherwise.
    """
    ring = a.ring
    m, l = a.shape
    bs, gs = [], []
    for k, part in enumerate(split_matrix(a)):
        P, witness = _local_reduce(part.ring, part.data)
        if P is None:
            comps = [np.zeros(m, dtype=np.int64) for _ in range(ring.num_components)]
            comps[k] = np.asarray(witness, dtype=np.int64)
            lifted = [int(x) for x in ring.lift(comps)]
            raise NotFrr(k, lifted)
        bs.append(RingMatrix(part.ring, P[:, :m]))
        gs.append(RingMatrix(part.ring, P[:, m:].T))
    return FrrCertificate(join_matrices(ring, bs), join_matrices(ring, gs))


def is_frr(a: RingMatrix) -> bool:
    try:
        frr_certificate(a)
    except NotFrr:
        return False
    return True


def kernel_basis(a: RingMatrix) -> RingMatrix:
    return frr_certificate(a).kernel_basis


def right_inverse(a: RingMatrix) -> RingMatrix:
    return frr_certificate(a).right_inverse


def extend_to_invertible(a: RingMatrix):
    """Return ``(Ã, B, B')``: Ã is l x l invertible with ``a`` as its first m rows
    and ``Ã^{-1} = (B | B')``."""
    cert = frr_certificate(a)
    if a.m == a.l:
        return a, cert.right_inverse, RingMatrix.zeros(a.ring, a.l, 0)
    btil = hstack(cert.right_inverse, cert.kernel_basis.T)
    return inverse(btil), cert.right_inverse, cert.kernel_basis.T


# ------------------------------------------------------------ determinants


def prefix_minors(ring: Ring, data: np.ndarray, max_rows: int | None = None):
    """All minors on the leading rows, batched.

    ``data`` has shape ``(N, m, l)``. Returns ``minors[t]``: a dict mapping a
    column bitmask with t bits to the ``(N,)`` array of determinants of the
    t x t submatrix on rows ``0..t-1`` and those columns. Laplace expansion
    along the last row, so no division is needed.
    """
    data = np.asarray(data, dtype=np.int64)
    N, m, l = data.shape
    top = m if max_rows is None else min(m, max_rows)
    minors = [{0: np.full(N, ring.one, dtype=np.int64)}]
    neg = ring.neg_table
    for t in range(1, top + 1):
        layer = {}
        row = data[:, t - 1, :]
        for mask_prev, det_prev in minors[t - 1].items():
            for j in range(l):
                bit = 1 << j
                if mask_prev & bit:
                    continue
                mask = mask_prev | bit
                # position of column j inside the new column set
                pos = bin(mask & (bit - 1)).count("1")
                term = ring.mul_table[row[:, j], det_prev]
                if (t - 1 + pos) % 2:
                    term = neg[term]
                if mask in layer:
                    layer[mask] = ring.add_table[layer[mask], term]
                else:
                    layer[mask] = term
        minors.append(layer)
    return minors


def determinant(a: RingMatrix) -> RingElement:
    if a.m != a.l:
        raise NotSquare(f"determinant of a {a.m}x{a.l} matrix")
    if a.m > config.limits.max_det_size:
        raise ShapeMismatch(f"determinant size {a.m} exceeds cap {config.limits.max_det_size}")
    if a.m == 0:
        return RingElement(a.ring, a.ring.one)
    minors = prefix_minors(a.ring, a.data[None])
    return RingElement(a.ring, int(minors[a.m][(1 << a.m) - 1][0]))


def is_nonsingular(a: RingMatrix) -> bool:
    return determinant(a).is_unit()


def inverse(a: RingMatrix) -> RingMatrix:
    if a.m != a.l:
        raise NotSquare(f"inverse of a {a.m}x{a.l} matrix")
    try:
        b = frr_certificate(a).right_inverse
    except NotFrr as exc:
        raise Singular("matrix is not invertible") from exc
    return b

"""Codes over a finite ring: enumeration, duals, distances and MDS tests.

Codewords are rows of element indices. A code is either *linear* (given by
generators, or by a codeword set known to be a submodule) or *explicit* (an
arbitrary non-empty set of words). The codeword set is materialised lazily and
cached, together with the minimum distance per weight table.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import config
from .errors import EnumerationCapExceeded, IndexOutOfRange, LengthMismatch, ShapeMismatch, SpecError
from .matrix import RingMatrix, frr_certificate, join_matrices
from .ring import Ring, WeightTable, make_ring, spec_from_json, spec_to_json


# ----------------------------------------------------------------- row keys


def row_keys(words: np.ndarray, q: int) -> np.ndarray:
    """Injective per-row keys, suitable for sorting, ``np.unique`` and ``np.isin``."""
    words = np.asarray(words)
    n = words.shape[1]
    if n == 0:
        return np.zeros(words.shape[0], dtype=np.int64)
    if n * math.log2(q) <= 62:
        places = q ** np.arange(n, dtype=np.int64)
        return words.astype(np.int64) @ places
    raw = np.ascontiguousarray(words.astype(np.uint16))
    return np.array([r.tobytes() for r in raw], dtype=object)


def _unique_rows(words: np.ndarray, q: int):
    keys = row_keys(words, q)
    ukeys, idx = np.unique(keys, return_index=True)
    return words[idx], ukeys


def _cap(n_words: int, what: str):
    cap = config.limits.max_codewords
    if n_words > cap:
        raise EnumerationCapExceeded(f"{what}: {n_words} words exceeds cap {cap}")


def _extend_span(ring: Ring, words, keys, g, what="span"):
    """Add the submodule generated by ``g`` to the module ``words``."""
    q = ring.order
    if np.isin(row_keys(g[None, :], q), keys)[0]:
        return words, keys
    mults, _ = _unique_rows(ring.mul_table[np.arange(q)[:, None], g[None, :]], q)
    _cap(len(words) * len(mults), what)
    new = ring.add_small[words[:, None, :], mults[None, :, :]].reshape(-1, words.shape[1])
    return _unique_rows(new, q)


def _span_words(ring: Ring, gens, n: int):
    words = np.zeros((1, n), dtype=ring.dtype)
    keys = row_keys(words, ring.order)
    for g in gens:
        words, keys = _extend_span(ring, words, keys, np.asarray(g, dtype=np.int64))
    return words, keys


def _greedy_generators(ring: Ring, candidates, n: int):
    """Generators picked from ``candidates``, then pruned to an irredundant set."""
    q = ring.order
    words = np.zeros((1, n), dtype=ring.dtype)
    keys = row_keys(words, q)
    seen = set(keys.tolist())
    chosen = []
    cands = np.asarray(candidates, dtype=np.int64).reshape(-1, n)
    for c, key in zip(cands, row_keys(cands, q).tolist()):
        if key not in seen:
            chosen.append(c)
            words, keys = _extend_span(ring, words, keys, c)
            seen = set(keys.tolist())
    size = len(words)
    i = 0
    while i < len(chosen):
        rest = chosen[:i] + chosen[i + 1:]
        if len(_span_words(ring, rest, n)[0]) == size:
            chosen = rest
        else:
            i += 1
    return chosen, words, keys


# --------------------------------------------------------------------- Code


class Code:
    """A code of length ``n`` over ``ring``.

    Build with :func:`span`, :meth:`Code.explicit`, or the helpers below
    rather than calling the constructor directly.
    """

    def __init__(self, ring: Ring, length: int, *, generators=None, words=None, linear: bool = True):
        self.ring = ring
        self.length = int(length)
        self.is_linear = bool(linear)
        self._gens = None if generators is None else np.asarray(generators, dtype=np.int64).reshape(-1, self.length)
        self._words = None
        self._keys = None
        if words is not None:
            w = np.asarray(words).reshape(-1, self.length)
            if w.size and (w.min() < 0 or w.max() >= ring.order):
                raise SpecError("codeword entry outside the ring")
            if not len(w):
                raise SpecError("a code must be non-empty")
            self._words, self._keys = _unique_rows(w.astype(ring.dtype), ring.order)
        if self._gens is None and self._words is None:
            self._gens = np.zeros((0, self.length), dtype=np.int64)
        self._dist: dict = {}

    # -- constructors
    @classmethod
    def explicit(cls, ring: Ring, words, length=None) -> "Code":
        w = np.asarray(words, dtype=np.int64)
        n = w.shape[1] if length is None else length
        return cls(ring, n, words=w.reshape(-1, n), linear=False)

    @classmethod
    def from_literals(cls, ring: Ring, generators, length=None) -> "Code":
        gens = [[ring.parse(x) for x in g] for g in generators]
        return span(ring, gens, length)

    @classmethod
    def from_json(cls, obj, max_ring_order=None) -> "Code":
        try:
            ring = make_ring(spec_from_json(obj["ring"]), max_ring_order)
            n = int(obj["length"])
            if "generators" in obj:
                gens = [[ring.parse(x) for x in g] for g in obj["generators"]]
                if any(len(g) != n for g in gens):
                    raise LengthMismatch("generator length differs from declared length")
                return span(ring, gens, n)
            words = [[ring.parse(x) for x in w] for w in obj["codewords"]]
            if any(len(w) != n for w in words):
                raise LengthMismatch("codeword length differs from declared length")
            return cls.explicit(ring, np.asarray(words, dtype=np.int64).reshape(-1, n), n)
        except (KeyError, TypeError) as exc:
            raise SpecError(f"bad code JSON: {exc}") from exc

    def to_json(self) -> dict:
        lit = lambda rows: [[self.ring.literal(x) for x in r] for r in rows]
        out = {"ring": spec_to_json(self.ring.spec), "length": self.length}
        if self.is_linear:
            out["generators"] = lit(self.generators)
        else:
            out["codewords"] = lit(self.words)
        return out

    # -- materialisation
    @property
    def words(self) -> np.ndarray:
        if self._words is None:
            self._words, self._keys = _span_words(self.ring, self._gens, self.length)
        return self._words

    @property
    def keys(self) -> np.ndarray:
        self.words
        return self._keys

    @property
    def generators(self) -> np.ndarray:
        """Generators of the linear span of the code."""
        if self._gens is None:
            gens, _, _ = _greedy_generators(self.ring, self.words, self.length)
            self._gens = np.asarray(gens, dtype=np.int64).reshape(-1, self.length)
        return self._gens

    @property
    def cardinality(self) -> int:
        return len(self.words)

    def __len__(self):
        return self.cardinality

    @property
    def is_zero(self) -> bool:
        return self.cardinality == 1 and not self.words.any()

    def contains(self, word) -> bool:
        w = np.asarray(word, dtype=np.int64).reshape(1, self.length)
        return bool(np.isin(row_keys(w, self.ring.order), self.keys)[0])

    def issubset(self, other: "Code") -> bool:
        _same_space(self, other)
        return bool(np.isin(self.keys, other.keys).all())

    def __eq__(self, other):
        if not isinstance(other, Code):
            return NotImplemented
        return (
            other.ring == self.ring
            and other.length == self.length
            and other.cardinality == self.cardinality
            and np.array_equal(other.keys, self.keys)
        )

    __hash__ = None

    def __repr__(self):
        kind = "linear" if self.is_linear else "explicit"
        size = self.cardinality if self._words is not None else "?"
        return f"Code({kind}, n={self.length}, |C|={size}, over {self.ring.name})"

    # -- distances
    def weights(self, weight: WeightTable | None = None) -> np.ndarray:
        if weight is None:
            return (self.words != 0).sum(axis=1)
        return weight.array[self.words.astype(np.int64)].sum(axis=1)

    def min_distance(self, weight: WeightTable | None = None) -> int:
        key = None if weight is None or weight.is_hamming else weight.weights
        if key not in self._dist:
            self._dist[key] = _min_distance(self, None if key is None else weight)
        return self._dist[key]

    @property
    def d_H(self) -> int:
        return self.min_distance()

    def linear_span(self) -> "Code":
        if self.is_linear:
            return self
        return Code(self.ring, self.length, generators=self.generators)

    def dual(self) -> "Code":
        return dual(self)


def _min_distance(code: Code, weight):
    n = code.length
    words = code.words
    if len(words) <= 1:
        return n + 1
    if code.is_linear:
        w = code.weights(weight)
        return int(w[w > 0].min())
    ring = code.ring
    N = len(words)
    if N * N > config.limits.max_pairs:
        raise EnumerationCapExceeded(f"pairwise distance over {N} codewords")
    warr = (np.arange(ring.order) != 0).astype(np.int64) if weight is None else weight.array
    w64 = words.astype(np.int64)
    neg = ring.neg_table[w64]
    best = n * int(warr.max()) + 1
    chunk = max(1, (1 << 22) // max(N * n, 1))
    for s in range(0, N, chunk):
        diff = ring.add_table[w64[s:s + chunk, None, :], neg[None, :, :]]
        d = warr[diff].sum(axis=2)
        for i in range(d.shape[0]):
            d[i, s + i] = best  # c == c'
        best = min(best, int(d.min()))
    return best


def _same_space(a: Code, b: Code):
    if a.ring != b.ring:
        raise ShapeMismatch("codes over different rings")
    if a.length != b.length:
        raise LengthMismatch(f"lengths {a.length} and {b.length} differ")


# --------------------------------------------------------------- operations


def span(ring: Ring, generators, length: int | None = None) -> Code:
    gens = [np.asarray(g, dtype=np.int64) for g in (generators.data if isinstance(generators, RingMatrix) else generators)]
    if length is None:
        if not gens:
            raise LengthMismatch("cannot infer length from an empty generator list")
        length = len(gens[0])
    if any(g.shape != (length,) for g in gens):
        raise LengthMismatch("generators of unequal length")
    if any((g < 0).any() or (g >= ring.order).any() for g in gens):
        raise SpecError("generator entry outside the ring")
    code = Code(ring, length, generators=np.array(gens, dtype=np.int64).reshape(-1, length))
    code.words
    return code


def zero_code(ring: Ring, n: int) -> Code:
    return Code(ring, n, generators=np.zeros((0, n), dtype=np.int64))


def full_space(ring: Ring, n: int) -> Code:
    return Code(ring, n, generators=RingMatrix.identity(ring, n).data)


def from_words(ring: Ring, n: int, words, linear=True) -> Code:
    return Code(ring, n, words=words, linear=linear)


def min_distance(code: Code, weight: WeightTable | None = None) -> int:
    return code.min_distance(weight)


def _dual_words(ring: Ring, H: np.ndarray, n: int):
    """All x with H x = 0, by coordinatewise extension with reachability pruning.

    A partial prefix survives only if the remaining coordinates can still cancel
    its syndrome, i.e. the syndrome lies in the module spanned by the
    remaining columns of H.
    """
    q = ring.order
    g = H.shape[0]
    if g == 0:
        _cap(q**n, "dual")
        return full_space(ring, n).words
    reach_keys = [None] * (n + 1)
    words = np.zeros((1, g), dtype=ring.dtype)
    keys = row_keys(words, q)
    reach_keys[n] = keys
    for k in reversed(range(n)):
        words, keys = _extend_span(ring, words, keys, H[:, k], "dual syndromes")
        reach_keys[k] = keys
    X = np.zeros((1, 0), dtype=np.int64)
    S = np.zeros((1, g), dtype=np.int64)
    rs = np.arange(q)
    for k in range(n):
        rc = ring.mul_table[rs[:, None], H[:, k][None, :]]  # (q, g)
        _cap(len(X) * q, "dual frontier")
        S2 = ring.add_table[S[:, None, :], rc[None, :, :]].reshape(-1, g)
        X2 = np.concatenate([np.repeat(X, q, axis=0), np.tile(rs, len(X))[:, None]], axis=1)
        keep = np.isin(row_keys(S2, q), reach_keys[k + 1])
        X, S = X2[keep], S2[keep]
    return X


def dual(code: Code) -> Code:
    """Euclidean dual of the linear span of ``code``."""
    ring, n = code.ring, code.length
    gens, _, _ = _greedy_generators(ring, code.generators, n)
    H = np.asarray(gens, dtype=np.int64).reshape(-1, n)
    words = _dual_words(ring, H, n)
    return Code(ring, n, words=words, linear=True)


def is_mds(code: Code) -> bool:
    if code.is_zero:
        return True
    d = code.min_distance()
    return code.cardinality == code.ring.order ** (code.length - d + 1)


def row_code(a: RingMatrix, k: int, direction: str = "prefix") -> Code:
    """``U_A(k)`` (first k rows) for ``prefix``, ``L_A(k)`` (rows k..m, 1-based) for ``suffix``."""
    m = a.m
    if direction == "prefix":
        if not 0 <= k <= m:
            raise IndexOutOfRange(f"prefix index {k} outside 0..{m}")
        rows = a.data[:k]
    elif direction == "suffix":
        if not 1 <= k <= m + 1:
            raise IndexOutOfRange(f"suffix index {k} outside 1..{m + 1}")
        rows = a.data[k - 1:]
    else:
        raise ValueError(f"direction must be prefix or suffix, not {direction!r}")
    return span(a.ring, list(rows), a.l)


def code_sum(c: Code, d: Code) -> Code:
    _same_space(c, d)
    gens = np.concatenate([c.generators, d.generators], axis=0)
    return span(c.ring, list(gens), c.length)


def code_intersection(c: Code, d: Code) -> Code:
    _same_space(c, d)
    c, d = c.linear_span(), d.linear_span()
    mask = np.isin(c.keys, d.keys)
    return Code(c.ring, c.length, words=c.words[mask], linear=True)


def inner_product(ring: Ring, u, v) -> int:
    """Euclidean inner product of equal-shape vectors or matrices (index arrays)."""
    u, v = np.asarray(u, dtype=np.int64), np.asarray(v, dtype=np.int64)
    if u.shape != v.shape:
        raise ShapeMismatch(f"shapes {u.shape} and {v.shape} differ")
    return int(ring.sum(ring.mul_table[u, v].ravel()))


def trace_inner_product(ring: Ring, u, v) -> int:
    """Same value as :func:`inner_product`, computed as tr(u v^T)."""
    u, v = np.atleast_2d(u), np.atleast_2d(v)
    prod = (RingMatrix(ring, u) @ RingMatrix(ring, v).T).data
    return int(ring.sum(np.diagonal(prod)))


def _all_inner_products_zero(ring: Ring, a: np.ndarray, b: np.ndarray) -> bool:
    a, b = a.astype(np.int64), b.astype(np.int64)
    n = a.shape[1]
    chunk = max(1, (1 << 22) // max(len(b) * n, 1))
    for s in range(0, len(a), chunk):
        ip = ring.sum(ring.mul_table[a[s:s + chunk, None, :], b[None, :, :]], axis=2)
        if ip.any():
            return False
    return True


def is_self_orthogonal(code: Code, exhaustive: bool | None = None) -> bool:
    """C ⊆ C⊥. With ``exhaustive`` every pair of codewords is checked; otherwise
    generator pairs suffice because the inner product is bilinear."""
    if exhaustive is None:
        exhaustive = code.cardinality**2 <= config.limits.max_pairs
    if exhaustive:
        return _all_inner_products_zero(code.ring, code.words, code.words)
    g = code.generators
    return _all_inner_products_zero(code.ring, g, g)


def is_self_dual(code: Code, exhaustive: bool | None = None) -> bool:
    if not code.is_linear:
        return False
    return code.cardinality**2 == code.ring.order**code.length and is_self_orthogonal(code, exhaustive)


def is_type_ii(code: Code, exhaustive: bool | None = None) -> bool:
    """Binary self-dual with every weight divisible by 4 (full weight scan)."""
    if code.ring.order != 2:
        return False
    return is_self_dual(code, exhaustive) and bool((code.weights() % 4 == 0).all())


# ---------------------------------------------------------------- freeness


def _component_bases(code: Code):
    ring = code.ring
    gens = code.generators
    out = []
    for k, (comp, _) in enumerate(ring.decompose()):
        pg = ring.projections[k][gens] if len(gens) else np.zeros((0, code.length), dtype=np.int64)
        chosen, words, _ = _greedy_generators(comp, pg, code.length)
        out.append((comp, chosen, len(words)))
    return out


def free_rank(code: Code) -> int | None:
    """Rank if the linear span is a free module, else ``None``.

    Over a local ring an irredundant generating set is minimal, and the module
    is free exactly when its size is |R_k|^(number of generators).
    """
    ranks = set()
    for comp, chosen, size in _component_bases(code):
        if comp.order ** len(chosen) != size:
            return None
        ranks.add(len(chosen))
    return ranks.pop() if len(ranks) == 1 else None


def free_basis(code: Code) -> RingMatrix | None:
    """Rows forming a basis of a free code (FRR by construction), or ``None``."""
    parts = _component_bases(code)
    r = free_rank(code)
    if r is None:
        return None
    mats = [RingMatrix(comp, np.asarray(chosen, dtype=np.int64).reshape(r, code.length)) for comp, chosen, _ in parts]
    basis = join_matrices(code.ring, mats)
    if r:
        frr_certificate(basis)
    return basis


@dataclass(frozen=True)
class CodeParams:
    n: int
    size: int
    d_H: int
    is_free: bool
    rank: int | None
    is_mds: bool

    def label(self, q: int) -> str:
        """``[n,k,d]`` for free codes, ``(n,|C|,d)`` otherwise."""
        if self.rank is not None:
            return f"[{self.n},{self.rank},{self.d_H}]"
        return f"({self.n},{self.size},{self.d_H})"


def params(code: Code) -> CodeParams:
    r = free_rank(code.linear_span()) if code.is_linear else None
    return CodeParams(code.length, code.cardinality, code.min_distance(), r is not None, r, is_mds(code))

"""Finite commutative Frobenius rings and their decomposition into local pieces.

Rings come from a small spec tower: ``ZMod(n)``, ``PolyQuot(p, modulus)`` (a
quotient of F_p[x]) and finite ``Product``s. Every such ring is Frobenius, so
no runtime test is made.

Elements are plain integers: the canonical index into the ring's enumeration.
Each index is also a mixed-radix digit vector under which addition is
digitwise modular addition. That makes vectorised sums over numpy arrays
cheap regardless of the ring kind. Multiplication goes through a full table.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Sequence, Union

import numpy as np

from . import config
from .errors import (
    ComponentOutOfRange,
    DegenerateSpec,
    NonPrimeModulus,
    NotAUnit,
    RingTooLarge,
    SpecError,
)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _prime_powers(n: int) -> list[tuple[int, int]]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            a = 0
            while n % d == 0:
                n //= d
                a += 1
            out.append((d, a))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


# ---------------------------------------------------------------- polynomials
# Coefficient lists over F_p, lowest degree first, no trailing zeros.


def _ptrim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _ptrim(out)


def _pdivmod(a, b, p):
    """Division by a monic polynomial ``b``."""
    a = _ptrim(a)
    db = len(b) - 1
    q = [0] * max(len(a) - db, 0)
    a = list(a)
    while len(a) - 1 >= db and a:
        shift = len(a) - 1 - db
        c = a[-1]
        q[shift] = c
        for i, y in enumerate(b):
            a[shift + i] = (a[shift + i] - c * y) % p
        a = _ptrim(a)
    return _ptrim(q), a


def _monic_polys(degree, p):
    for tail in itertools.product(range(p), repeat=degree):
        yield list(tail) + [1]


def factor_poly(f, p) -> list[tuple[tuple[int, ...], int]]:
    """Factor a monic polynomial over F_p into monic irreducibles (brute-force trial division).

    Returns ``[(factor, multiplicity), ...]`` in order of discovery (by degree,
    then by coefficient tuple).
    """
    f = _ptrim(f)
    out = []
    d = 1
    while len(f) - 1 >= 1:
        if 2 * d > len(f) - 1:
            out.append((tuple(f), 1))
            break
        for g in _monic_polys(d, p):
            a = 0
            while True:
                q, r = _pdivmod(f, g, p)
                if r:
                    break
                f = q
                a += 1
            if a:
                out.append((tuple(g), a))
        d += 1
    merged: dict[tuple[int, ...], int] = {}
    for g, a in out:
        merged[g] = merged.get(g, 0) + a
    return sorted(merged.items(), key=lambda kv: (len(kv[0]), kv[0][::-1]))


# ----------------------------------------------------------------------- specs


@dataclass(frozen=True)
class ZMod:
    n: int

    def __post_init__(self):
        if int(self.n) < 2:
            raise DegenerateSpec(f"ZMod needs n >= 2, got {self.n}")


@dataclass(frozen=True)
class PolyQuot:
    p: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if not _is_prime(int(self.p)):
            raise NonPrimeModulus(f"{self.p} is not prime")
        mod = tuple(int(c) % self.p for c in self.modulus)
        if len(mod) < 2:
            raise DegenerateSpec("modulus must have degree >= 1")
        if mod[-1] != 1:
            raise DegenerateSpec(f"modulus {list(self.modulus)} is not monic")
        object.__setattr__(self, "modulus", mod)

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1


@dataclass(frozen=True)
class Product:
    factors: tuple

    def __post_init__(self):
        factors = tuple(self.factors)
        if not factors:
            raise DegenerateSpec("Product needs at least one factor")
        object.__setattr__(self, "factors", factors)


RingSpec = Union[ZMod, PolyQuot, Product]


def spec_from_json(obj) -> RingSpec:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise SpecError(f"not a ring spec: {obj!r}")
    kind = obj["kind"]
    try:
        if kind == "zmod":
            return ZMod(int(obj["n"]))
        if kind == "polyquot":
            return PolyQuot(int(obj["p"]), tuple(int(c) for c in obj["modulus"]))
        if kind == "product":
            return Product(tuple(spec_from_json(f) for f in obj["factors"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecError(f"bad ring spec {obj!r}: {exc}") from exc
    raise SpecError(f"unknown ring kind {kind!r}")


def spec_to_json(spec: RingSpec) -> dict:
    if isinstance(spec, ZMod):
        return {"kind": "zmod", "n": spec.n}
    if isinstance(spec, PolyQuot):
        return {"kind": "polyquot", "p": spec.p, "modulus": list(spec.modulus)}
    return {"kind": "product", "factors": [spec_to_json(f) for f in spec.factors]}


def _poly_str(coeffs) -> str:
    terms = []
    for i, c in enumerate(coeffs):
        if not c:
            continue
        mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
        terms.append(f"{c}{mono}" if c != 1 or not mono else mono)
    return "+".join(reversed(terms)) or "0"


def spec_name(spec: RingSpec) -> str:
    if isinstance(spec, ZMod):
        return f"Z{spec.n}"
    if isinstance(spec, PolyQuot):
        return f"F{spec.p}[x]/({_poly_str(spec.modulus)})"
    return " x ".join(spec_name(f) for f in spec.factors)


def _mixed_digits(q: int, radices) -> np.ndarray:
    """Digit vectors of 0..q-1 in mixed radix, least significant digit first."""
    ar = np.arange(q, dtype=np.int64)
    out, place = [], 1
    for r in radices:
        out.append((ar // place) % r)
        place *= r
    return np.stack(out, axis=1)


def _spec_order(spec: RingSpec) -> int:
    if isinstance(spec, ZMod):
        return spec.n
    if isinstance(spec, PolyQuot):
        return spec.p ** spec.degree
    out = 1
    for f in spec.factors:
        out *= _spec_order(f)
    return out


# ------------------------------------------------------------------------ ring


class Ring:
    """A finite commutative ring with complete operation tables.

    Attributes are read-only after construction; instances may be shared.
    """

    def __init__(self, spec: RingSpec, radices, digits, mul, factors=()):
        self.spec = spec
        self.radices = np.asarray(radices, dtype=np.int64)
        self.digits = np.asarray(digits, dtype=np.int64)  # (q, D)
        self.order = int(self.digits.shape[0])
        self.places = np.concatenate(([1], np.cumprod(self.radices)[:-1])).astype(np.int64)
        self.mul_table = np.asarray(mul, dtype=np.int64)
        self.factors = tuple(factors)
        q = self.order
        self.add_table = self.encode((self.digits[:, None, :] + self.digits[None, :, :]) % self.radices)
        self.neg_table = self.encode((-self.digits) % self.radices)
        self.zero = 0
        self.one = int(self._find_one())
        self.unit_mask = (self.mul_table == self.one).any(axis=1)
        inv = np.full(q, -1, dtype=np.int64)
        rows, cols = np.nonzero(self.mul_table == self.one)
        inv[rows] = cols
        self.inv_table = inv
        for t in (self.add_table, self.neg_table, self.mul_table, self.inv_table, self.unit_mask):
            t.setflags(write=False)

    # -- construction helpers
    def _find_one(self):
        q = self.order
        ar = np.arange(q)
        for e in range(q):
            if np.array_equal(self.mul_table[e], ar):
                return e
        raise SpecError("ring has no identity")  # unreachable for spec-built rings

    def encode(self, digits) -> np.ndarray:
        return (np.asarray(digits, dtype=np.int64) * self.places).sum(axis=-1)

    # -- identity / display
    def __eq__(self, other):
        return isinstance(other, Ring) and other.spec == self.spec

    def __hash__(self):
        return hash(self.spec)

    def __repr__(self):
        return f"Ring({spec_name(self.spec)})"

    @property
    def name(self) -> str:
        return spec_name(self.spec)

    @cached_property
    def characteristic(self) -> int:
        x, k = self.one, 1
        while x != 0:
            x = int(self.add_table[x, self.one])
            k += 1
        return k

    @property
    def units(self) -> list[int]:
        return [int(i) for i in np.nonzero(self.unit_mask)[0]]

    @property
    def dtype(self):
        return np.uint8 if self.order <= 256 else np.uint16

    @cached_property
    def add_small(self) -> np.ndarray:
        """``add_table`` in the compact element dtype, for bulk codeword arithmetic."""
        return self.add_table.astype(self.dtype)

    @cached_property
    def mul_small(self) -> np.ndarray:
        return self.mul_table.astype(self.dtype)

    # -- scalar arithmetic on indices
    def add(self, a, b):
        return int(self.add_table[a, b])

    def sub(self, a, b):
        return int(self.add_table[a, self.neg_table[b]])

    def neg(self, a):
        return int(self.neg_table[a])

    def mul(self, a, b):
        return int(self.mul_table[a, b])

    def is_unit(self, a) -> bool:
        return bool(self.unit_mask[a])

    def inv(self, a) -> int:
        r = int(self.inv_table[a])
        if r < 0:
            raise NotAUnit(RingElement(self, int(a)))
        return r

    def sum(self, arr, axis=-1) -> np.ndarray:
        """Ring sum of an index array along ``axis``."""
        arr = np.asarray(arr)
        ax = axis if axis >= 0 else arr.ndim + axis
        if len(self.radices) == 1:
            return arr.sum(axis=ax, dtype=np.int64) % int(self.radices[0])
        d = self.digits[arr]
        s = d.sum(axis=ax) % self.radices
        return self.encode(s)

    def element(self, literal) -> "RingElement":
        return RingElement(self, self.parse(literal))

    def elements(self):
        return [RingElement(self, i) for i in range(self.order)]

    # -- literals
    def parse(self, literal) -> int:
        spec = self.spec
        if isinstance(spec, ZMod):
            if isinstance(literal, bool) or not isinstance(literal, (int, np.integer)):
                raise SpecError(f"zmod literal must be an integer, got {literal!r}")
            return int(literal) % spec.n
        if isinstance(spec, PolyQuot):
            if isinstance(literal, (int, np.integer)) and not isinstance(literal, bool):
                coeffs = [int(literal)]
            elif isinstance(literal, (list, tuple)):
                coeffs = [int(c) for c in literal]
            else:
                raise SpecError(f"polyquot literal must be a coefficient list, got {literal!r}")
            _, r = _pdivmod([c % spec.p for c in coeffs], list(spec.modulus), spec.p)
            return sum(c * spec.p**i for i, c in enumerate(r))
        if not isinstance(literal, (list, tuple)) or len(literal) != len(self.factors):
            raise SpecError(f"product literal needs {len(self.factors)} entries, got {literal!r}")
        digs = []
        for f, lit in zip(self.factors, literal):
            digs.extend(f.digits[f.parse(lit)])
        return int(self.encode(digs))

    def literal(self, index: int):
        spec = self.spec
        index = int(index)
        if isinstance(spec, ZMod):
            return index
        if isinstance(spec, PolyQuot):
            return [int(c) for c in self.digits[index]]
        out, pos = [], 0
        d = self.digits[index]
        for f in self.factors:
            k = len(f.radices)
            out.append(f.literal(int(f.encode(d[pos:pos + k]))))
            pos += k
        return out

    def format(self, index: int) -> str:
        spec = self.spec
        if isinstance(spec, ZMod):
            return str(int(index))
        if isinstance(spec, PolyQuot):
            return _poly_str(self.literal(index))
        parts = [int(factor_index(self, i)[index]) for i in range(len(self.factors))]
        return "(" + ",".join(f.format(x) for f, x in zip(self.factors, parts)) + ")"

    # -- local decomposition
    @cached_property
    def _decomposition(self):
        return _decompose(self)

    def decompose(self) -> list[tuple["Ring", "RingElement"]]:
        comps, _, _ = self._decomposition
        return [(c, RingElement(self, e)) for c, e in comps]

    @property
    def num_components(self) -> int:
        return len(self._decomposition[0])

    @property
    def projections(self) -> list[np.ndarray]:
        """``projections[k][r]`` is the index of r in component k."""
        return self._decomposition[1]

    @property
    def lift_table(self) -> np.ndarray:
        return self._decomposition[2]

    def component_places(self) -> np.ndarray:
        orders = [c.order for c, _ in self._decomposition[0]]
        return np.concatenate(([1], np.cumprod(orders)[:-1])).astype(np.int64)

    def lift(self, parts) -> np.ndarray:
        """Inverse of the projections: componentwise index arrays -> R indices."""
        key = 0
        for p, part in zip(self.component_places(), parts):
            key = key + np.asarray(part, dtype=np.int64) * p
        return self.lift_table[key]


@dataclass(frozen=True)
class RingElement:
    ring: Ring
    index: int

    def __post_init__(self):
        if not 0 <= self.index < self.ring.order:
            raise SpecError(f"index {self.index} out of range for {self.ring}")

    def _wrap(self, other):
        if isinstance(other, RingElement):
            return other.index
        return self.ring.parse(other)

    def __add__(self, other):
        return RingElement(self.ring, self.ring.add(self.index, self._wrap(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return RingElement(self.ring, self.ring.sub(self.index, self._wrap(other)))

    def __mul__(self, other):
        return RingElement(self.ring, self.ring.mul(self.index, self._wrap(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElement(self.ring, self.ring.neg(self.index))

    def is_unit(self) -> bool:
        return self.ring.is_unit(self.index)

    @property
    def literal(self):
        return self.ring.literal(self.index)

    def __repr__(self):
        return f"{self.ring.format(self.index)} in {self.ring.name}"

    def __int__(self):
        return self.index


# ---------------------------------------------------------------- make_ring


def make_ring(spec: RingSpec, max_order: int | None = None) -> Ring:
    cap = config.limits.max_ring_order if max_order is None else max_order
    order = _spec_order(spec)
    if order > cap:
        raise RingTooLarge(f"|R| = {order} exceeds cap {cap}")
    return _make_ring(spec)


@lru_cache(maxsize=None)
def _make_ring(spec: RingSpec) -> Ring:
    if isinstance(spec, ZMod):
        n = spec.n
        ar = np.arange(n)
        return Ring(spec, [n], ar[:, None], (ar[:, None] * ar[None, :]) % n)
    if isinstance(spec, PolyQuot):
        p, d = spec.p, spec.degree
        q = p**d
        digits = _mixed_digits(q, [p] * d)
        mod = list(spec.modulus)
        mul = np.zeros((q, q), dtype=np.int64)
        places = p ** np.arange(d)
        for a in range(q):
            pa = _ptrim(digits[a].tolist())
            for b in range(a, q):
                _, r = _pdivmod(_pmul(pa, _ptrim(digits[b].tolist()), p), mod, p)
                v = sum(c * int(places[i]) for i, c in enumerate(r))
                mul[a, b] = mul[b, a] = v
        return Ring(spec, [p] * d, digits, mul)
    factors = [_make_ring(f) for f in spec.factors]
    orders = [f.order for f in factors]
    q = int(np.prod(orders))
    # factor 0 least significant
    fidx = _mixed_digits(q, orders)
    digits = np.concatenate([f.digits[fidx[:, i]] for i, f in enumerate(factors)], axis=1)
    fplaces = np.concatenate(([1], np.cumprod(orders)[:-1])).astype(np.int64)
    mul = np.zeros((q, q), dtype=np.int64)
    for i, f in enumerate(factors):
        mul += f.mul_table[fidx[:, i][:, None], fidx[:, i][None, :]] * fplaces[i]
    return Ring(spec, np.concatenate([f.radices for f in factors]), digits, mul, factors)


def factor_index(ring: Ring, i: int) -> np.ndarray:
    """Projection of a Product ring onto its i-th factor, as an index array."""
    orders = [f.order for f in ring.factors]
    places = np.concatenate(([1], np.cumprod(orders)[:-1])).astype(np.int64)
    return (np.arange(ring.order) // places[i]) % orders[i]


def _local_pieces(ring: Ring):
    """Component specs and projection arrays, before idempotents are attached."""
    spec = ring.spec
    if isinstance(spec, ZMod):
        pieces = []
        for p, a in _prime_powers(spec.n):
            pieces.append((ZMod(p**a), np.arange(spec.n) % p**a))
        return pieces
    if isinstance(spec, PolyQuot):
        p = spec.p
        fac = factor_poly(list(spec.modulus), p)
        if len(fac) == 1:
            return [(spec, np.arange(ring.order))]
        pieces = []
        for g, a in fac:
            ga = [1]
            for _ in range(a):
                ga = _pmul(ga, list(g), p)
            cspec = PolyQuot(p, tuple(ga))
            places = p ** np.arange(len(ga) - 1)
            proj = np.empty(ring.order, dtype=np.int64)
            for r in range(ring.order):
                _, rem = _pdivmod(_ptrim(ring.digits[r].tolist()), ga, p)
                proj[r] = sum(c * int(places[i]) for i, c in enumerate(rem))
            pieces.append((cspec, proj))
        return pieces
    pieces = []
    for i, f in enumerate(ring.factors):
        fproj = factor_index(ring, i)
        for cspec, cproj in _local_pieces(f):
            pieces.append((cspec, cproj[fproj]))
    return pieces


def _decompose(ring: Ring):
    pieces = _local_pieces(ring)
    comps = [_make_ring(s) for s, _ in pieces]
    projs = [np.asarray(pr, dtype=np.int64) for _, pr in pieces]
    orders = [c.order for c in comps]
    places = np.concatenate(([1], np.cumprod(orders)[:-1])).astype(np.int64)
    key = sum(pr * pl for pr, pl in zip(projs, places))
    lift = np.full(int(np.prod(orders)), -1, dtype=np.int64)
    lift[key] = np.arange(ring.order)
    if (lift < 0).any():
        raise AssertionError("CRT map is not bijective")  # impossible for a correct factorisation
    idems = []
    for k, c in enumerate(comps):
        parts = [np.int64(c.one if j == k else 0) for j in range(len(comps))]
        idems.append(int(lift[int(sum(p * pl for p, pl in zip(parts, places)))]))
    for pr in projs:
        pr.setflags(write=False)
    lift.setflags(write=False)
    return list(zip(comps, idems)), projs, lift


def decompose(ring: Ring) -> list[tuple[Ring, RingElement]]:
    return ring.decompose()


def project(r: RingElement, k: int) -> RingElement:
    ring = r.ring
    if not 0 <= k < ring.num_components:
        raise ComponentOutOfRange(f"component {k} of {ring.num_components}")
    comp = ring.decompose()[k][0]
    return RingElement(comp, int(ring.projections[k][r.index]))


def lift(ring: Ring, parts: Sequence[RingElement]) -> RingElement:
    if len(parts) != ring.num_components:
        raise ComponentOutOfRange(f"need {ring.num_components} components, got {len(parts)}")
    return RingElement(ring, int(ring.lift([p.index for p in parts])))


def invert_unit(r: RingElement) -> RingElement:
    return RingElement(r.ring, r.ring.inv(r.index))


# --------------------------------------------------------------- weight tables


@dataclass(frozen=True)
class WeightTable:
    ring: Ring
    weights: tuple[int, ...]

    def __post_init__(self):
        w = tuple(int(x) for x in self.weights)
        if len(w) != self.ring.order:
            raise SpecError(f"weight table needs {self.ring.order} entries, got {len(w)}")
        if w[0] != 0 or any(x <= 0 for x in w[1:]):
            raise SpecError("weights must satisfy w(0) = 0 and w(r) > 0 for r != 0")
        object.__setattr__(self, "weights", w)

    @cached_property
    def array(self) -> np.ndarray:
        return np.asarray(self.weights, dtype=np.int64)

    @property
    def is_hamming(self) -> bool:
        return all(x == 1 for x in self.weights[1:])

    def __call__(self, vec) -> int:
        return int(self.array[np.asarray(vec, dtype=np.int64)].sum())

    @classmethod
    def from_json(cls, ring: Ring, obj) -> "WeightTable":
        try:
            return cls(ring, tuple(obj["weights"]))
        except (KeyError, TypeError) as exc:
            raise SpecError(f"bad weight table: {exc}") from exc

    def to_json(self) -> dict:
        return {"weights": list(self.weights)}


def hamming(ring: Ring) -> WeightTable:
    return WeightTable(ring, (0,) + (1,) * (ring.order - 1))

"""Independent brute-force reference implementations for the tests.

Arithmetic here works on element literals (ints, coefficient lists, tuples of
factor literals) with plain Python integer/polynomial operations, never with
the package's lookup tables.
"""
from __future__ import annotations

import itertools

from mpcodes.ring import PolyQuot, ZMod


class OracleRing:
    def __init__(self, spec):
        self.spec = spec

    # literals are normalised to hashable values: int / tuple / tuple of those
    def norm(self, x):
        s = self.spec
        if isinstance(s, ZMod):
            return int(x) % s.n
        if isinstance(s, PolyQuot):
            if isinstance(x, int):
                x = [x]
            d = len(s.modulus) - 1
            c = [int(v) % s.p for v in x] + [0] * d
            return tuple(self._reduce(c))
        return tuple(OracleRing(f).norm(v) for f, v in zip(s.factors, x))

    def _reduce(self, c):
        s = self.spec
        p, mod = s.p, list(s.modulus)
        d = len(mod) - 1
        c = [v % p for v in c]
        for top in range(len(c) - 1, d - 1, -1):
            coef = c[top]
            if coef:
                for i in range(d + 1):
                    c[top - d + i] = (c[top - d + i] - coef * mod[i]) % p
        return (c + [0] * d)[:d]

    def elements(self):
        s = self.spec
        if isinstance(s, ZMod):
            return list(range(s.n))
        if isinstance(s, PolyQuot):
            d = len(s.modulus) - 1
            return [tuple(t) for t in itertools.product(range(s.p), repeat=d)]
        return list(itertools.product(*(OracleRing(f).elements() for f in s.factors)))

    @property
    def zero(self):
        return self.norm(self._zero_lit())

    def _zero_lit(self):
        s = self.spec
        if isinstance(s, ZMod):
            return 0
        if isinstance(s, PolyQuot):
            return [0]
        return [OracleRing(f)._zero_lit() for f in s.factors]

    def add(self, a, b):
        s = self.spec
        if isinstance(s, ZMod):
            return (a + b) % s.n
        if isinstance(s, PolyQuot):
            return tuple((x + y) % s.p for x, y in zip(a, b))
        return tuple(OracleRing(f).add(x, y) for f, x, y in zip(s.factors, a, b))

    def neg(self, a):
        s = self.spec
        if isinstance(s, ZMod):
            return (-a) % s.n
        if isinstance(s, PolyQuot):
            return tuple((-x) % s.p for x in a)
        return tuple(OracleRing(f).neg(x) for f, x in zip(s.factors, a))

    def mul(self, a, b):
        s = self.spec
        if isinstance(s, ZMod):
            return (a * b) % s.n
        if isinstance(s, PolyQuot):
            prod = [0] * (len(a) + len(b))
            for i, x in enumerate(a):
                for j, y in enumerate(b):
                    prod[i + j] += x * y
            return tuple(self._reduce(prod))
        return tuple(OracleRing(f).mul(x, y) for f, x, y in zip(s.factors, a, b))

    def is_unit(self, a):
        return any(self.mul(a, b) == self.one for b in self.elements())

    @property
    def one(self):
        s = self.spec
        if isinstance(s, ZMod):
            return 1 % s.n
        if isinstance(s, PolyQuot):
            return self.norm([1])
        return tuple(OracleRing(f).one for f in s.factors)

    def dot(self, u, v):
        acc = self.zero
        for x, y in zip(u, v):
            acc = self.add(acc, self.mul(x, y))
        return acc


def to_lits(ring, indices):
    """Package element indices -> normalised oracle literals."""
    o = OracleRing(ring.spec)
    return tuple(o.norm(ring.literal(int(i))) for i in indices)


def span_set(o: OracleRing, gens, n):
    """Closure of {0} under adding r * g; returns a set of literal tuples."""
    zero = tuple([o.zero] * n)
    words = {zero}
    elems = o.elements()
    for g in gens:
        new = set()
        for w in words:
            for r in elems:
                new.add(tuple(o.add(x, o.mul(r, y)) for x, y in zip(w, g)))
        words = new
    return words


def hamming_distance(o, words):
    words = list(words)
    if len(words) <= 1:
        return len(words[0]) + 1 if words else None
    return min(sum(a != b for a, b in zip(u, v)) for u, v in itertools.combinations(words, 2))


def min_weight(o, words, n):
    ws = [sum(x != o.zero for x in w) for w in words if any(x != o.zero for x in w)]
    return min(ws) if ws else n + 1


def dual_set(o, words, n):
    return {v for v in itertools.product(o.elements(), repeat=n) if all(o.dot(v, w) == o.zero for w in words)}


def det(o, rows):
    m = len(rows)
    total = o.zero
    for perm in itertools.permutations(range(m)):
        sign = sum(1 for i in range(m) for j in range(i + 1, m) if perm[i] > perm[j]) % 2
        term = o.one
        for i in range(m):
            term = o.mul(term, rows[i][perm[i]])
        total = o.add(total, o.neg(term) if sign else term)
    return total


def product_code(o, code_sets, a_rows, n):
    """{(c_1..c_m) A} flattened row-major, from explicit component code sets."""
    l = len(a_rows[0])
    out = set()
    for combo in itertools.product(*code_sets):
        word = []
        for i in range(n):
            for j in range(l):
                acc = o.zero
                for k, c in enumerate(combo):
                    acc = o.add(acc, o.mul(c[i], a_rows[k][j]))
                word.append(acc)
        out.add(tuple(word))
    return out

"""Built-in rings, matrices and codes used by the worked examples."""
from __future__ import annotations

from .code import Code
from .matrix import RingMatrix
from .ring import PolyQuot, Ring, ZMod, make_ring

F2_SPEC = ZMod(2)
F3_SPEC = ZMod(3)
F4_SPEC = PolyQuot(2, (1, 1, 1))  # x^2 + x + 1
F5_SPEC = ZMod(5)

# small rings used by the sweeps and the property suite
SMALL_RINGS = {
    "F2": F2_SPEC,
    "F3": F3_SPEC,
    "F4": F4_SPEC,
    "Z4": ZMod(4),
    "Z6": ZMod(6),
    "F2[x]/(x^2)": PolyQuot(2, (0, 0, 1)),
}


def f2() -> Ring:
    return make_ring(F2_SPEC)


def f3() -> Ring:
    return make_ring(F3_SPEC)


def f4() -> Ring:
    return make_ring(F4_SPEC)


def f5() -> Ring:
    return make_ring(F5_SPEC)


def _bits(ring, rows):
    return [[int(ch) for ch in r] for r in rows]


def matrix_t(ring: Ring | None = None) -> RingMatrix:
    ring = ring or f2()
    return RingMatrix.from_literals(ring, [[1, 0, 1], [0, 1, 1], [1, 1, 1]])


def matrix_t_inverse_transpose(ring: Ring | None = None) -> RingMatrix:
    ring = ring or f2()
    return RingMatrix.from_literals(ring, [[0, -1, 1], [-1, 0, 1], [1, 1, -1]])


def matrix_a5(ring: Ring | None = None) -> RingMatrix:
    ring = ring or f2()
    return RingMatrix.from_literals(ring, _bits(ring, ["11000", "01100", "00110", "00011", "11111"]))


def hamming_prime(ring: Ring | None = None) -> Code:
    """[8,4,4] extended Hamming code, first generator matrix."""
    ring = ring or f2()
    return Code.from_literals(ring, _bits(ring, ["11010001", "01101001", "00110101", "00011011"]))


def hamming_second(ring: Ring | None = None) -> Code:
    ring = ring or f2()
    return Code.from_literals(ring, _bits(ring, ["10110001", "01011001", "00101101", "00010111"]))


def code_c1(ring: Ring | None = None) -> Code:
    return Code.from_literals(ring or f2(), [[1, 1, 1, 1]])


def code_c2(ring: Ring | None = None) -> Code:
    return Code.from_literals(ring or f2(), [[1, 0, 1, 0], [0, 1, 1, 1]])


def code_c3(ring: Ring | None = None) -> Code:
    return Code.from_literals(ring or f2(), [[1, 0, 1, 0], [0, 1, 0, 1]])


def code_c3_prime(ring: Ring | None = None) -> Code:
    return Code.from_literals(ring or f2(), [[1, 1, 0, 0], [0, 0, 1, 1]])


def builtin_objects() -> dict:
    """Name -> object, for round-trip checks and the CLI."""
    return {
        "T": matrix_t(),
        "T_inv_T": matrix_t_inverse_transpose(),
        "A5": matrix_a5(),
        "G_prime": hamming_prime(),
        "G_second": hamming_second(),
        "C1": code_c1(),
        "C2": code_c2(),
        "C3": code_c3(),
        "C3_prime": code_c3_prime(),
    }

"""Exception hierarchy. Every domain failure derives from :class:`MpcError`."""
from __future__ import annotations


class MpcError(Exception):
    pass


class SpecError(MpcError):
    """Malformed ring/matrix/code description."""


class NonPrimeModulus(SpecError):
    pass


class DegenerateSpec(SpecError):
    pass


class RingTooLarge(SpecError):
    pass


class ComponentOutOfRange(MpcError):
    pass


class NotAUnit(MpcError):
    def __init__(self, element):
        super().__init__(f"{element!r} is not a unit")
        self.element = element


class ShapeMismatch(MpcError):
    pass


class LengthMismatch(ShapeMismatch):
    pass


class NotSquare(ShapeMismatch):
    pass


class Singular(MpcError):
    pass


class NotFrr(MpcError):
    """Rows are linearly dependent.

    ``witness`` is a nonzero row vector ``b`` (element indices) with ``b A = 0``;
    it lives in the local component ``component`` and is lifted back to R.
    """

    def __init__(self, component, witness, message=None):
        super().__init__(message or f"matrix is not full-row-rank (component {component}, witness {witness})")
        self.component = component
        self.witness = witness


class EnumerationCapExceeded(MpcError):
    pass


class SearchSpaceTooLarge(EnumerationCapExceeded):
    pass


class IndexOutOfRange(MpcError):
    pass


class ProfileNotSfrr(MpcError):
    def __init__(self, index, direction):
        code = "U" if direction == "forward" else "L"
        super().__init__(f"{code}_A({index}) is not MDS")
        self.index = index
        self.direction = direction


class NotNsc(MpcError):
    pass


class NotTwoWaySfrr(MpcError):
    pass


class NotQuasiOrthogonal(MpcError):
    pass


class NotPartitionedOrthogonal(MpcError):
    pass


class NotSelfOrthogonalComponent(MpcError):
    def __init__(self, index):
        super().__init__(f"component code {index} is not self-orthogonal")
        self.index = index


ComponentNotSelfOrthogonal = NotSelfOrthogonalComponent


class UnknownExample(MpcError):
    pass

"""Matrix-product codes over finite commutative Frobenius rings."""
from .code import Code, dual, min_distance, params, span
from .errors import MpcError
from .matrix import RingMatrix, frr_certificate
from .mpc import MpcSpec, bound_report, build, dual_mpc
from .ring import PolyQuot, Product, Ring, ZMod, make_ring

__version__ = "0.1.0"

__all__ = [
    "Code",
    "MpcError",
    "MpcSpec",
    "PolyQuot",
    "Product",
    "Ring",
    "RingMatrix",
    "ZMod",
    "bound_report",
    "build",
    "dual",
    "dual_mpc",
    "frr_certificate",
    "make_ring",
    "min_distance",
    "params",
    "span",
]

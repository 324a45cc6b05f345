"""Niemeier lattices, their automorphisms, and order-3 orbifold invariants.

All lattice arithmetic is exact: integers and fractions, with floating point
used only to prune searches whose results are re-checked exactly.
"""

from .lataut import LatticeAutomorphism, invariants, named_lattice_automorphism, representatives, sigma
from .niemeier import NIEMEIER_IDS, build_lattice, roots_of
from .orbifold import classify, g0_dim, rho

__version__ = "0.1.0"

__all__ = [
    "NIEMEIER_IDS",
    "LatticeAutomorphism",
    "build_lattice",
    "classify",
    "g0_dim",
    "invariants",
    "named_lattice_automorphism",
    "representatives",
    "rho",
    "roots_of",
    "sigma",
]

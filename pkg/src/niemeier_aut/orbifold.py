"""Invariants of the Z3-orbifold construction attached to a lattice automorphism.

Everything here is computed from the lattice data: the top weight of the
twisted sector, the dimension of the fixed weight-one Lie algebra, and the
lookup of a (lattice, automorphism) pair in the table of class
representatives.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .lataut import (
    InvariantReport,
    LatticeAutomorphism,
    _root_array,
    component_permutation,
    fixed_rank,
    invariants,
    representatives,
    root_fix_count,
)
from .exactlin import rank
from .niemeier import NIEMEIER_IDS, AmbientLattice, NiemeierId
from .rootsys import build_root_lattice

__all__ = [
    "OUTCOMES",
    "EXPECTED_CLASS_COUNTS",
    "ClassRow",
    "OrbifoldReport",
    "rho",
    "g0_dim",
    "g0_dim_by_components",
    "class_table",
    "classify",
    "table_consistency_check",
]

OUTCOMES = ("lattice_VOA", "non_lattice_VOA", "moonshine_candidate", "not_admissible", "indeterminate")

# number of conjugacy classes of admissible order-3 automorphisms, for fixed ranks 0, 6, 12, 18
EXPECTED_CLASS_COUNTS = {
    "Leech": (1, 1, 1, 0),
    "A1_24": (0, 0, 1, 0),
    "A2_12": (0, 1, 1, 0),
    "A3_8": (0, 0, 1, 0),
    "D4_6": (1, 2, 2, 0),
    "A5_4_D4": (0, 1, 1, 0),
    "A6_4": (0, 0, 2, 0),
    "D6_4": (0, 0, 1, 0),
    "E6_4": (0, 1, 1, 0),
}

# weight-one Lie algebra types of the resulting non-lattice VOAs, as annotations
_LIE_TYPES = {
    "sigma1": "A2,3^6",
    "sigma2": "A2,3^6",
    "sigma3": "E6,3 G2,1^3",
    "sigma4": "A5,3 D4,3 A1,1^3",
    "sigma5": "A5,3 D4,3 A1,1^3",
    "sigma6": "E6,3 G2,1^3",
    "sigma7": "{0}",
}

_PRETTY = {
    "A1_24": "A1^24", "A2_12": "A2^12", "A3_8": "A3^8", "D4_6": "D4^6",
    "A5_4_D4": "A5^4D4", "A6_4": "A6^4", "D6_4": "D6^4", "E6_4": "E6^4", "Leech": "Leech",
}


def _rank_of(x) -> tuple[int, int]:
    if isinstance(x, InvariantReport):
        return x.order, x.fixed_rank
    if isinstance(x, LatticeAutomorphism):
        return x.order(), fixed_rank(x)
    return 3, int(x)


def rho(x) -> Fraction:
    """Top weight (24 - fixed rank)/18 of the twisted sector, for order 3."""
    order, fr = _rank_of(x)
    if order != 3:
        raise ValueError(f"top weight is defined here for order 3 only (got order {order})")
    return Fraction(24 - fr, 18)


def g0_dim(L: AmbientLattice, tau: LatticeAutomorphism) -> int:
    """Fixed rank plus the number of tau-orbits on the roots."""
    if tau.order() != 3:
        raise ValueError("tau must have order 3")
    n_roots = len(_root_array(L))
    fixed = root_fix_count(tau)
    moved = n_roots - fixed
    if moved % 3:
        raise AssertionError("roots moved by an order-3 map must fall into orbits of size 3")
    return fixed_rank(tau) + fixed + moved // 3


def _local_g0(rid, block: np.ndarray) -> int:
    datum = build_root_lattice(rid)
    roots = np.array([[int(c) for c in datum.root_coords(r)] for r in datum.roots], dtype=np.int64)
    fixed = int(np.all(roots @ block.T == roots, axis=1).sum())
    fr = block.shape[0] - rank(block - np.eye(len(block), dtype=np.int64))
    return fr + fixed + (len(roots) - fixed) // 3


def g0_dim_by_components(L: AmbientLattice, tau: LatticeAutomorphism) -> int:
    """The same dimension assembled component by component.

    A 3-cycle of components contributes the full dimension of one component
    (rank plus roots); a fixed component contributes the fixed dimension of
    its local part.
    """
    if L.glue is None:
        return fixed_rank(tau) + root_fix_count(tau)
    perm = component_permutation(tau)
    M = tau.array
    total = 0
    seen = set()
    for k, (rid, off) in enumerate(L.component_layout):
        if k in seen:
            continue
        if perm[k] == k:
            block = M[off:off + rid.rank, off:off + rid.rank]
            total += _local_g0(rid, block)
            seen.add(k)
        else:
            orbit = {k, perm[k], perm[perm[k]]}
            seen |= orbit
            total += rid.rank + len(build_root_lattice(rid).roots)
    return total


@dataclass(frozen=True)
class ClassRow:
    lattice: str
    key: tuple
    label: str
    representative: str
    sigma: str | None
    outcome: str
    lie_type: str | None


@dataclass(frozen=True)
class OrbifoldReport:
    lattice_id: str
    invariants: InvariantReport
    rho: Fraction | None
    g0_dim: int | None
    class_label: str | None
    outcome: str
    lie_type: str | None = None

    def to_json(self) -> dict:
        inv = self.invariants
        return {
            "lattice": self.lattice_id,
            "automorphism": inv.automorphism,
            "order": inv.order,
            "fixed_rank": inv.fixed_rank,
            "in_weyl": inv.in_weyl,
            "phi_cycles": list(inv.phi_cycles),
            "root_fix": inv.root_fix_count,
            "rho": None if self.rho is None else f"{self.rho.numerator}/{self.rho.denominator}",
            "g0_dim": self.g0_dim,
            "class_label": self.class_label,
            "outcome": self.outcome,
            "lie_type": self.lie_type,
        }


def _outcome(lattice: str, inv: InvariantReport) -> str:
    if inv.order != 3 or inv.fixed_rank % 6:
        return "not_admissible"
    if inv.in_weyl:
        return "lattice_VOA"
    if lattice == "Leech":
        return "moonshine_candidate" if inv.fixed_rank == 0 else "lattice_VOA"
    if inv.fixed_rank == 12:
        return "lattice_VOA"
    if inv.fixed_rank in (0, 6):
        return "non_lattice_VOA"
    return "indeterminate"


def _describe_perm(cycles: tuple) -> str:
    k = sum(1 for c in cycles if c == 3)
    if not cycles:
        return "none"
    if k == 0:
        return "trivial"
    return "3-cycle" if k == 1 else f"3-cycle^{k}"


@lru_cache(maxsize=None)
def class_table(lattice) -> tuple:
    """Rows for the constructed class representatives of one lattice."""
    tag = NiemeierId.parse(lattice).tag
    rows = []
    reports = [(name, invariants(a)) for name, a in representatives(tag)]
    for name, inv in reports:
        base = f"{_PRETTY[tag]} / rank {inv.fixed_rank} / non-Weyl / Φ = {_describe_perm(inv.phi_cycles)}"
        same = [r for _, r in reports if r.fixed_rank == inv.fixed_rank and r.phi_cycles == inv.phi_cycles]
        if len(same) > 1 and len({r.root_fix_count for r in same}) > 1:
            base += f" / {inv.root_fix_count} fixed roots"
        if len(same) > 1 and inv.extra.get("g2_class"):
            base += f" / G2-class {inv.extra['g2_class']}"
        sig = name if name.startswith("sigma") and name[5:].isdigit() else None
        rows.append(ClassRow(tag, inv.key(), base, name, sig, _outcome(tag, inv), _LIE_TYPES.get(sig)))
    return tuple(rows)


def classify(L: AmbientLattice, tau: LatticeAutomorphism) -> OrbifoldReport:
    if L.id not in NIEMEIER_IDS:
        raise ValueError(f"unsupported lattice {L.id}")
    if tau.lattice is not L:
        tau = LatticeAutomorphism(tau.array, L, tau.name)
    inv = invariants(tau)
    outcome = _outcome(L.id, inv)
    r = rho(inv) if inv.order == 3 else None
    g0 = g0_dim(L, tau) if inv.order == 3 else None
    label = lie = None
    if inv.miyamoto_ok:
        hits = [row for row in class_table(L.id) if row.key == inv.key()]
        if len(hits) == 1:
            label, lie = hits[0].label, hits[0].lie_type
    return OrbifoldReport(L.id, inv, r, g0, label, outcome, lie)


def table_consistency_check(lattices=NIEMEIER_IDS) -> list[dict]:
    """Compare the per-rank count of distinguishable representatives with the class table."""
    out = []
    for tag in lattices:
        rows = class_table(tag)
        counts = []
        for r in (0, 6, 12, 18):
            keys = {row.key for row in rows if row.key[0] == r}
            counts.append(len(keys))
        ties = len(rows) - len({row.key for row in rows})
        expected = EXPECTED_CLASS_COUNTS[tag]
        complete = sum(expected) == len(rows)
        entry = {
            "check": f"representative counts {tag}",
            "expected": list(expected),
            "got": counts,
            "complete": complete,
            "ties": ties,
        }
        if complete:
            entry["pass"] = tuple(counts) == expected and ties == 0
        else:
            # only part of the classes are constructed; counts must not exceed the table
            entry["pass"] = all(c <= e for c, e in zip(counts, expected)) and ties == 0
        out.append(entry)
    no18 = all(row.key[0] != 18 for tag in lattices for row in class_table(tag))
    out.append({"check": "no representative of fixed rank 18", "expected": True, "got": no18, "pass": no18})
    return out


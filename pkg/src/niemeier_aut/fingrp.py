"""Explicit finite groups: closure, conjugacy classes and the checks built on them.

Groups are enumerated element by element. Matrix groups store integer numpy
arrays keyed by their bytes; permutation-style groups (the hexacode
stabilizer) store tuples. Classes are grown as orbits under conjugation by
the generators.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Hashable

import numpy as np

from .exactlin import kernel_rank
from .rootsys import (
    RootLatticeId,
    build_root_lattice,
    diagram_automorphism,
    discriminant_action,
    named_automorphism,
    simple_reflection,
)

__all__ = [
    "CapExceeded",
    "set_cap",
    "FiniteGroup",
    "ConjClass",
    "SemilinearCodeAut",
    "closure",
    "matrix_group",
    "conjugacy_classes",
    "weyl_group",
    "aut_group",
    "aut_d4_groups",
    "verify_d4_splitting",
    "verify_fixedr",
    "verify_lemma_z2",
    "hexacode_stabilizer",
    "lift_code_aut",
    "g2_group",
    "g2_class_label",
    "EXPECTED_FIXED_RANKS",
]

DEFAULT_CAP = 200_000
_cap = DEFAULT_CAP


def set_cap(cap: int | None) -> None:
    """Change the element cap used by closures that do not pass one explicitly."""
    global _cap
    _cap = DEFAULT_CAP if cap is None else int(cap)


class CapExceeded(RuntimeError):
    """The group being enumerated is larger than the allowed cap."""


@dataclass
class FiniteGroup:
    """An enumerated group with a multiplication and a hashing rule."""

    elements: list
    generators: list
    mul: Callable
    key: Callable[[object], Hashable]
    identity: object
    _index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self._index:
            self._index = {self.key(x): i for i, x in enumerate(self.elements)}

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def index(self, x) -> int | None:
        return self._index.get(self.key(x))

    def __contains__(self, x):
        return self.key(x) in self._index

    def has_key(self, k) -> bool:
        return k in self._index

    def inverse(self, x):
        # walk powers; fine for the small orders used here
        prev, y = self.identity, x
        while self.key(y) != self.key(self.identity):
            prev, y = y, self.mul(y, x)
        return prev

    def element_order(self, x) -> int:
        n, y = 1, x
        ident = self.key(self.identity)
        while self.key(y) != ident:
            y = self.mul(y, x)
            n += 1
        return n

    def conjugate(self, x, g, g_inv):
        """``g^-1 x g``."""
        return self.mul(self.mul(g_inv, x), g)


def closure(gens, mul, key, identity, cap: int | None = None) -> FiniteGroup:
    """Enumerate the group generated by ``gens`` by breadth-first multiplication."""
    cap = _cap if cap is None else cap
    elements = [identity]
    index = {key(identity): 0}
    frontier = [identity]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                k = key(y)
                if k not in index:
                    index[k] = len(elements)
                    elements.append(y)
                    new.append(y)
                    if len(elements) > cap:
                        raise CapExceeded(f"group order exceeds cap {cap}")
        frontier = new
    return FiniteGroup(elements, list(gens), mul, key, identity, index)


def _mat_key(M: np.ndarray) -> bytes:
    return M.tobytes()


def matrix_group(gens, cap: int | None = None) -> FiniteGroup:
    gens = [np.ascontiguousarray(np.asarray(g, dtype=np.int64)) for g in gens]
    n = gens[0].shape[0]
    return closure(gens, lambda a, b: a @ b, _mat_key, np.eye(n, dtype=np.int64), cap)


@dataclass(frozen=True)
class ConjClass:
    representative: int
    members: frozenset
    element_order: int

    @property
    def size(self) -> int:
        return len(self.members)


def conjugacy_classes(G: FiniteGroup, order_filter: int | None = None, conjugators=None) -> list[ConjClass]:
    """Classes of ``G`` (optionally only elements of a given order).

    ``conjugators`` defaults to the generators of ``G``; passing the generators
    of a subgroup gives the classes under that subgroup instead.
    """
    conj = list(conjugators if conjugators is not None else G.generators)
    conj_inv = [G.inverse(g) for g in conj]
    orders = {}
    classes = []
    done = set()
    for i, x in enumerate(G.elements):
        if i in done:
            continue
        if order_filter is not None:
            o = orders.get(i) or G.element_order(x)
            if o != order_filter:
                continue
        else:
            o = G.element_order(x)
        members = {i}
        frontier = [x]
        while frontier:
            new = []
            for y in frontier:
                for g, gi in zip(conj, conj_inv):
                    z = G.conjugate(y, g, gi)
                    j = G.index(z)
                    if j is None:
                        raise ValueError("conjugating element does not normalize the group")
                    if j not in members:
                        members.add(j)
                        new.append(z)
            frontier = new
        done |= members
        classes.append(ConjClass(i, frozenset(members), o))
    return classes


# -- root lattice groups --------------------------------------------------------


def _diagram_perms(rid) -> list[tuple]:
    datum = build_root_lattice(rid)
    C = datum.cartan
    n = datum.rank
    return [p for p in itertools.permutations(range(n))
            if all(C[p[i]][p[j]] == C[i][j] for i in range(n) for j in range(n))]


@lru_cache(maxsize=None)
def weyl_group(rid) -> FiniteGroup:
    """W(R) in simple-root coordinates."""
    rid = RootLatticeId.parse(rid)
    datum = build_root_lattice(rid)
    gens = [simple_reflection(datum, i).root_matrix() for i in range(1, datum.rank + 1)]
    return matrix_group(gens)


@lru_cache(maxsize=None)
def aut_group(rid) -> FiniteGroup:
    """Aut R = W(R) extended by the Dynkin diagram automorphisms."""
    rid = RootLatticeId.parse(rid)
    datum = build_root_lattice(rid)
    gens = [simple_reflection(datum, i).root_matrix() for i in range(1, datum.rank + 1)]
    gens += [diagram_automorphism(datum, p).root_matrix() for p in _diagram_perms(rid)
             if p != tuple(range(datum.rank))]
    return matrix_group(gens)


def _fixed_rank(M: np.ndarray) -> int:
    return kernel_rank(M - np.eye(len(M), dtype=np.int64))


@lru_cache(maxsize=None)
def aut_d4_groups():
    """(W(D4), P = <W(D4), omega>, Aut D4) together with psi, omega, phi, rho."""
    datum = build_root_lattice("D4")
    refl = [simple_reflection(datum, i).root_matrix() for i in range(1, 5)]
    omega = named_automorphism("D4", "omega").root_matrix()
    phi = named_automorphism("D4", "phi").root_matrix()
    psi = named_automorphism("D4", "psi").root_matrix()
    rho = diagram_automorphism(datum, (0, 1, 3, 2)).root_matrix()
    W = matrix_group(refl)
    P = matrix_group(refl + [omega])
    A = matrix_group(refl + [omega, rho])
    return W, P, A, {"psi": psi, "omega": omega, "phi": phi, "rho": rho}


def _class_of(classes, G, x) -> ConjClass:
    i = G.index(x)
    return next(c for c in classes if i in c.members)


def _report(check, expected, got) -> dict:
    return {"check": check, "expected": expected, "got": got, "pass": expected == got}


def verify_d4_splitting() -> list[dict]:
    """Class structure of order-3 elements in Aut D4 and in P."""
    W, P, A, named = aut_d4_groups()
    psi, omega, phi = named["psi"], named["omega"], named["phi"]
    out = [
        _report("order W(D4)", 192, W.order),
        _report("order P", 576, P.order),
        _report("order Aut D4", 1152, A.order),
    ]
    cls_a = conjugacy_classes(A, 3)
    cls_p = conjugacy_classes(P, 3)
    out.append(_report("order-3 classes in Aut D4", 3, len(cls_a)))
    reps_hit = sorted({_class_of(cls_a, A, x).representative for x in (psi, omega, phi)})
    out.append(_report("psi, omega, phi in distinct Aut D4 classes", 3, len(reps_hit)))
    out.append(_report("order-3 elements covered by the classes of psi, omega, phi", True,
                       {c.representative for c in cls_a} == set(reps_hit)))
    out.append(_report("class size of phi in Aut D4", 16, _class_of(cls_a, A, phi).size))
    out.append(_report("class size of phi in P", 8, _class_of(cls_p, P, phi).size))

    def members(classes, G, x):
        return {G.key(G.elements[i]) for i in _class_of(classes, G, x).members}

    out.append(_report("psi class in P equals psi class in Aut D4", True,
                       members(cls_p, P, psi) == members(cls_a, A, psi)))
    for name, x in (("omega", omega), ("phi", phi)):
        xi = P.inverse(x)
        big = members(cls_a, A, x)
        c1, c2 = members(cls_p, P, x), members(cls_p, P, xi)
        out.append(_report(f"{name} inverse not conjugate to {name} in P", True, P.key(xi) not in c1))
        out.append(_report(f"{name} class in Aut D4 is the disjoint union of the P-classes of {name}^(+-1)",
                           True, c1.isdisjoint(c2) and c1 | c2 == big))
        # P-class of x^c equals its W(D4)-orbit
        for c, y in ((1, x), (-1, xi)):
            orbit = {W.key(g_inv @ y @ g) for g in W.elements for g_inv in [W.inverse(g)]}
            target = members(cls_p, P, y)
            out.append(_report(f"P-class of {name}^{c} is its W(D4)-orbit", True, orbit == target))
    return out


def _expected_ranks(rid: RootLatticeId) -> set:
    n = rid.rank
    if rid.family == "A":
        return {n - 2 * c for c in range(1, (n + 1) // 3 + 1)}
    if rid.family == "D":
        return {n - 2 * c for c in range(1, n // 3 + 1)}
    return {0, 2, 4}


EXPECTED_FIXED_RANKS = {str(r): sorted(_expected_ranks(RootLatticeId.parse(r)))
                        for r in ("A2", "A3", "A4", "A5", "A6", "D5", "D6", "E6")}


def verify_fixedr(rid) -> list[dict]:
    """Order-3 elements of Aut R: Weyl membership, fixed ranks, one class per rank."""
    rid = RootLatticeId.parse(rid)
    if str(rid) not in EXPECTED_FIXED_RANKS:
        raise ValueError(f"{rid} is not covered (need A2..A6, D5, D6 or E6)")
    W, A = weyl_group(rid), aut_group(rid)
    order3 = [x for x in A.elements if A.element_order(x) == 3]
    in_w = all(x in W for x in order3)
    classes = conjugacy_classes(W, 3)
    ranks = {}
    for c in classes:
        ranks.setdefault(_fixed_rank(W.elements[c.representative]), []).append(c)
    # every member of a class has the class's fixed rank
    uniform = all(len({_fixed_rank(W.elements[i]) for i in c.members}) == 1 for c in classes)
    tag = str(rid)
    return [
        _report(f"{tag}: order-3 elements of Aut R lie in W(R)", True, in_w),
        _report(f"{tag}: attained fixed ranks", EXPECTED_FIXED_RANKS[tag], sorted(ranks)),
        _report(f"{tag}: one W(R)-class per fixed rank", True,
                uniform and all(len(v) == 1 for v in ranks.values())),
        _report(f"{tag}: order-3 element count", len(order3), sum(c.size for c in classes)),
    ]


def verify_lemma_z2(G: FiniteGroup, N: list) -> dict:
    """Check that an order-2 normal subgroup is central and that G -> G/N bijects order-3 classes."""
    if len(N) != 2 or not all(x in G for x in N):
        raise ValueError("N must be a subgroup of order 2")
    ident = G.key(G.identity)
    n = next(x for x in N if G.key(x) != ident)
    normal = all(G.key(G.conjugate(n, g, G.inverse(g))) == G.key(n) for g in G.generators)
    if not normal:
        raise ValueError("N is not normal in G")
    central = all(G.key(G.mul(g, n)) == G.key(G.mul(n, g)) for g in G.elements)

    def coset(x):
        return min(G.key(x), G.key(G.mul(n, x)))

    # order-3 classes upstairs
    up = conjugacy_classes(G, 3)
    # classes of order-3 cosets downstairs, grown under conjugation by the generators
    gens = [(g, G.inverse(g)) for g in G.generators]
    seen, down = {}, []
    for x in G.elements:
        k = coset(x)
        if k in seen:
            continue
        y = G.mul(G.mul(x, x), x)
        if coset(y) != coset(G.identity) or coset(x) == coset(G.identity):
            continue
        cid = len(down)
        members = {k}
        frontier = [x]
        while frontier:
            new = []
            for z in frontier:
                for g, gi in gens:
                    w = G.conjugate(z, g, gi)
                    kw = coset(w)
                    if kw not in members:
                        members.add(kw)
                        new.append(w)
            frontier = new
        for m in members:
            seen[m] = cid
        down.append(members)
    images = [seen.get(coset(G.elements[c.representative])) for c in up]
    bijective = None not in images and len(set(images)) == len(up) == len(down)
    return {
        "check": "order-2 normal subgroup: central, and order-3 classes biject",
        "expected": True,
        "got": bool(central and bijective),
        "pass": bool(central and bijective),
        "classes_G": len(up),
        "classes_quotient": len(down),
    }


# -- code automorphisms -----------------------------------------------------------


@dataclass(frozen=True)
class SemilinearCodeAut:
    """Component permutation with local label permutations.

    The codeword ``w`` is sent to the word whose place ``perm[i]`` carries
    ``local_parts[i][w[i]]``.
    """

    local_parts: tuple
    component_perm: tuple

    def apply(self, word) -> tuple:
        out = [0] * len(word)
        for i, a in enumerate(word):
            out[self.component_perm[i]] = self.local_parts[i][a]
        return tuple(out)

    def __matmul__(self, other: "SemilinearCodeAut") -> "SemilinearCodeAut":
        # self after other
        perm = tuple(self.component_perm[other.component_perm[i]] for i in range(len(other.component_perm)))
        local = tuple(tuple(self.local_parts[other.component_perm[i]][other.local_parts[i][a]]
                            for a in range(len(other.local_parts[i])))
                      for i in range(len(other.component_perm)))
        return SemilinearCodeAut(local, perm)


def _code_key(a: SemilinearCodeAut):
    return (a.local_parts, a.component_perm)


@lru_cache(maxsize=None)
def _label_perms(rid) -> tuple:
    """Label permutations induced on the discriminant group by diagram automorphisms."""
    datum = build_root_lattice(rid)
    out = {}
    for p in _diagram_perms(rid):
        aut = diagram_automorphism(datum, p)
        out.setdefault(discriminant_action(aut, datum), aut.root_matrix())
    return tuple(out.items())


def _scan_perm(perm, L, member, gens):
    weights = np.array([4 ** perm[i] for i in range(6)], dtype=np.int64)
    ok = np.ones((6,) * 6, dtype=bool)
    for g in gens:
        total = np.zeros((6,) * 6, dtype=np.int64)
        for i in range(6):
            shape = [1] * 6
            shape[i] = 6
            total = total + (L[:, g[i]] * weights[i]).reshape(shape)
        ok &= member[total]
        if not ok.any():
            break
    return [tuple(int(c) for c in idx) for idx in zip(*np.nonzero(ok))]


_STABILIZER = {}


def hexacode_stabilizer(jobs: int | None = None) -> FiniteGroup:
    """Pairs (local S3 parts, S6 permutation) preserving the D4^6 glue code.

    Every permutation of the six places is paired with every choice of local
    parts, and the images of all code generators are tested against a
    membership table. ``jobs`` spreads the permutations over threads.
    """
    if "group" in _STABILIZER:
        return _STABILIZER["group"]
    from .niemeier import glue_code

    code = glue_code("D4_6")
    member = np.zeros(4 ** 6, dtype=bool)
    for w in code.words:
        member[sum(a * 4 ** i for i, a in enumerate(w))] = True
    locals_ = [p for p, _ in _label_perms("D4")]
    L = np.array(locals_, dtype=np.int64)  # (6 choices, 4 labels)
    gens = np.array(code.generators, dtype=np.int64)
    perms = list(itertools.permutations(range(6)))
    if jobs and jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            hits = list(pool.map(lambda p: _scan_perm(p, L, member, gens), perms))
    else:
        hits = [_scan_perm(p, L, member, gens) for p in perms]
    found = [SemilinearCodeAut(tuple(locals_[c] for c in idx), perm)
             for perm, idxs in zip(perms, hits) for idx in idxs]
    # a small generating set: add elements until they generate everything found
    target = {_code_key(e) for e in found}
    ident = SemilinearCodeAut((tuple(range(4)),) * 6, tuple(range(6)))
    gens_chosen = []
    group = None
    for e in found:
        if group is not None and group.has_key(_code_key(e)):
            continue
        gens_chosen.append(e)
        group = closure(gens_chosen, lambda a, b: a @ b, _code_key, ident, cap=10 ** 5)
        if len(group) == len(target):
            break
    if group is None or {_code_key(e) for e in group.elements} != target:
        raise AssertionError("stabilizer scan is not closed under composition")
    _STABILIZER["group"] = group
    return group


def lift_code_aut(x: SemilinearCodeAut, lattice, rid="D4"):
    """Lift a code automorphism to a lattice automorphism using diagram automorphisms."""
    from .lataut import block_automorphism

    table = dict(_label_perms(rid))
    n = len(x.component_perm)
    blocks = [None] * n
    for i in range(n):
        blocks[x.component_perm[i]] = (i, table[x.local_parts[i]])
    return block_automorphism(lattice, blocks, "lift")


# -- G2(L) for lattices with a small G1:G2 ---------------------------------------

_SMALL_G2 = ("A5_4_D4", "A6_4", "D6_4", "E6_4")


@lru_cache(maxsize=None)
def g2_group(tag: str) -> frozenset:
    """Component permutations realized by code automorphisms of the glue code."""
    from .niemeier import glue_code

    code = glue_code(tag)
    comps = code.components
    n = len(comps)
    options = [[p for p, _ in _label_perms(r)] for r in comps]
    perms = set()
    for perm in itertools.permutations(range(n)):
        if any(comps[perm[i]] != comps[i] for i in range(n)):
            continue
        for locs in itertools.product(*options):
            x = SemilinearCodeAut(tuple(locs), perm)
            if all(x.apply(w) in code.words for w in code.generators):
                perms.add(perm)
                break
    return frozenset(perms)


def g2_class_label(aut) -> str | None:
    """Canonical name of the G2(L)-class of the component permutation, when G2(L) is small."""
    from .lataut import component_permutation

    L = aut.lattice
    if L.id not in _SMALL_G2:
        return None
    G2 = g2_group(L.id)
    p = component_permutation(aut)
    if p not in G2:
        raise ValueError("component permutation is not realized in G2(L)")

    def conj(h, x):  # h x h^-1
        hinv = [0] * len(h)
        for i, j in enumerate(h):
            hinv[j] = i
        return tuple(h[x[hinv[i]]] for i in range(len(x)))

    orbit = {conj(h, p) for h in G2}
    return "".join(str(i) for i in min(orbit))

"""Automorphisms of Niemeier lattices and their invariants.

Automorphisms are integer matrices acting on ambient column vectors (root
coordinates for glued lattices, Eisenstein coordinates for the Leech
lattice). ``a @ b`` applies ``b`` first.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm

import numpy as np

from .exactlin import Matrix, determinant, kernel_rank, matrix_order, to_rows
from .niemeier import (
    A2_12_ORDER,
    AmbientLattice,
    NiemeierId,
    build_lattice,
    leech_scalar_matrix,
    roots_of,
)
from .rootsys import RootLatticeId, named_automorphism

__all__ = [
    "LatticeAutomorphism",
    "InvariantReport",
    "SIGMA_LATTICE",
    "sigma",
    "named_lattice_automorphism",
    "representatives",
    "block_automorphism",
    "preserves",
    "fixed_rank",
    "glue_action",
    "is_in_weyl",
    "component_permutation",
    "root_fix_count",
    "miyamoto_ok",
    "invariants",
    "certify_conjugate",
    "lemma_conj_conjugator",
    "random_lemma_conj_instance",
    "root_reflection",
    "random_weyl_element",
    "cycle_type",
]


def _as_int_array(M) -> np.ndarray:
    if isinstance(M, np.ndarray) and M.dtype.kind == "i":
        return M.astype(np.int64)
    rows = M.row_list() if isinstance(M, Matrix) else M
    out = []
    for r in rows:
        row = []
        for x in r:
            x = Fraction(x)
            if x.denominator != 1:
                raise ValueError("automorphism matrix is not integral in lattice coordinates")
            row.append(int(x))
        out.append(row)
    return np.array(out, dtype=np.int64)


@dataclass(frozen=True, eq=False)
class LatticeAutomorphism:
    """An integer matrix together with the lattice it is meant to preserve."""

    array: np.ndarray
    lattice: AmbientLattice
    name: str = ""

    def __post_init__(self):
        arr = _as_int_array(self.array)
        if np.abs(arr).max(initial=0) > 2**20:
            raise OverflowError("automorphism entries unexpectedly large")
        arr.setflags(write=False)
        object.__setattr__(self, "array", arr)

    @property
    def matrix(self) -> Matrix:
        return Matrix.from_rows(self.array.tolist())

    def __matmul__(self, other: "LatticeAutomorphism") -> "LatticeAutomorphism":
        return LatticeAutomorphism(self.array @ other.array, self.lattice, f"{self.name}*{other.name}")

    def inverse(self) -> "LatticeAutomorphism":
        # finite order, so the inverse is a power
        k = self.order()
        M = np.eye(len(self.array), dtype=np.int64)
        for _ in range(k - 1):
            M = M @ self.array
        return LatticeAutomorphism(M, self.lattice, f"{self.name}^-1")

    def power(self, k: int) -> "LatticeAutomorphism":
        if k < 0:
            return self.inverse().power(-k)
        M = np.eye(len(self.array), dtype=np.int64)
        for _ in range(k):
            M = M @ self.array
        return LatticeAutomorphism(M, self.lattice, f"{self.name}^{k}")

    def order(self, cap: int = 10**4) -> int:
        n = matrix_order(self.array, cap)
        if n is None:
            raise ValueError(f"order of {self.name or 'automorphism'} exceeds {cap}")
        return n

    def __eq__(self, other):
        return isinstance(other, LatticeAutomorphism) and np.array_equal(self.array, other.array)

    def __hash__(self):
        return hash(self.array.tobytes())


# -- building automorphisms ---------------------------------------------------


def _offsets(L: AmbientLattice) -> list[tuple[RootLatticeId, int]]:
    return list(L.component_layout)


def block_automorphism(L: AmbientLattice, blocks, name: str = "") -> LatticeAutomorphism:
    """Automorphism whose k-th component receives ``local_k`` applied to component ``src_k``.

    ``blocks`` lists ``(src_k, local_k)`` per destination component; ``local_k``
    is a root-coordinate matrix or None for the identity.
    """
    layout = _offsets(L)
    if len(blocks) != len(layout):
        raise ValueError("one block per component required")
    if sorted(s for s, _ in blocks) != list(range(len(layout))):
        raise ValueError("block sources must form a permutation of the components")
    n = L.rank
    M = np.zeros((n, n), dtype=np.int64)
    for dst, (src, local) in enumerate(blocks):
        rd, od = layout[dst]
        rs, os_ = layout[src]
        if rd != rs:
            raise ValueError(f"cannot map a {rs} component onto a {rd} component")
        k = rd.rank
        M[od:od + k, os_:os_ + k] = np.eye(k, dtype=np.int64) if local is None else local
    return LatticeAutomorphism(M, L, name)


@lru_cache(maxsize=None)
def _local(rid: str, name: str) -> np.ndarray:
    a = named_automorphism(rid, name).root_matrix()
    a.setflags(write=False)
    return a


def _inv(a: np.ndarray) -> np.ndarray:
    return np.linalg.matrix_power(a, 2)  # order-3 local maps


def _perm_blocks(src_of, locals_=None):
    locals_ = locals_ or {}
    return [(s, locals_.get(d)) for d, s in enumerate(src_of)]


SIGMA_LATTICE = {1: "A2_12", 2: "D4_6", 3: "D4_6", 4: "D4_6", 5: "A5_4_D4", 6: "E6_4", 7: "Leech"}


def sigma(index: int) -> LatticeAutomorphism:
    """The order-3 automorphisms sigma1, ..., sigma7."""
    if index not in SIGMA_LATTICE:
        raise ValueError(f"sigma index must be 1..7, got {index}")
    L = build_lattice(SIGMA_LATTICE[index])
    name = f"sigma{index}"
    if index == 7:
        return LatticeAutomorphism(leech_scalar_matrix(), L, name)
    if index == 1:
        p1 = _local("A2", "psi1")
        src = [0, 1, 2, 9, 10, 11, 3, 4, 5, 6, 7, 8]
        return block_automorphism(L, _perm_blocks(src, {0: p1, 1: p1, 2: p1}), name)
    if index in (2, 3, 4):
        phi, omega, psi = _local("D4", "phi"), _local("D4", "omega"), _local("D4", "psi")
        if index == 2:
            blocks = [(k, phi) for k in range(6)]
        elif index == 3:
            blocks = [(k, phi) for k in range(3)] + [(k, omega) for k in range(3, 6)]
        else:
            blocks = [(0, psi), (1, phi), (2, _inv(phi)), (5, None), (3, _inv(phi)), (4, phi)]
        return block_automorphism(L, blocks, name)
    if index == 5:
        blocks = [(0, _local("A5", "psi2")), (3, None), (1, None), (2, None), (4, _local("D4", "phi"))]
        return block_automorphism(L, blocks, name)
    blocks = [(0, _local("E6", "psi3")), (3, None), (1, None), (2, None)]
    return block_automorphism(L, blocks, name)


def _a2_12_sigma_prime():
    cycles = [(0, 1, 2), (3, 5, 10), (6, 8, 9)]
    image = {p: p for p in A2_12_ORDER}
    for c in cycles:
        for a, b in zip(c, c[1:] + c[:1]):
            image[a] = b
    pos = {p: i for i, p in enumerate(A2_12_ORDER)}
    src = [0] * 12
    for p in A2_12_ORDER:
        src[pos[image[p]]] = pos[p]
    return src


def _a3_8_doubling():
    # places (inf, 0, ..., 6); the map i -> 2i mod 7 fixes inf and 0
    src = [0] * 8
    for i in range(7):
        src[1 + (2 * i) % 7] = 1 + i
    return src


# M24 acting on {inf, 0, ..., 22}; inf is position 0
def _m24_generators():
    def perm(f):
        return tuple(0 if f(x) is None else 1 + f(x) for x in [None] + list(range(23)))

    qr = {(i * i) % 23 for i in range(1, 23)}
    inv = {x: pow(x, -1, 23) for x in range(1, 23)}

    def gamma(x):
        if x is None:
            return 0
        return None if x == 0 else (-inv[x]) % 23

    def delta(x):
        if x is None or x == 0:
            return x
        return (pow(x, 3, 23) * inv[9]) % 23 if x in qr else (9 * pow(x, 3, 23)) % 23

    return [
        perm(lambda x: None if x is None else (x + 1) % 23),
        perm(lambda x: None if x is None else (2 * x) % 23),
        perm(gamma),
        perm(delta),
    ]


def _compose(p, q):  # p after q
    return tuple(p[q[i]] for i in range(len(q)))


def _preserves_words(perm, words: frozenset) -> bool:
    # perm sends place i to place perm[i]
    for w in words:
        img = [0] * len(w)
        for i, a in enumerate(w):
            img[perm[i]] = a
        if tuple(img) not in words:
            return False
    return True


@lru_cache(maxsize=None)
def _m24_3a_element():
    """A code automorphism of order 3 with six fixed places on the Golay glue code."""
    L = build_lattice("A1_24")
    words = L.glue.words
    gens = [g for g in _m24_generators() if _preserves_words(g, words)]
    rng = random.Random(3)
    for _ in range(2000):
        p = tuple(range(24))
        for _ in range(12):
            p = _compose(rng.choice(gens), p)
        # order of p and a power of order 3
        q, k = p, 1
        while q != tuple(range(24)):
            q, k = _compose(p, q), k + 1
        if k % 3:
            continue
        t = tuple(range(24))
        for _ in range(k // 3):
            t = _compose(p, t)
        if sum(1 for i in range(24) if t[i] == i) == 6 and _preserves_words(t, words):
            return t
    raise RuntimeError("no order-3 Golay code automorphism with six fixed points found")


def _perm_to_src(perm):
    src = [0] * len(perm)
    for i, j in enumerate(perm):
        src[j] = i
    return src


def named_lattice_automorphism(lattice, name: str) -> LatticeAutomorphism:
    """Look up an automorphism by name: sigma1..sigma7 or a class representative."""
    name = name.strip()
    if name.lower().startswith("sigma") and name[5:].isdigit():
        s = sigma(int(name[5:]))
        if lattice is not None and NiemeierId.parse(lattice).tag != s.lattice.id:
            raise ValueError(f"{name} is an automorphism of {s.lattice.id}, not {lattice}")
        return s
    reps = {n: a for n, a in representatives(lattice)}
    reps.update(_extra_named(lattice))
    if name not in reps:
        raise ValueError(f"unknown automorphism {name!r} for {lattice}; known: {', '.join(sorted(reps))}")
    return reps[name]


def _extra_named(lattice) -> dict:
    L = build_lattice(lattice)
    out = {"identity": LatticeAutomorphism(np.eye(24, dtype=np.int64), L, "identity")}
    if L.id == "D4_6":
        psi, omega = _local("D4", "psi"), _local("D4", "omega")
        out["psi_first"] = block_automorphism(L, [(0, psi)] + [(k, None) for k in range(1, 6)], "psi_first")
        out["omega_first"] = block_automorphism(L, [(0, omega)] + [(k, None) for k in range(1, 6)],
                                                "omega_first")
    return out


@lru_cache(maxsize=None)
def _representatives(tag: str) -> tuple:
    L = build_lattice(tag)
    out = []
    if tag == "A2_12":
        out = [("sigma1", sigma(1)),
               ("sigma_prime", block_automorphism(L, _perm_blocks(_a2_12_sigma_prime()), "sigma_prime"))]
    elif tag == "D4_6":
        omega = _local("D4", "omega")
        out = [
            ("sigma2", sigma(2)),
            ("sigma3", sigma(3)),
            ("sigma4", sigma(4)),
            ("omega6", block_automorphism(L, [(k, omega) for k in range(6)], "omega6")),
            ("sigma_b", block_automorphism(
                L, [(0, None), (1, omega), (2, _inv(omega)), (5, None), (3, _inv(omega)), (4, omega)],
                "sigma_b")),
        ]
    elif tag == "A5_4_D4":
        out = [("sigma5", sigma(5)),
               ("rank12", block_automorphism(
                   L, [(0, None), (3, None), (1, None), (2, None), (4, _local("D4", "omega"))], "rank12"))]
    elif tag == "E6_4":
        out = [("sigma6", sigma(6)),
               ("rank12", block_automorphism(L, _perm_blocks([0, 3, 1, 2]), "rank12"))]
    elif tag == "A6_4":
        out = [("rank12", block_automorphism(L, _perm_blocks([0, 3, 1, 2]), "rank12")),
               ("rank12_inverse", block_automorphism(L, _perm_blocks([0, 2, 3, 1]), "rank12_inverse"))]
    elif tag == "D6_4":
        out = [("rank12", block_automorphism(L, _perm_blocks([0, 3, 1, 2]), "rank12"))]
    elif tag == "A3_8":
        out = [("rank12", block_automorphism(L, _perm_blocks(_a3_8_doubling()), "rank12"))]
    elif tag == "A1_24":
        src = _perm_to_src(_m24_3a_element())
        out = [("rank12", block_automorphism(L, _perm_blocks(src), "rank12"))]
    elif tag == "Leech":
        out = [("sigma7", sigma(7))]
    return tuple(out)


def representatives(lattice) -> list[tuple[str, LatticeAutomorphism]]:
    """Constructed order-3 class representatives satisfying the admissibility test."""
    return list(_representatives(NiemeierId.parse(lattice).tag))


# -- invariants -----------------------------------------------------------------


def preserves(aut, L: AmbientLattice) -> bool:
    """True iff an orthogonal matrix maps the lattice onto itself."""
    M = aut.array if isinstance(aut, LatticeAutomorphism) else aut
    rows = to_rows(M)
    if all(x.denominator == 1 for r in rows for x in r):
        M = np.array([[int(x) for x in r] for r in rows], dtype=object)
        F, _ = L.form_array
    else:
        M = np.array(rows, dtype=object)
        F = np.array(L.form.row_list(), dtype=object)
    if M.shape != F.shape or not np.array_equal(M.T.dot(F).dot(M), F):
        return False
    return _maps_into(M, L)


def _maps_into(M, L: AmbientLattice) -> bool:
    D = L.denominator
    key = "binv_int"
    if key not in L._cache:
        Bi = L.basis_inverse
        den = 1
        for r in Bi:
            for x in r:
                den = den * x.denominator // np.gcd(den, x.denominator)
        L._cache[key] = (np.array([[int(x * den) for x in r] for r in Bi], dtype=object), den)
    Bi, den = L._cache[key]
    SB = L.scaled_basis
    img = SB.dot(M.T).dot(Bi)  # D * den * (coordinates of images)
    scale = D * den
    return all(x % scale == 0 for x in img.flat)


def fixed_rank(aut: LatticeAutomorphism) -> int:
    M = aut.array
    return kernel_rank(M - np.eye(len(M), dtype=np.int64))


def _check_preserves_q(aut: LatticeAutomorphism):
    if aut.lattice.glue is None:
        raise ValueError("the Leech lattice has no root sublattice to act on")
    # Q = Z^24 in root coordinates; an integer matrix of determinant +-1 preserves it
    if abs(determinant(aut.array.tolist())) != 1:
        raise ValueError("automorphism does not preserve the root lattice")


def _glue_table(L: AmbientLattice):
    # codewords as integer vectors scaled by the common denominator
    if "glue_table" not in L._cache:
        code = L.glue
        words = sorted(code.words)
        vecs = [code.vector(w) for w in words]
        den = lcm(*(x.denominator for v in vecs for x in v))
        V = np.array([[int(x * den) for x in v] for v in vecs], dtype=np.int64)
        index = {row.tobytes(): i for i, row in enumerate(V)}
        L._cache["glue_table"] = (words, V, den, index)
    return L._cache["glue_table"]


def glue_action(aut: LatticeAutomorphism) -> dict:
    """The permutation of glue codewords induced by ``aut``."""
    _check_preserves_q(aut)
    words, V, den, index = _glue_table(aut.lattice)
    images = np.ascontiguousarray((V @ aut.array.T) % den)
    action = {}
    for w, row in zip(words, images):
        j = index.get(row.tobytes())
        if j is None:
            raise ValueError("automorphism does not preserve the glue code")
        action[w] = words[j]
    return action


def _perm_order(mapping: dict) -> int:
    order = 1
    seen = set()
    for start in mapping:
        if start in seen:
            continue
        n, x = 0, start
        while True:
            seen.add(x)
            x = mapping[x]
            n += 1
            if x == start:
                break
        order = order * n // np.gcd(order, n)
    return int(order)


def is_in_weyl(aut: LatticeAutomorphism) -> bool:
    """Membership in the Weyl group of the root sublattice (trivial glue action)."""
    if aut.lattice.glue is None:  # no roots, so the Weyl group is trivial
        return bool(np.array_equal(aut.array, np.eye(len(aut.array), dtype=np.int64)))
    return all(k == v for k, v in glue_action(aut).items())


def component_permutation(aut: LatticeAutomorphism) -> tuple:
    """``perm[k]`` is the component containing the image of component ``k``."""
    layout = _offsets(aut.lattice)
    M = aut.array
    perm = []
    for rid, off in layout:
        cols = M[:, off:off + rid.rank]
        hits = [j for j, (r2, o2) in enumerate(layout) if np.any(cols[o2:o2 + r2.rank])]
        if len(hits) != 1:
            raise ValueError("automorphism does not permute the components")
        perm.append(hits[0])
    if sorted(perm) != list(range(len(layout))):
        raise ValueError("automorphism does not permute the components")
    return tuple(perm)


def cycle_type(perm) -> tuple:
    seen, out = set(), []
    for s in range(len(perm)):
        if s in seen:
            continue
        n, x = 0, s
        while x not in seen:
            seen.add(x)
            x = perm[x]
            n += 1
        out.append(n)
    return tuple(sorted(out))


def _root_array(L: AmbientLattice) -> np.ndarray:
    if "root_array" not in L._cache:
        roots = roots_of(L)
        arr = np.array([[int(x) for x in r] for r in roots], dtype=np.int64).reshape(len(roots), L.rank)
        L._cache["root_array"] = arr
    return L._cache["root_array"]


def root_fix_count(aut: LatticeAutomorphism) -> int:
    R = _root_array(aut.lattice)
    if len(R) == 0:
        return 0
    return int(np.all(R @ aut.array.T == R, axis=1).sum())


def miyamoto_ok(aut: LatticeAutomorphism) -> bool:
    order = aut.order()
    return order == 3 and fixed_rank(aut) % 6 == 0 and not is_in_weyl(aut)


@dataclass(frozen=True)
class InvariantReport:
    lattice: str
    automorphism: str
    order: int
    fixed_rank: int
    in_weyl: bool
    component_perm: tuple
    root_fix_count: int
    glue_action_order: int
    miyamoto_ok: bool
    extra: dict = field(default_factory=dict, compare=False)

    @property
    def phi_cycles(self) -> tuple:
        return cycle_type(self.component_perm) if self.component_perm else ()

    def key(self) -> tuple:
        """Tuple used to tell class representatives apart."""
        return (self.fixed_rank, self.in_weyl, self.phi_cycles, self.root_fix_count,
                self.extra.get("g2_class"))

    def to_json(self) -> dict:
        return {
            "lattice": self.lattice,
            "automorphism": self.automorphism,
            "order": self.order,
            "fixed_rank": self.fixed_rank,
            "in_weyl": self.in_weyl,
            "component_perm": list(self.component_perm),
            "phi_cycles": list(self.phi_cycles),
            "root_fix": self.root_fix_count,
            "glue_action_order": self.glue_action_order,
            "miyamoto_ok": self.miyamoto_ok,
            **{k: v for k, v in self.extra.items() if v is not None},
        }


def invariants(aut: LatticeAutomorphism) -> InvariantReport:
    L = aut.lattice
    if not preserves(aut, L):
        raise ValueError(f"{aut.name or 'matrix'} does not preserve {L.id}")
    order = aut.order()
    fr = fixed_rank(aut)
    if L.glue is None:
        weyl = is_in_weyl(aut)
        perm, gorder = (), order
    else:
        action = glue_action(aut)
        weyl = all(k == v for k, v in action.items())
        perm = component_permutation(aut)
        gorder = _perm_order(action)
    extra = {}
    from .fingrp import g2_class_label  # local import, fingrp depends on this module
    extra["g2_class"] = g2_class_label(aut) if perm else None
    ok = order == 3 and fr % 6 == 0 and not weyl
    return InvariantReport(L.id, aut.name, order, fr, weyl, perm, root_fix_count(aut), gorder, ok, extra)


# -- conjugacy ------------------------------------------------------------------


def certify_conjugate(g, tau: LatticeAutomorphism, tau2: LatticeAutomorphism) -> bool:
    """True iff ``g^-1 tau g == tau2`` for some ``g`` in Aut L (checked exactly)."""
    G = g.array if isinstance(g, LatticeAutomorphism) else _as_int_array(g)
    L = tau.lattice
    if not preserves(G, L):
        raise ValueError("conjugating matrix is not an automorphism of the lattice")
    Gi = LatticeAutomorphism(G, L).inverse().array
    return bool(np.array_equal(Gi @ tau.array @ G, tau2.array))


def _three_cycle_parts(tau: LatticeAutomorphism):
    """Components split into R1, R2 = tau(R1), R3 = tau(R2) and the fixed part R4."""
    perm = component_permutation(tau)
    seen, r1 = set(), []
    for k in range(len(perm)):
        if k in seen or perm[k] == k:
            continue
        cyc = [k, perm[k], perm[perm[k]]]
        if perm[cyc[2]] != k:
            raise ValueError("tau must permute components in 3-cycles and fixed points")
        seen.update(cyc)
        r1.append(k)
    r2 = [perm[k] for k in r1]
    r3 = [perm[k] for k in r2]
    r4 = [k for k in range(len(perm)) if perm[k] == k]
    return r1, r2, r3, r4


def _support_mask(L: AmbientLattice, comps) -> np.ndarray:
    mask = np.zeros(L.rank, dtype=bool)
    for k in comps:
        rid, off = L.component_layout[k]
        mask[off:off + rid.rank] = True
    return mask


def _restrict(M: np.ndarray, mask: np.ndarray) -> np.ndarray:
    out = np.eye(len(M), dtype=np.int64)
    out[np.ix_(mask, mask)] = M[np.ix_(mask, mask)]
    return out


def lemma_conj_conjugator(w: LatticeAutomorphism, tau: LatticeAutomorphism) -> LatticeAutomorphism:
    """A matrix ``u`` with ``u tau u^-1 = w tau``, for ``w`` a Weyl element on the 3-cycled components."""
    L = tau.lattice
    r1, r2, r3, r4 = _three_cycle_parts(tau)
    W = w.array
    m1, m2, m3 = (_support_mask(L, r) for r in (r1, r2, r3))
    moved = m1 | m2 | m3
    I = np.eye(L.rank, dtype=np.int64)
    if not np.array_equal(W[np.ix_(~moved, ~moved)], I[np.ix_(~moved, ~moved)]) or np.any(W[~moved][:, moved]) \
            or np.any(W[moved][:, ~moved]):
        raise ValueError("w must be supported on the components moved by tau")
    for a in (m1, m2, m3):
        for b in (m1, m2, m3):
            if a is not b and np.any(W[np.ix_(a, b)]):
                raise ValueError("w must act componentwise")
    if not is_in_weyl(w):
        raise ValueError("w must lie in the Weyl group")
    wt = W @ tau.array
    if not np.array_equal(np.linalg.matrix_power(wt, 3), I):
        raise ValueError("w tau must have order 3")
    w1, w2 = _restrict(W, m1), _restrict(W, m2)
    t = tau.array
    t2 = t @ t
    t2_inv = t  # tau has order 3
    u = w1 @ w2 @ (t2_inv @ w1 @ t2)
    u_inv = LatticeAutomorphism(u, L).inverse().array
    if not np.array_equal(u @ t @ u_inv, wt):
        raise AssertionError("conjugator failed its own check")
    return LatticeAutomorphism(u, L, "u")


def root_reflection(L: AmbientLattice, root) -> np.ndarray:
    """Reflection in a root of the root sublattice, as an integer matrix."""
    F, s = L.form_array
    r = np.array([int(x) for x in root], dtype=object)
    Fr = F.dot(r)
    if Fraction(int(r.dot(Fr)), s) != 2:
        raise ValueError("not a root")
    M = np.eye(L.rank, dtype=object) - np.outer(r, Fr) // s
    return M.astype(np.int64)


def random_weyl_element(L: AmbientLattice, rng: random.Random, length: int = 12, comps=None) -> LatticeAutomorphism:
    """Product of reflections in random roots (restricted to some components if given)."""
    R = _root_array(L)
    if comps is not None:
        mask = _support_mask(L, comps)
        R = R[~np.any(R[:, ~mask], axis=1)]
    M = np.eye(L.rank, dtype=np.int64)
    if len(R) == 0:
        return LatticeAutomorphism(M, L, "1")
    for _ in range(length):
        M = M @ root_reflection(L, R[rng.randrange(len(R))])
    return LatticeAutomorphism(M, L, "w")


def random_lemma_conj_instance(tau: LatticeAutomorphism, rng: random.Random, length: int = 8):
    """A random ``w = w1 w2 w3`` on the 3-cycled components with ``(w tau)^3 = 1``."""
    L = tau.lattice
    r1, r2, _, _ = _three_cycle_parts(tau)
    w1 = random_weyl_element(L, rng, length, r1).array
    w2 = random_weyl_element(L, rng, length, r2).array
    t = tau.array
    t_inv = t @ t
    inv = lambda A: LatticeAutomorphism(A, L).inverse().array  # noqa: E731
    # w3 is forced by (w tau)^3 = 1
    X = inv(w1) @ inv(t_inv @ w2 @ t)
    w3 = t_inv @ X @ t
    return LatticeAutomorphism(w1 @ w2 @ w3, L, "w")

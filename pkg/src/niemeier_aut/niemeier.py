"""Niemeier lattices from root lattices and glue codes, and the Leech lattice.

A glued lattice lives in *root coordinates*: the ambient space is spanned by
the simple roots of all components, the ambient form is the block Cartan
matrix, and the root lattice ``Q`` is exactly ``Z^24``. Glue vectors then
have small rational coordinates and reduction modulo ``Q`` is taking
fractional parts.

The Leech lattice is the complex Leech lattice over the Eisenstein integers,
written in real coordinates ``(a, b)`` for ``a + b*w`` in each of twelve
places, so that multiplication by ``w`` is an integer matrix.
"""

from __future__ import annotations

import itertools
import json
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from math import lcm

import numpy as np

from .exactlin import (
    Matrix,
    determinant,
    hermite_row_basis,
    inverse,
    smith_normal_form,
)
from .rootsys import RootLatticeId, build_root_lattice

__all__ = [
    "NIEMEIER_IDS",
    "NiemeierId",
    "GlueCode",
    "AmbientLattice",
    "glue_generators",
    "glue_code",
    "build_niemeier",
    "build_leech",
    "build_lattice",
    "roots_of",
    "short_vectors",
    "hexacode_check",
    "label_sum",
    "A2_12_ORDER",
]

NIEMEIER_IDS = ("A1_24", "A2_12", "A3_8", "D4_6", "A5_4_D4", "A6_4", "D6_4", "E6_4", "Leech")

_LAYOUT = {
    "A1_24": ("A1",) * 24,
    "A2_12": ("A2",) * 12,
    "A3_8": ("A3",) * 8,
    "D4_6": ("D4",) * 6,
    "A5_4_D4": ("A5",) * 4 + ("D4",),
    "A6_4": ("A6",) * 4,
    "D6_4": ("D6",) * 4,
    "E6_4": ("E6",) * 4,
}

# glue tables shipped as data files (overridable through NIEMEIER_DATA)
_TABLE_IDS = ("A1_24", "A3_8", "A6_4", "D6_4")

# component order for A2^12: labels of the index set {inf, 0, ..., 10}
A2_12_ORDER = ("inf", 4, 7, 0, 3, 6, 1, 5, 8, 2, 10, 9)


@dataclass(frozen=True)
class NiemeierId:
    tag: str

    def __post_init__(self):
        if self.tag not in NIEMEIER_IDS:
            raise ValueError(f"unknown lattice {self.tag!r}; expected one of {', '.join(NIEMEIER_IDS)}")

    @classmethod
    def parse(cls, s) -> "NiemeierId":
        if isinstance(s, NiemeierId):
            return s
        s = str(s).strip()
        norm = {t.lower().replace("_", ""): t for t in NIEMEIER_IDS}
        key = s.lower().replace("_", "").replace("^", "")
        if key in norm:
            return cls(norm[key])
        return cls(s)

    def __str__(self):
        return self.tag

    @property
    def components(self) -> tuple:
        return tuple(RootLatticeId.parse(c) for c in _LAYOUT.get(self.tag, ()))


# -- glue labels --------------------------------------------------------------


@lru_cache(maxsize=None)
def _label_table(rid: RootLatticeId):
    """Fractional root coordinates of each [l], and the addition table on labels."""
    datum = build_root_lattice(rid)
    fracs = [tuple(c - (c.numerator // c.denominator) for c in datum.glue_root_coords(l))
             for l in range(len(datum.glue_reps))]
    index = {f: l for l, f in enumerate(fracs)}
    if len(index) != len(fracs):
        raise AssertionError(f"glue representatives of {rid} are not distinct modulo the lattice")
    table = []
    for a in fracs:
        row = []
        for b in fracs:
            s = tuple((x + y) % 1 for x, y in zip(a, b))
            row.append(index[s])
        table.append(tuple(row))
    return tuple(fracs), index, tuple(table)


def label_sum(rid, a: int, b: int) -> int:
    """Label of the class [a] + [b] in the discriminant group of ``rid``."""
    return _label_table(RootLatticeId.parse(rid))[2][a][b]


def _word_vector(components, word) -> list[Fraction]:
    out = []
    for rid, l in zip(components, word):
        out.extend(_label_table(rid)[0][l])
    return out


@dataclass(frozen=True)
class GlueCode:
    """A glue code, stored as words of discriminant labels, one per component."""

    components: tuple
    generators: tuple
    words: frozenset
    quotient_struct: tuple

    def vector(self, word) -> list[Fraction]:
        """Canonical representative (root coordinates in [0, 1)) of a codeword."""
        return _word_vector(self.components, word)

    @property
    def elements(self) -> list[list[Fraction]]:
        return [self.vector(w) for w in sorted(self.words)]

    @property
    def generator_vectors(self) -> list[list[Fraction]]:
        return [self.vector(w) for w in self.generators]

    def add(self, u, v) -> tuple:
        return tuple(label_sum(r, a, b) for r, a, b in zip(self.components, u, v))

    def word_of(self, x) -> tuple | None:
        """Labels of a dual vector given in root coordinates, or None if outside Q*."""
        out, pos = [], 0
        for rid in self.components:
            n = rid.rank
            f = tuple(Fraction(c) % 1 for c in x[pos:pos + n])
            l = _label_table(rid)[1].get(f)
            if l is None:
                return None
            out.append(l)
            pos += n
        return tuple(out)

    def __len__(self):
        return len(self.words)

    def __contains__(self, word):
        return tuple(word) in self.words


def _close_words(components, gens) -> frozenset:
    tables = [np.array(_label_table(r)[2], dtype=np.int64) for r in components]
    k = len(components)
    W = np.zeros((1, k), dtype=np.int64)
    while True:
        shifted = [np.stack([tables[c][W[:, c], g[c]] for c in range(k)], axis=1) for g in gens]
        new = np.unique(np.concatenate([W, *shifted]), axis=0)
        if len(new) == len(W):
            return frozenset(map(tuple, W.tolist()))
        W = new


def _data_dir():
    override = os.environ.get("NIEMEIER_DATA")
    if override:
        return override
    return resources.files("niemeier_aut") / "data"


def _load_table(tag: str) -> list[tuple]:
    base = _data_dir()
    path = os.path.join(str(base), f"{tag}.json")
    with open(path) as fh:
        obj = json.load(fh)
    comps = tuple(obj.get("components", _LAYOUT[tag]))
    if comps != _LAYOUT[tag]:
        raise ValueError(f"{path}: component layout {comps} does not match {tag}")
    gens = [tuple(int(x) for x in g) for g in obj["generators"]]
    for g in gens:
        if len(g) != len(comps):
            raise ValueError(f"{path}: generator {g} has wrong length")
    return gens


def _a2_12_words() -> list[tuple]:
    theta = {0, 1, 3, 4, 5, 9}
    # w0 on the index set {inf, 0..10}: -1 on theta, +1 elsewhere (label 2 = -[1])
    w0 = {"inf": 1}
    w0.update({i: (2 if i in theta else 1) for i in range(11)})
    words = []
    for i in range(11):
        # nu^i moves place k to place k - i (nu = (10 9 ... 0))
        wi = {"inf": 1}
        wi.update({(k - i) % 11: w0[k] for k in range(11)})
        words.append(tuple(wi[p] for p in A2_12_ORDER))
    words.append(tuple(1 for _ in A2_12_ORDER))
    return words


def _parse_words(*strings) -> list[tuple]:
    return [tuple(int(c) for c in s) for s in strings]


def glue_words(nid) -> list[tuple]:
    """Generators of the glue code as label words."""
    nid = NiemeierId.parse(nid)
    tag = nid.tag
    if tag == "Leech":
        raise ValueError("the Leech lattice has no glue code")
    if tag == "D4_6":
        return _parse_words("111111", "222222", "002332", "023320", "033202", "032023", "020233")
    if tag == "A5_4_D4":
        return _parse_words("33001", "30302", "30033", "20240", "22400", "24020")
    if tag == "E6_4":
        return _parse_words("1012", "1120", "1201")
    if tag == "A2_12":
        return _a2_12_words()
    return _load_table(tag)


def glue_generators(nid) -> list[list[Fraction]]:
    """Glue generators as dual vectors in root coordinates."""
    nid = NiemeierId.parse(nid)
    return [_word_vector(nid.components, w) for w in glue_words(nid)]


def _quotient_struct(components) -> tuple:
    out = []
    for rid in components:
        d = build_root_lattice(rid)
        out.extend(x for x in smith_normal_form(d.cartan).diagonal if x != 1)
    return tuple(sorted(out))


def glue_code(nid) -> GlueCode:
    nid = NiemeierId.parse(nid)
    comps = nid.components
    gens = tuple(glue_words(nid))
    return GlueCode(comps, gens, _close_words(comps, gens), _quotient_struct(comps))


# -- lattices -----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class AmbientLattice:
    """A full-rank lattice given by basis rows inside a rational quadratic space."""

    id: str
    basis: Matrix
    form: Matrix
    component_layout: tuple = ()
    glue: GlueCode | None = None
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def rank(self) -> int:
        return self.basis.rows

    @property
    def gram(self) -> Matrix:
        if "gram" not in self._cache:
            B = self.basis
            self._cache["gram"] = B @ self.form @ Matrix.from_rows(list(zip(*B.row_list())))
        return self._cache["gram"]

    @property
    def denominator(self) -> int:
        """Smallest D with D * basis integral."""
        return lcm(*(x.denominator for x in self.basis.entries))

    @property
    def scaled_basis(self) -> np.ndarray:
        if "sb" not in self._cache:
            D = self.denominator
            self._cache["sb"] = np.array([[int(x * D) for x in r] for r in self.basis.row_list()], dtype=object)
        return self._cache["sb"]

    @property
    def basis_inverse(self) -> list[list[Fraction]]:
        if "binv" not in self._cache:
            self._cache["binv"] = inverse(self.basis)
        return self._cache["binv"]

    @property
    def form_array(self) -> np.ndarray:
        """Ambient form scaled to integers, with its scale factor."""
        if "form" not in self._cache:
            s = lcm(*(x.denominator for x in self.form.entries))
            self._cache["form"] = (np.array([[int(x * s) for x in r] for r in self.form.row_list()], dtype=object), s)
        return self._cache["form"]

    def det(self) -> Fraction:
        return determinant(self.gram)

    def norm(self, x) -> Fraction:
        F, s = self.form_array
        v = np.array([Fraction(a) for a in x], dtype=object)
        return Fraction(v.dot(F).dot(v)) / s

    def coords(self, x) -> list[Fraction]:
        """Coordinates of an ambient vector with respect to the lattice basis."""
        Bi = self.basis_inverse
        n = len(x)
        return [sum((Fraction(x[i]) * Bi[i][j] for i in range(n) if x[i]), Fraction(0)) for j in range(n)]

    def contains(self, x) -> bool:
        return all(c.denominator == 1 for c in self.coords(x))

    def is_even(self) -> bool:
        G = self.gram
        n = G.rows
        return all(G[i, j].denominator == 1 for i in range(n) for j in range(n)) and all(
            G[i, i] % 2 == 0 for i in range(n))

    def to_json(self) -> dict:
        return {
            "lattice": self.id,
            "rank": self.rank,
            "det": str(self.det()),
            "even": self.is_even(),
            "component_layout": [[str(r), off] for r, off in self.component_layout],
            "basis": self.basis.to_json(),
            "form": self.form.to_json(),
            "gram": self.gram.to_json(),
        }


def _block_cartan(components) -> list[list[Fraction]]:
    n = sum(r.rank for r in components)
    F = [[Fraction(0)] * n for _ in range(n)]
    pos = 0
    for rid in components:
        C = build_root_lattice(rid).cartan
        for i, row in enumerate(C):
            for j, v in enumerate(row):
                F[pos + i][pos + j] = Fraction(v)
        pos += rid.rank
    return F


def _basis_from_generators(gens: list[list[Fraction]]) -> list[list[Fraction]]:
    D = lcm(*(Fraction(x).denominator for g in gens for x in g))
    ints = [[int(Fraction(x) * D) for x in g] for g in gens]
    H = hermite_row_basis(ints)
    return [[Fraction(x, D) for x in r] for r in H]


class ConstructionError(RuntimeError):
    """Raised when glue data fails certification."""


@lru_cache(maxsize=None)
def build_niemeier(nid) -> AmbientLattice:
    """Glue Q with its code and certify rank 24, evenness and determinant 1."""
    nid = NiemeierId.parse(nid)
    if nid.tag == "Leech":
        return build_leech()
    comps = nid.components
    code = glue_code(nid)
    n = sum(r.rank for r in comps)
    unit = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    basis = _basis_from_generators(unit + code.generator_vectors)
    offsets, pos = [], 0
    for r in comps:
        offsets.append((r, pos))
        pos += r.rank
    L = AmbientLattice(nid.tag, Matrix.from_rows(basis), Matrix.from_rows(_block_cartan(comps)),
                       tuple(offsets), code)
    det_q = 1
    for r in comps:
        det_q *= r.det
    if len(basis) != 24 or len(code) ** 2 != det_q:
        raise ConstructionError(f"{nid}: glue code has {len(code)} words, expected {det_q} = |code|^2")
    if L.det() != 1 or not L.is_even():
        raise ConstructionError(f"{nid}: glued lattice is not even unimodular (det {L.det()})")
    expected_roots = sum(len(build_root_lattice(r).roots) for r in comps)
    if len(roots_of(L)) != expected_roots:
        raise ConstructionError(f"{nid}: glue creates extra roots ({len(roots_of(L))} != {expected_roots})")
    return L


# -- Leech --------------------------------------------------------------------

# ternary Golay code [I | S], scaled so that the all-ones word is a codeword
_GOLAY3 = (
    (0, 1, 1, 1, 1, 1),
    (2, 0, 1, 2, 2, 1),
    (2, 1, 0, 1, 2, 2),
    (2, 2, 1, 0, 1, 2),
    (2, 2, 2, 1, 0, 1),
    (2, 1, 2, 2, 1, 0),
)


def ternary_golay_code() -> list[tuple]:
    rows = [tuple(int(i == j) for j in range(6)) + _GOLAY3[i] for i in range(6)]
    words = set()
    for coeffs in itertools.product(range(3), repeat=6):
        words.add(tuple(sum(c * r[k] for c, r in zip(coeffs, rows)) % 3 for k in range(12)))
    return sorted(words)


def _eis_mul_w(z):
    a, b = z
    return (-b, a - b)


def _eis_mul_theta(z):  # theta = w - w^2 = 1 + 2w
    a, b = z
    return (a - 2 * b, 2 * a - b)


def _flat(zs):
    return [c for z in zs for c in z]


def _leech_generators() -> list[list[int]]:
    gens = []

    def with_w(zs):
        gens.append(_flat(zs))
        gens.append(_flat([_eis_mul_w(z) for z in zs]))

    rows = [tuple(int(i == j) for j in range(6)) + _GOLAY3[i] for i in range(6)]
    # theta * y where y mod theta lies in the code and sum(y) lies in theta^2
    for r in rows:
        with_w([_eis_mul_theta((((c + 1) % 3) - 1, 0)) for c in r])
    for i in range(1, 12):
        y = [(0, 0)] * 12
        y[0], y[i] = (-1, 0), (1, 0)
        with_w([_eis_mul_theta(_eis_mul_theta(z)) for z in y])
    with_w([_eis_mul_theta((3, 0))] + [(0, 0)] * 11)
    # the glue vector (-2, -2, 1, ..., 1), congruent to the all-ones word mod theta
    with_w([(-2, 0), (-2, 0)] + [(1, 0)] * 10)
    return gens


@lru_cache(maxsize=None)
def build_leech() -> AmbientLattice:
    """Complex Leech lattice in real coordinates; form (2/9) Re of the hermitian form."""
    H = hermite_row_basis(_leech_generators())
    basis = Matrix.from_rows(H)
    block = [[Fraction(2, 9), Fraction(-1, 9)], [Fraction(-1, 9), Fraction(2, 9)]]
    form = [[Fraction(0)] * 24 for _ in range(24)]
    for k in range(12):
        for i in range(2):
            for j in range(2):
                form[2 * k + i][2 * k + j] = block[i][j]
    L = AmbientLattice("Leech", basis, Matrix.from_rows(form))
    if L.rank != 24 or L.det() != 1 or not L.is_even():
        raise ConstructionError("Leech construction is not even unimodular")
    if roots_of(L):
        raise ConstructionError("Leech construction has roots")
    return L


def leech_scalar_matrix() -> np.ndarray:
    """Multiplication by a primitive cube root of unity, as an integer matrix."""
    M = np.zeros((24, 24), dtype=np.int64)
    for k in range(12):
        M[2 * k:2 * k + 2, 2 * k:2 * k + 2] = [[0, -1], [1, -1]]
    return M


def build_lattice(nid) -> AmbientLattice:
    nid = NiemeierId.parse(nid)
    return build_leech() if nid.tag == "Leech" else build_niemeier(nid)


# -- short vectors --------------------------------------------------------------


def _ldl(gram) -> tuple[list[Fraction], list[list[Fraction]]]:
    n = len(gram)
    Q = [[Fraction(x) for x in r] for r in gram]
    for i in range(n):
        if Q[i][i] <= 0:
            raise ValueError("form is not positive definite")
        for j in range(i + 1, n):
            Q[j][i] = Q[i][j]
            Q[i][j] = Q[i][j] / Q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                Q[k][l] -= Q[k][i] * Q[i][l]
    d = [Q[i][i] for i in range(n)]
    mu = [[Q[i][j] if j > i else Fraction(0) for j in range(n)] for i in range(n)]
    return d, mu


def _short_vectors_exact(gram, bound) -> list[tuple[int, ...]]:
    # depth-first search entirely in Fractions; slow but independent of floats
    n = len(gram)
    d, mu = _ldl(gram)
    x = [0] * n
    out = []

    def search(i, remaining):
        c = -sum((mu[i][j] * x[j] for j in range(i + 1, n) if x[j]), Fraction(0))
        start = c.numerator // c.denominator
        for direction, first in ((1, start + 1), (-1, start)):
            v = first
            while True:
                t = v - c
                q = d[i] * t * t
                if q > remaining:
                    break
                x[i] = v
                if i == 0:
                    if next((y for y in reversed(x) if y), 0) > 0:
                        out.append(tuple(x))
                else:
                    search(i - 1, remaining - q)
                v += direction
        x[i] = 0

    search(n - 1, bound)
    return out


_PRUNE_MARGIN = 1e-6


def _short_vectors_pruned(gram, bound) -> list[tuple[int, ...]]:
    # float pruning with a safety margin; callers re-check every candidate exactly
    n = len(gram)
    d, mu = _ldl(gram)
    df = [float(v) for v in d]
    muf = [[float(v) for v in row] for row in mu]
    x = [0] * n
    out = []

    def search(i, rem):
        c = -sum(muf[i][j] * x[j] for j in range(i + 1, n) if x[j])
        r = math.sqrt(max(rem, 0.0) / df[i])
        for v in range(math.ceil(c - r - _PRUNE_MARGIN), math.floor(c + r + _PRUNE_MARGIN) + 1):
            t = v - c
            q = df[i] * t * t
            if q > rem + _PRUNE_MARGIN:
                continue
            x[i] = v
            if i == 0:
                if next((y for y in reversed(x) if y), 0) > 0:
                    out.append(tuple(x))
            else:
                search(i - 1, rem - q)
        x[i] = 0

    search(n - 1, float(bound))
    return out


def short_vectors(gram, bound, exact_norm=None, method: str = "pruned") -> list[tuple[int, ...]]:
    """All nonzero integer vectors x with x G x^T <= bound, up to sign.

    Only vectors whose last nonzero coordinate is positive are returned. If
    ``exact_norm`` is given, only vectors of that norm are kept. The default
    method prunes the search tree in floating point with a margin and then
    verifies each candidate norm in integer arithmetic; ``method="exact"``
    runs the whole search in rationals.
    """
    gram = [[Fraction(x) for x in r] for r in (gram.row_list() if isinstance(gram, Matrix) else gram)]
    bound = Fraction(bound)
    if method == "exact":
        found = _short_vectors_exact(gram, bound)
    elif method == "pruned":
        found = _short_vectors_pruned(gram, bound)
    else:
        raise ValueError(f"unknown method {method!r}")
    den = 1
    for row in gram:
        for v in row:
            den = den * v.denominator // math.gcd(den, v.denominator)
    G = np.array([[int(v * den) for v in row] for row in gram], dtype=object)
    out = []
    for v in found:
        a = np.array(v, dtype=object)
        norm = Fraction(int(a @ G @ a), den)
        if norm <= bound and (exact_norm is None or norm == exact_norm):
            out.append(v)
    return out


def roots_of(L: AmbientLattice) -> list[tuple]:
    """Every norm-2 vector of ``L`` in ambient coordinates."""
    if "roots" not in L._cache:
        G = L.gram.row_list()
        B = L.basis.row_list()
        coords = short_vectors(G, 2, exact_norm=2)
        roots = []
        for c in coords:
            v = tuple(sum((ci * B[i][j] for i, ci in enumerate(c) if ci), Fraction(0)) for j in range(L.rank))
            roots.append(v)
            roots.append(tuple(-y for y in v))
        L._cache["roots"] = sorted(roots)
    return L._cache["roots"]


# -- hexacode -------------------------------------------------------------------

# discriminant labels of D4 as elements of F4 = {0, 1, w, w^2}
_F4_TIMES_W = {0: 0, 1: 2, 2: 3, 3: 1}


def hexacode_check(code: GlueCode) -> dict:
    """Length, F4-dimension and minimum weight of a D4^6 glue code."""
    d4 = RootLatticeId.parse("D4")
    if code.components != (d4,) * 6:
        return {"pass": False, "reason": "not a code on six copies of D4"}
    words = code.words
    scalar_closed = all(tuple(_F4_TIMES_W[a] for a in w) in words for w in words)
    size = len(words)
    dim = None
    k, s = 0, 1
    while s < size:
        s *= 4
        k += 1
    if s == size:
        dim = k
    min_wt = min((sum(1 for a in w if a) for w in words if any(w)), default=0)
    report = {
        "length": len(code.components),
        "codewords": size,
        "dimension": dim,
        "min_weight": min_wt,
        "f4_linear": scalar_closed,
    }
    report["pass"] = (report["length"], dim, min_wt, scalar_closed) == (6, 3, 4, True)
    return report

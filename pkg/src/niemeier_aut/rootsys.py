"""Root lattices A_n, D_n and E_6 in explicit coordinates.

``A_n`` sits in ``Z^{n+1}`` (coordinate sum zero), ``D_n`` in ``Z^n`` (even
coordinate sum), both with the standard inner product. ``E_6`` has no
rational orthonormal model, so its ambient coordinates are the coordinates in
the simple-root basis and the ambient form is the Cartan matrix.

Matrices of automorphisms act on ambient *column* vectors, so the product
``A @ B`` means "apply ``B`` first".
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .exactlin import Matrix, inverse, matmul, solve_in_basis, to_rows, transpose

__all__ = [
    "RootLatticeId",
    "RootDatum",
    "NamedAut",
    "SUPPORTED",
    "build_root_lattice",
    "glue_rep",
    "reflection",
    "named_automorphism",
    "diagram_automorphism",
    "discriminant_action",
]

SUPPORTED = ("A1", "A2", "A3", "A4", "A5", "A6", "D4", "D5", "D6", "E6")


@dataclass(frozen=True, order=True)
class RootLatticeId:
    family: str
    rank_param: int

    def __post_init__(self):
        if str(self) not in SUPPORTED:
            raise ValueError(f"unsupported root lattice {self.family}{self.rank_param}")

    def __str__(self):
        return f"{self.family}{self.rank_param}"

    @classmethod
    def parse(cls, s) -> "RootLatticeId":
        if isinstance(s, RootLatticeId):
            return s
        s = str(s).strip()
        try:
            return cls(s[0].upper(), int(s[1:]))
        except (IndexError, ValueError) as exc:
            raise ValueError(f"unsupported root lattice {s!r}") from exc

    @property
    def rank(self) -> int:
        return self.rank_param

    @property
    def ambient_dim(self) -> int:
        return self.rank_param + 1 if self.family == "A" else self.rank_param

    @property
    def det(self) -> int:
        if self.family == "A":
            return self.rank_param + 1
        return 4 if self.family == "D" else 3


def _simple_roots(rid: RootLatticeId) -> list[list[Fraction]]:
    n = rid.rank_param
    F = Fraction
    if rid.family == "A":
        rows = []
        for i in range(1, n + 1):
            v = [F(0)] * (n + 1)
            v[i - 1], v[i] = F(1), F(-1)
            rows.append(v)
        return rows
    if rid.family == "D":
        rows = []
        for i in range(n - 1):
            v = [F(0)] * n
            v[i], v[i + 1] = F(1), F(-1)
            rows.append(v)
        v = [F(0)] * n
        v[n - 2], v[n - 1] = F(1), F(1)
        rows.append(v)
        return rows
    return [[F(int(i == j)) for j in range(6)] for i in range(6)]


# E6 Dynkin diagram: chain a1-a2-a3-a4-a5 with a6 attached to a3
_E6_EDGES = [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)]


def _ambient_form(rid: RootLatticeId) -> list[list[Fraction]]:
    if rid.family != "E":
        d = rid.ambient_dim
        return [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
    C = [[Fraction(2 if i == j else 0) for j in range(6)] for i in range(6)]
    for i, j in _E6_EDGES:
        C[i][j] = C[j][i] = Fraction(-1)
    return C


@dataclass(frozen=True)
class RootDatum:
    """A root lattice together with its roots and discriminant representatives."""

    id: RootLatticeId
    basis: Matrix
    form: Matrix
    roots: tuple
    glue_reps: tuple
    ambient_dim: int
    cartan: tuple = field(repr=False)

    @property
    def rank(self) -> int:
        return self.basis.rows

    def inner(self, x, y) -> Fraction:
        F = self.form.row_list()
        return sum((xi * F[i][j] * y[j] for i, xi in enumerate(x) for j in range(len(y)) if xi and y[j]),
                   Fraction(0))

    def root_coords(self, x) -> list[Fraction] | None:
        """Coordinates of an ambient vector in the simple-root basis."""
        return solve_in_basis(self.basis, x)

    def contains(self, x) -> bool:
        c = self.root_coords(x)
        return c is not None and all(v.denominator == 1 for v in c)

    def to_root_matrix(self, M) -> np.ndarray:
        """Integer matrix of an automorphism in simple-root coordinates."""
        M = to_rows(M)
        cols = []
        for a in self.basis.row_list():
            img = [sum((M[i][j] * a[j] for j in range(len(a))), Fraction(0)) for i in range(len(M))]
            c = self.root_coords(img)
            if c is None or any(v.denominator != 1 for v in c):
                raise ValueError(f"matrix does not preserve {self.id}")
            cols.append([int(v) for v in c])
        return np.array(cols, dtype=np.int64).T.copy()

    def glue_root_coords(self, ell: int) -> list[Fraction]:
        return self.root_coords(self.glue_reps[ell])

    def highest_root(self) -> tuple:
        """The root of maximal height in the simple-root basis."""
        best = max(self.roots, key=lambda r: sum(self.root_coords(r)))
        return best

    def to_json(self) -> dict:
        return {
            "id": str(self.id),
            "ambient_dim": self.ambient_dim,
            "form": self.form.to_json(),
            "basis": self.basis.to_json(),
            "roots": Matrix.from_rows(list(self.roots)).to_json(),
            "glue_reps": Matrix.from_rows(list(self.glue_reps)).to_json(),
        }

    def __hash__(self):
        return hash(self.id)


def _glue_vectors(rid: RootLatticeId, S: list[list[Fraction]]) -> list[list[Fraction]]:
    n = rid.rank_param
    F = Fraction
    if rid.family == "A":
        reps = []
        for ell in range(n + 1):
            v = [F(ell, n + 1)] * (n + 1 - ell) + [F(ell - n - 1, n + 1)] * ell
            reps.append(v)
        return reps
    if rid.family == "D":
        half = F(1, 2)
        return [
            [F(0)] * n,
            [half] * n,
            [F(0)] * (n - 1) + [F(1)],
            [half] * (n - 1) + [-half],
        ]
    one = [F(1, 3), F(-1, 3), F(0), F(1, 3), F(-1, 3), F(0)]
    return [[F(0)] * 6, one, [-x for x in one]]


def _root_closure(cartan: list[list[int]]) -> list[tuple[int, ...]]:
    """All roots, in simple-root coordinates, by closing under simple reflections."""
    n = len(cartan)
    seen = set()
    frontier = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen.update(frontier)
    while frontier:
        new = []
        for x in frontier:
            for i in range(n):
                pair = sum(cartan[i][j] * x[j] for j in range(n))
                if pair:
                    y = list(x)
                    y[i] -= pair
                    y = tuple(y)
                    if y not in seen:
                        seen.add(y)
                        new.append(y)
        frontier = new
    return sorted(seen)


@lru_cache(maxsize=None)
def build_root_lattice(rid) -> RootDatum:
    rid = RootLatticeId.parse(rid)
    S = _simple_roots(rid)
    form = _ambient_form(rid)
    gram = matmul(matmul(S, form), transpose(S))
    cartan = [[int(x) for x in r] for r in gram]
    roots = []
    for c in _root_closure(cartan):
        v = [sum((c[i] * S[i][j] for i in range(len(S))), Fraction(0)) for j in range(len(S[0]))]
        if sum(v[i] * form[i][j] * v[j] for i in range(len(v)) for j in range(len(v))) == 2:
            roots.append(tuple(v))
    return RootDatum(
        id=rid,
        basis=Matrix.from_rows(S),
        form=Matrix.from_rows(form),
        roots=tuple(roots),
        glue_reps=tuple(tuple(v) for v in _glue_vectors(rid, S)),
        ambient_dim=rid.ambient_dim,
        cartan=tuple(tuple(r) for r in cartan),
    )


def glue_rep(rid, ell: int) -> tuple:
    datum = build_root_lattice(rid)
    if not 0 <= ell < len(datum.glue_reps):
        raise ValueError(f"glue index {ell} out of range for {datum.id}")
    return datum.glue_reps[ell]


@dataclass(frozen=True)
class NamedAut:
    name: str
    matrix: Matrix
    lattice: RootLatticeId

    def root_matrix(self) -> np.ndarray:
        return build_root_lattice(self.lattice).to_root_matrix(self.matrix)

    def __matmul__(self, other: "NamedAut") -> "NamedAut":
        if other.lattice != self.lattice:
            raise ValueError("automorphisms of different root lattices")
        return NamedAut(f"{self.name}*{other.name}", self.matrix @ other.matrix, self.lattice)


def _extend_to_ambient(datum: RootDatum, images: list[list[Fraction]]) -> list[list[Fraction]]:
    """Ambient matrix sending simple root i to images[i] (complement fixed)."""
    S = datum.basis.row_list()
    src = [list(r) for r in S]
    dst = [list(r) for r in images]
    if datum.id.family == "A":
        ones = [Fraction(1)] * datum.ambient_dim
        src.append(ones)
        dst.append(ones)
    # M @ src^T = dst^T  ->  M = dst^T (src^T)^-1
    return matmul(transpose(dst), inverse(transpose(src)))


def reflection(datum: RootDatum, root) -> NamedAut:
    root = [Fraction(x) for x in root]
    if datum.inner(root, root) != 2 or not datum.contains(root):
        raise ValueError("reflection requires a root of the lattice")
    d = datum.ambient_dim
    F = datum.form.row_list()
    # x -> x - <x, r> r, with <x, r> = x^T F r
    Fr = [sum((F[i][j] * root[j] for j in range(d)), Fraction(0)) for i in range(d)]
    M = [[Fraction(int(i == j)) - root[i] * Fr[j] for j in range(d)] for i in range(d)]
    return NamedAut(f"r{tuple(str(x) for x in root)}", Matrix.from_rows(M), datum.id)


def simple_reflection(datum: RootDatum, i: int) -> NamedAut:
    """``r_i`` for the simple root alpha_i (1-based); ``i = 0`` is the highest root."""
    root = datum.highest_root() if i == 0 else datum.basis.row_list()[i - 1]
    r = reflection(datum, root)
    return NamedAut(f"r{i}", r.matrix, datum.id)


def diagram_automorphism(datum: RootDatum, perm) -> NamedAut:
    """Automorphism sending alpha_i to alpha_{perm[i]} (0-based indices)."""
    perm = tuple(perm)
    C = datum.cartan
    n = datum.rank
    if sorted(perm) != list(range(n)) or any(C[perm[i]][perm[j]] != C[i][j] for i in range(n) for j in range(n)):
        raise ValueError(f"{perm} is not a Dynkin diagram automorphism of {datum.id}")
    S = datum.basis.row_list()
    M = _extend_to_ambient(datum, [S[perm[i]] for i in range(n)])
    return NamedAut(f"diagram{perm}", Matrix.from_rows(M), datum.id)


def _product(name, datum, factors) -> NamedAut:
    M = Matrix.from_rows([[Fraction(int(i == j)) for j in range(datum.ambient_dim)]
                          for i in range(datum.ambient_dim)])
    for f in factors:
        M = M @ f.matrix
    return NamedAut(name, M, datum.id)


def _coordinate_permutation(datum, name, src_index) -> NamedAut:
    """Map (x_0, ..., x_n) to (x_{src_index[0]}, ..., x_{src_index[n]})."""
    d = datum.ambient_dim
    M = [[Fraction(int(src_index[i] == j)) for j in range(d)] for i in range(d)]
    return NamedAut(name, Matrix.from_rows(M), datum.id)


_DEFINED = {
    ("D4", "omega"), ("D4", "phi"), ("D4", "psi"),
    ("A2", "psi1"), ("A5", "psi2"), ("E6", "psi3"),
}


def named_automorphism(rid, name: str) -> NamedAut:
    """The automorphisms omega, phi, psi of D4 and psi1, psi2, psi3."""
    rid = RootLatticeId.parse(rid)
    if (str(rid), name) not in _DEFINED:
        raise ValueError(f"no automorphism {name!r} defined on {rid}")
    datum = build_root_lattice(rid)
    if name == "omega":
        # alpha1 -> alpha3 -> alpha4 -> alpha1, alpha2 fixed
        return NamedAut("omega", diagram_automorphism(datum, (2, 1, 3, 0)).matrix, rid)
    if name == "phi":
        h = Fraction(1, 2)
        images = [(-h, h, h, h), (-h, -h, h, -h), (-h, -h, -h, h), (-h, h, -h, -h)]
        return NamedAut("phi", Matrix.from_rows(transpose(images)), rid)
    if name == "psi":
        return _product("psi", datum, [simple_reflection(datum, 1), simple_reflection(datum, 2)])
    if name == "psi1":
        return _coordinate_permutation(datum, "psi1", (2, 0, 1))
    if name == "psi2":
        return _coordinate_permutation(datum, "psi2", (2, 0, 1, 5, 3, 4))
    # psi3 = r1 r2 r4 r5 r6 r0
    return _product("psi3", datum, [simple_reflection(datum, i) for i in (1, 2, 4, 5, 6, 0)])


def discriminant_action(aut: NamedAut, datum: RootDatum | None = None) -> tuple:
    """Induced permutation of the glue classes: ``perm[l]`` is the class of aut([l])."""
    datum = datum or build_root_lattice(aut.lattice)
    M = aut.matrix.row_list()
    reps = datum.glue_reps
    perm = []
    for g in reps:
        img = [sum((M[i][j] * g[j] for j in range(len(g))), Fraction(0)) for i in range(len(M))]
        match = [k for k, h in enumerate(reps) if datum.contains([a - b for a, b in zip(img, h)])]
        if len(match) != 1:
            raise ValueError("automorphism does not preserve the dual lattice")
        perm.append(match[0])
    return tuple(perm)


def root_datum_json(rid) -> str:
    return json.dumps(build_root_lattice(rid).to_json())

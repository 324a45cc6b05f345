import json
import shutil
from fractions import Fraction
from importlib import resources

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from niemeier_aut.exactlin import determinant
from niemeier_aut.lataut import representatives
from niemeier_aut.niemeier import (
    NIEMEIER_IDS,
    ConstructionError,
    build_lattice,
    build_niemeier,
    glue_code,
    glue_generators,
    hexacode_check,
    leech_scalar_matrix,
    roots_of,
    short_vectors,
    ternary_golay_code,
)
from niemeier_aut.rootsys import build_root_lattice

GLUED = [t for t in NIEMEIER_IDS if t != "Leech"]
ROOTS = {"A1_24": 48, "A2_12": 72, "A3_8": 96, "D4_6": 144, "A5_4_D4": 144,
         "A6_4": 168, "D6_4": 240, "E6_4": 288, "Leech": 0}


@pytest.mark.parametrize("tag", NIEMEIER_IDS)
def test_even_unimodular_rank_24(tag):
    L = build_lattice(tag)
    G = L.gram.row_list()
    assert L.rank == 24
    assert all(x.denominator == 1 for row in G for x in row)
    assert all(G[i][i] % 2 == 0 for i in range(24))
    assert determinant(G) == 1


@pytest.mark.parametrize("tag", NIEMEIER_IDS)
def test_root_counts(tag):
    assert len(roots_of(build_lattice(tag))) == ROOTS[tag]


@pytest.mark.parametrize("tag", ["D4_6", "E6_4", "A6_4"])
def test_pruned_and_exact_enumeration_agree(tag):
    G = build_lattice(tag).gram
    assert sorted(short_vectors(G, 2, method="exact")) == sorted(short_vectors(G, 2))


def test_short_vectors_small_forms():
    # Z^2: norm <= 2 gives (1,0), (0,1), (1,1), (-1,1) up to sign
    assert sorted(short_vectors([[1, 0], [0, 1]], 2)) == [(-1, 1), (0, 1), (1, 0), (1, 1)]
    # A2 Gram: exactly the 3 positive roots up to sign
    assert len(short_vectors([[2, -1], [-1, 2]], 2)) == 3
    with pytest.raises(ValueError):
        short_vectors([[1, 0], [0, 1]], 2, method="nope")


@pytest.mark.parametrize("tag", GLUED)
def test_roots_lie_in_root_lattice(tag):
    # Q is Z^24 in root coordinates, so no root may have a fractional coordinate
    assert all(all(Fraction(x).denominator == 1 for x in r) for r in roots_of(build_lattice(tag)))


@pytest.mark.parametrize("tag", NIEMEIER_IDS)
def test_roots_closed_under_negation_and_representatives(tag):
    L = build_lattice(tag)
    R = {tuple(int(x) for x in r) for r in roots_of(L)}
    assert {tuple(-x for x in r) for r in R} == R
    for _, aut in representatives(tag):
        assert {tuple(int(x) for x in aut.array @ np.array(r)) for r in R} == R


@pytest.mark.parametrize("tag,size", [("D4_6", 64), ("A2_12", 729), ("E6_4", 9), ("A5_4_D4", 72),
                                      ("A1_24", 4096), ("A3_8", 256), ("A6_4", 49), ("D6_4", 16)])
def test_code_sizes_and_index_formula(tag, size):
    code = glue_code(tag)
    assert len(code) == size
    det_q = 1
    for r in code.components:
        det_q *= determinant(build_root_lattice(r).cartan)
    assert len(code) ** 2 == det_q


def test_d4_6_has_seven_generators():
    assert len(glue_generators("D4_6")) == 7


@pytest.mark.parametrize("tag", GLUED)
def test_code_closed_under_addition(tag):
    code = glue_code(tag)
    words = sorted(code.words)[:40]
    for u in words:
        for v in words:
            assert code.add(u, v) in code


@pytest.mark.parametrize("tag", GLUED)
def test_word_of_recovers_labels(tag):
    code = glue_code(tag)
    for w in sorted(code.words)[:30]:
        shifted = [x + (i % 3) - 1 for i, x in enumerate(code.vector(w))]  # add a vector of Q
        assert code.word_of(shifted) == w


def test_hexacode():
    info = hexacode_check(glue_code("D4_6"))
    assert (info["length"], info["dimension"], info["min_weight"]) == (6, 3, 4)
    assert info["codewords"] == 64 and info["f4_linear"] and info["pass"]


def test_ternary_golay_code():
    words = ternary_golay_code()
    assert len(words) == 729
    weights = sorted({sum(1 for x in w if x) for w in words})
    assert weights == [0, 6, 9, 12]
    assert (1,) * 12 in words


def test_leech_scalar():
    L = build_lattice("Leech")
    M = leech_scalar_matrix()
    assert np.array_equal(np.linalg.matrix_power(M, 3), np.eye(24, dtype=np.int64))
    assert np.linalg.matrix_rank(M - np.eye(24)) == 24
    F, s = L.form_array
    Mo = M.astype(object)
    assert np.array_equal(Mo.T.dot(F).dot(Mo), F)


@pytest.mark.slow
def test_leech_minimal_vectors():
    L = build_lattice("Leech")
    assert 2 * len(short_vectors(L.gram, 4, exact_norm=4)) == 196560


def test_corrupted_glue_table_is_rejected(tmp_path, monkeypatch):
    src = resources.files("niemeier_aut") / "data"
    for name in ("A1_24", "A3_8", "A6_4", "D6_4"):
        shutil.copy(str(src / f"{name}.json"), tmp_path / f"{name}.json")
    obj = json.loads((tmp_path / "A6_4.json").read_text())
    obj["generators"][0] = [1, 1, 1, 1]
    (tmp_path / "A6_4.json").write_text(json.dumps(obj))
    monkeypatch.setenv("NIEMEIER_DATA", str(tmp_path))
    with pytest.raises(ConstructionError):
        build_niemeier.__wrapped__("A6_4")
    # the untouched tables still certify from the override directory
    assert build_niemeier.__wrapped__("D6_4").det() == 1


def test_unknown_lattice():
    with pytest.raises(ValueError):
        build_lattice("E8_3")


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(GLUED), st.lists(st.integers(-2, 2), min_size=24, max_size=24))
def test_lattice_vectors_have_even_norm(tag, coeffs):
    L = build_lattice(tag)
    B = L.basis.row_list()
    x = [sum(c * B[i][j] for i, c in enumerate(coeffs)) for j in range(24)]
    n = L.norm(x)
    assert n.denominator == 1 and n % 2 == 0
    assert L.contains(x)

import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from niemeier_aut.exactlin import Matrix
from niemeier_aut.lataut import (
    LatticeAutomorphism,
    _local,
    block_automorphism,
    invariants,
    named_lattice_automorphism,
    random_weyl_element,
    representatives,
    sigma,
)
from niemeier_aut.niemeier import NIEMEIER_IDS, AmbientLattice, build_lattice
from niemeier_aut.orbifold import (
    EXPECTED_CLASS_COUNTS,
    OUTCOMES,
    class_table,
    classify,
    g0_dim,
    g0_dim_by_components,
    rho,
    table_consistency_check,
)

ALL_REPS = [(tag, name) for tag in NIEMEIER_IDS for name, _ in representatives(tag)]


def test_rho_values():
    assert rho(12) == Fraction(2, 3)
    assert rho(0) == Fraction(4, 3)
    assert rho(18) == Fraction(1, 3)
    assert rho(6) == 1


def test_rho_rejects_other_orders():
    ident = named_lattice_automorphism("D4_6", "identity")
    with pytest.raises(ValueError):
        rho(invariants(ident))
    with pytest.raises(ValueError):
        rho(ident)


@pytest.mark.parametrize("i", range(1, 7))
def test_rho_of_sigmas(i):
    r = rho(invariants(sigma(i)))
    assert r == (Fraction(4, 3) if i == 2 else 1)


@pytest.mark.parametrize("tag,name,dim", [("D4_6", "sigma2", 48), ("E6_4", "sigma6", 102),
                                          ("D4_6", "omega6", 84)])
def test_g0_dim_examples(tag, name, dim):
    tau = named_lattice_automorphism(tag, name)
    assert g0_dim(tau.lattice, tau) == dim
    assert g0_dim_by_components(tau.lattice, tau) == dim


@pytest.mark.parametrize("tag,name", ALL_REPS)
def test_g0_dim_routes_agree(tag, name):
    tau = named_lattice_automorphism(tag, name)
    assert g0_dim(tau.lattice, tau) == g0_dim_by_components(tau.lattice, tau)


def test_g0_dim_requires_order_three():
    ident = named_lattice_automorphism("D4_6", "identity")
    with pytest.raises(ValueError):
        g0_dim(ident.lattice, ident)


def test_classify_sigma4():
    s4 = sigma(4)
    rep = classify(s4.lattice, s4)
    assert rep.class_label == "D4^6 / rank 6 / non-Weyl / Φ = 3-cycle"
    assert rep.outcome == "non_lattice_VOA"
    assert rep.lie_type == "A5,3 D4,3 A1,1^3"


def test_classify_outcomes():
    for i in range(1, 7):
        assert classify(sigma(i).lattice, sigma(i)).outcome == "non_lattice_VOA"
    assert classify(sigma(7).lattice, sigma(7)).outcome == "moonshine_candidate"
    for name in ("omega6", "sigma_b"):
        tau = named_lattice_automorphism("D4_6", name)
        rep = classify(tau.lattice, tau)
        assert rep.outcome == "lattice_VOA" and rep.invariants.fixed_rank == 12


def test_classify_inadmissible():
    L = build_lattice("D4_6")
    for name in ("identity", "psi_first"):
        rep = classify(L, named_lattice_automorphism("D4_6", name))
        assert rep.outcome == "not_admissible" and rep.class_label is None


def test_classify_rejects_non_automorphism():
    # omega on one component breaks the glue code, so it is not in Aut L
    with pytest.raises(ValueError):
        classify(build_lattice("D4_6"), named_lattice_automorphism("D4_6", "omega_first"))


def test_classify_weyl_element_of_admissible_rank():
    # psi on every component: order 3, fixed rank 12, inside the Weyl group
    L = build_lattice("D4_6")
    psi = _local("D4", "psi")
    tau = block_automorphism(L, [(k, psi) for k in range(6)], "psi6")
    rep = classify(L, tau)
    assert rep.invariants.in_weyl and rep.invariants.fixed_rank == 12
    assert rep.outcome == "lattice_VOA" and rep.class_label is None


def test_classify_rejects_unsupported_lattice():
    eye = Matrix.from_rows(np.eye(24, dtype=int).tolist())
    L = AmbientLattice("Z24", eye, eye)
    with pytest.raises(ValueError):
        classify(L, LatticeAutomorphism(np.eye(24, dtype=np.int64), L))


def test_report_json_shape():
    obj = classify(sigma(7).lattice, sigma(7)).to_json()
    for k in ("lattice", "automorphism", "order", "fixed_rank", "in_weyl", "phi_cycles", "root_fix",
              "rho", "g0_dim", "class_label", "outcome"):
        assert k in obj
    assert obj["rho"] == "4/3" and obj["outcome"] in OUTCOMES


def test_class_table_labels_unique():
    for tag in NIEMEIER_IDS:
        rows = class_table(tag)
        assert len({r.label for r in rows}) == len(rows)
        assert len({r.key for r in rows}) == len(rows)


def test_table_consistency():
    report = table_consistency_check()
    assert all(r["pass"] for r in report), report
    by = {r["check"]: r for r in report}
    assert by["representative counts D4_6"]["got"] == [1, 2, 2, 0]
    assert by["representative counts A5_4_D4"]["got"] == [0, 1, 1, 0]
    assert by["representative counts E6_4"]["got"] == [0, 1, 1, 0]
    assert not by["representative counts Leech"]["complete"]
    assert EXPECTED_CLASS_COUNTS["Leech"] == (1, 1, 1, 0)


def test_no_rank_18_representative():
    assert all(r.key[0] != 18 for tag in NIEMEIER_IDS for r in class_table(tag))


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(ALL_REPS), st.integers(0, 2 ** 32))
def test_classify_conjugation_invariant(rep, seed):
    tag, name = rep
    tau = named_lattice_automorphism(tag, name)
    g = random_weyl_element(tau.lattice, random.Random(seed), 10)
    tau2 = LatticeAutomorphism(g.inverse().array @ tau.array @ g.array, tau.lattice, tau.name)
    assert classify(tau.lattice, tau).to_json() == classify(tau.lattice, tau2).to_json()


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 4))
def test_rho_linear_in_rank(k):
    r = 6 * k if k < 4 else 24
    assert rho(r) == Fraction(24 - r, 18)

"""
A walk through Ni(D4^6)
=======================

Build the lattice, look at its roots and glue, then compare two order-3
automorphisms that share a fixed rank but are not conjugate.
Run with ``python3 demos/d4_6_tour.py``.
"""

# %%
# The lattice is Z^24 in simple-root coordinates plus glue from the hexacode.
from niemeier_aut.niemeier import build_lattice, glue_code, hexacode_check, roots_of

L = build_lattice("D4_6")
print(L.id, "rank", L.rank, "det", L.det(), "even", L.is_even())
print("roots:", len(roots_of(L)))

code = glue_code("D4_6")
print("glue words:", len(code), hexacode_check(code))

# %%
# sigma3 and sigma4 both fix a rank-6 sublattice.
from niemeier_aut.lataut import invariants, sigma

for i in (3, 4):
    inv = invariants(sigma(i))
    print(f"sigma{i}: fixed rank {inv.fixed_rank}, fixed roots {inv.root_fix_count}, "
          f"component cycles {inv.phi_cycles}")

# %%
# The fixed-root counts differ, and conjugation would preserve them.
# So no conjugator can exist, and any candidate we try is rejected.
import random

from niemeier_aut.lataut import certify_conjugate, random_weyl_element

rng = random.Random(1)
tries = [certify_conjugate(random_weyl_element(L, rng, 10), sigma(3), sigma(4)) for _ in range(5)]
print("any certificate found:", any(tries))

# %%
# Orbifold data: top weight and the dimension of the weight-one Lie algebra.
from niemeier_aut.orbifold import classify

for i in (3, 4):
    rep = classify(L, sigma(i))
    print(f"sigma{i}: rho={rep.rho} g0_dim={rep.g0_dim} -> {rep.outcome}")
    print("   ", rep.class_label)

# %%
# The code automorphisms that lift to Aut Ni(D4^6) form a group of order 2160.
from niemeier_aut.fingrp import conjugacy_classes, hexacode_stabilizer

G = hexacode_stabilizer()
print("stabilizer order:", G.order)
print("order-3 class sizes:", sorted(c.size for c in conjugacy_classes(G, 3)))

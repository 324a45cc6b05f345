"""
The Leech lattice and a fixed-point-free order-3 automorphism
=============================================================

sigma7 is multiplication by a primitive cube root of unity on the Leech
lattice viewed as an Eisenstein lattice.  It fixes nothing, so the twisted
module starts at weight 4/3.
"""

# %%
from niemeier_aut.niemeier import build_lattice, roots_of

L = build_lattice("Leech")
print("det", L.det(), "even", L.is_even(), "roots", len(roots_of(L)))

# %%
from niemeier_aut.lataut import invariants, sigma
from niemeier_aut.orbifold import classify

s7 = sigma(7)
print(invariants(s7).to_json())
print(classify(L, s7).to_json())

# %%
# Counting the minimal vectors takes about half a minute, so it is opt-in.
import sys

if "--full" in sys.argv:
    from niemeier_aut.niemeier import short_vectors

    print("minimal vectors:", 2 * len(short_vectors(L.gram, 4, exact_norm=4)))

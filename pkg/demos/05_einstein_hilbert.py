"""The Einstein-Hilbert functional on a nonnegative base: it blows up at
both ends of the cone, so it has an interior critical point - a CSC ray."""
from fractions import Fraction

from sasaki_cone import ehf, find_csc_rays, make_setup

setup = make_setup([(1, 1, "1/2")])
for j in (2, 5, 10, 20, 40):
    c = 1 - Fraction(1, 2**j)
    print(f"H_S(+-(1-2^-{j})) = {float(ehf(setup, c)):.6g}, {float(ehf(setup, -c)):.6g}")
for root in find_csc_rays(setup, setup.m + 2).roots:
    print("CSC ray:", root.enclosure.as_floats(), "extremal" if root.is_extremal else "not extremal")

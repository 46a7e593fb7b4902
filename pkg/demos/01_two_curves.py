"""Walk through the two genus-2 curve example: affine scalar curvature,
the extremal polynomial, the CSC obstruction and the extremal cone."""
from fractions import Fraction

from sasaki_cone import build_extremal_poly, classify_cone, make_setup, obstruction_poly, solve_affine

setup = make_setup([(1, -2, "4/5"), (1, 2, "-4/5")])
print("m =", setup.m)

for c in (Fraction(0), Fraction(1, 2), Fraction(9, 10)):
    A = solve_affine(setup, c, 5)
    F = build_extremal_poly(setup, c, 5).F
    print(f"c={c}: Scal = {A.A1} z + {A.A2}")
    print(f"   F = {F}")

op = obstruction_poly(setup, 5)
print("obstruction numerator:", op.numerator, "exponents", op.exponents)
print("roots in (-1,1):", [e.as_floats() for e in op.roots()])

rep = classify_cone(setup, 5, width=Fraction(1, 10**9))
for piece in rep.extremal_set:
    print("extremal piece:", piece.interval.as_floats(), "witness", piece.witness)

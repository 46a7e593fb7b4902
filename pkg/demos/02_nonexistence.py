"""Large-genus data for which no ray of the Reeb cone is extremal."""
from fractions import Fraction

from sasaki_cone import build_extremal_poly, classify_cone, make_setup

setup = make_setup([(1, -200, "100/101"), (1, -100, "9/10")])
for c in (Fraction(-9, 10), Fraction(0), Fraction(9, 10)):
    F = build_extremal_poly(setup, c, 5).F
    print(f"c={c}: F(0) = {float(F(0)):.6g}")
print("extremal set:", classify_cone(setup, 5).extremal_set)

"""A weighted (p = 2 d0 + 2) family where existence depends on the class:
the obstruction is a cubic in c whose discriminant changes sign at x~."""
from fractions import Fraction

from sasaki_cone import WEIGHTED, discriminant_scan, make_setup, obstruction_poly


def family(x):
    return make_setup([(1, 2, x)], d0=3, dinf=1)


for x in (Fraction(1, 10), Fraction(1, 3), Fraction(4, 5)):
    op = obstruction_poly(family(x), 8, WEIGHTED)
    print(f"x={x}: {op.numerator}  roots {[e.as_floats() for e in op.roots()]}")

scan = discriminant_scan(family, 8, (0, 1), samples=10)
print("discriminant:", scan.discriminant)
print("x~ enclosure:", [e.as_floats() for e in scan.sign_changes])
for row in scan.rows:
    print(f"  x={float(row.param):.3f} disc sign {row.discriminant_sign:+d} roots in (-1,1): {row.root_count}")

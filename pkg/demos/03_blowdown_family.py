"""Obstruction at the initial ray for a family with a blown-down infinity
section, against its closed form."""
from fractions import Fraction

from sasaki_cone import make_setup, obstruction_raw

for dinf in range(4):
    s = make_setup([(3, 2, Fraction(dinf + 2, dinf + 4))], dinf=dinf)
    phi = obstruction_raw(s, 0, s.m + 2).value
    closed = Fraction(-3 * 2 ** (2 * dinf + 11) * (2 * dinf + 5) * (11 * dinf + 28),
                      (dinf + 1) * (dinf + 4) ** 8 * (dinf + 5))
    print(f"dinf={dinf}: Phi(0) = {phi}  closed form {closed}")

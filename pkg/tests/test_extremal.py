import random
from fractions import Fraction

import pytest

from conftest import random_setup, v1
from sasaki_cone.admissible import make_setup, moment_poly
from sasaki_cone.exact_algebra import Poly
from sasaki_cone.extremal import (
    CSC,
    WEIGHTED,
    NonPolynomialResidue,
    build_extremal_poly,
    check_endpoints,
    csc_constant,
    futaki_obstruction,
    obstruction_raw,
    scal_identity_check,
    solve_affine,
    system_determinant,
    verify_ode,
)
from sasaki_cone.integrals import alpha, beta


def reference_A2(c):
    return 2 * (12305 * c**6 - 13795 * c**4 + 6227 * c**2 - 16401) / (115 * c**4 - 3686 * c**2 + 4543)


def reference_F(c, z):
    num = (
        115 * c**4 * (553 * z * z - 535)
        + 110070 * c**3 * z * (1 - z * z)
        + c * c * (98651 - 164999 * z * z)
        - 149760 * c * z * (1 - z * z)
        + 154 * (568 * z * z - 37)
    )
    return (1 - z * z) * num / (50 * (115 * c**4 - 3686 * c**2 + 4543))


def test_affine_at_zero(s1):
    A = solve_affine(s1, 0, 5)
    assert A.A1 == 0
    assert A.A2 == Fraction(-32802, 4543)


@pytest.mark.parametrize("c", [Fraction(1, 3), Fraction(1, 2), Fraction(-5, 7)])
def test_affine_and_F_match_reference(s1, c):
    A = solve_affine(s1, c, 5)
    assert A.A2 == reference_A2(c)
    ep = build_extremal_poly(s1, c, 5)
    for z in (Fraction(-2, 3), Fraction(1, 5), Fraction(7, 9)):
        assert ep.F(z) == reference_F(c, z)


def test_symmetric_setup_has_no_linear_term():
    s = make_setup([(2, 3, "1/3"), (2, -3, "-1/3")])
    assert solve_affine(s, 0, s.m + 2).A1 == 0


def test_F_at_zero_two_curves(s1):
    ep = build_extremal_poly(s1, 0, 5)
    assert ep.F == Poly([1, 0, -1]) * Poly([-37, 0, 568]) / 1475
    recon = verify_ode(ep)
    assert recon == Poly([Fraction(-32802, 4543)]) * moment_poly(s1)


def test_total_curvature_identity(s1):
    total = scal_identity_check(s1, 0, 5)
    assert total == 2 * beta(s1, 0, 0, -3).value == Fraction(-284, 25)


def test_non_polynomial_residue(s1):
    # p below m+2 leaves 1/u terms in Q
    with pytest.raises((NonPolynomialResidue, ArithmeticError)):
        build_extremal_poly(s1, Fraction(1, 3), 3)
    with pytest.raises(ValueError):
        build_extremal_poly(s1, Fraction(1, 3), Fraction(9, 2))


def test_orbifold_endpoint_slopes():
    s = make_setup([(1, 2, "1/2"), (1, 1, "1/3")], m0=2, minf=3)
    ep = build_extremal_poly(s, Fraction(1, 4), s.m + 2)
    pc = moment_poly(s)
    dF = ep.F.derivative()
    assert dF(Fraction(-1)) == 2 * pc(Fraction(-1)) / 3
    assert dF(Fraction(1)) == -2 * pc(Fraction(1)) / 2


def test_blowdown_zero_orders():
    s = make_setup([(1, 2, "1/2")], d0=3, dinf=1)
    ep = build_extremal_poly(s, Fraction(1, 3), 9)
    red = ep.reduced()
    assert red(Fraction(-1)) != 0 and red(Fraction(1)) != 0
    verify_ode(ep)


def test_weighted_obstruction_vanishes_iff_A1_zero():
    rng = random.Random(3)
    for _ in range(10):
        s = random_setup(rng)
        p = s.m + 2 + rng.randint(0, 2)
        c = Fraction(rng.randint(-9, 9), 10)
        A = solve_affine(s, c, p)
        det = system_determinant(s, c, p)
        assert A.A1 == 2 * obstruction_raw(s, c, p, WEIGHTED).value / det
        assert A.A1 - c * A.A2 == 2 * obstruction_raw(s, c, p, CSC).value / det


def test_futaki_chain_forms_agree():
    s = make_setup([(1, 1, "1/2"), (1, 3, "-2/5")])
    m, c = s.m, Fraction(2, 7)
    lhs = alpha(s, c, 1, -(m + 2)) * beta(s, c, 0, -(m + 1)) - alpha(s, c, 0, -(m + 2)) * beta(s, c, 1, -(m + 1))
    rhs = alpha(s, c, 1, -(m + 2)) * beta(s, c, 0, -m) - alpha(s, c, 0, -(m + 1)) * beta(s, c, 1, -(m + 1))
    assert lhs == rhs
    ob = futaki_obstruction(s, c)
    assert ob.futaki == 2 * ob.rational / alpha(s, c, 0, -(m + 1)).value


def test_v1_obstruction_at_zero():
    # the csc and weighted forms coincide at c = 0
    for dinf in range(4):
        s = v1(dinf)
        a = obstruction_raw(s, 0, s.m + 2, CSC).value
        b = obstruction_raw(s, 0, s.m + 2, WEIGHTED).value
        assert a == b
    assert obstruction_raw(v1(0), 0, 6).value == Fraction(-21, 8)


def test_csc_constant_equals_A2_when_constant(s1):
    # at c = 0 for the symmetric pair, Scal is the constant A2 and equals C
    assert csc_constant(s1, 0) == solve_affine(s1, 0, 5).A2


def test_endpoint_checks_random():
    rng = random.Random(11)
    for _ in range(15):
        s = random_setup(rng)
        c = Fraction(rng.randint(-19, 19), 20)
        ep = build_extremal_poly(s, c, s.m + 2)
        check_endpoints(ep)
        verify_ode(ep)

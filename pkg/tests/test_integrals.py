import random
from fractions import Fraction

import mpmath
import pytest
import sympy as sp

from conftest import random_setup
from sasaki_cone.admissible import make_setup, moment_poly, sum_term_poly
from sasaki_cone.exact_algebra import Poly
from sasaki_cone.integrals import (
    LogScalar,
    QuadratureError,
    alpha,
    alpha_beta_numeric,
    asymptotic_lead,
    beta,
    boundary_terms,
    weighted_integral,
)

T = sp.Symbol("t")


def _sym(p):
    return sum(sp.Rational(c.numerator, c.denominator) * T**i for i, c in enumerate(p.coeffs))


def test_two_curve_values(s1):
    assert alpha(s1, 0, 0, 0).value == Fraction(118, 75)
    assert beta(s1, 0, 0, -3).value == Fraction(-142, 25)
    assert beta(s1, 0, 1, -3).value == 0


@pytest.mark.parametrize("c", [Fraction(1, 3), Fraction(-2, 5), Fraction(7, 8)])
@pytest.mark.parametrize("r, k", [(0, -4), (1, -5), (2, -1), (0, 3), (1, -2)])
def test_alpha_beta_against_sympy(s1, c, r, k):
    cs = sp.Rational(c.numerator, c.denominator)
    w = (cs * T + 1) ** k * T**r
    a_ref = sp.integrate(w * _sym(moment_poly(s1)), (T, -1, 1))
    b_ref = sp.integrate(w * _sym(sum_term_poly(s1)) / 2, (T, -1, 1))
    b_ref += sp.Rational(boundary_terms(s1, c, r, k).numerator, boundary_terms(s1, c, r, k).denominator)
    with mpmath.workdps(80):
        for ours, ref in ((alpha(s1, c, r, k), a_ref), (beta(s1, c, r, k), b_ref)):
            assert abs(ours.to_mpf(260) - mpmath.mpf(str(sp.N(ref, 80)))) < mpmath.mpf(10) ** -60


def test_log_term_shape():
    # int (ct+1)^-1 dt = ln((1+c)/(1-c))/c
    v = weighted_integral(Poly([1]), Fraction(1, 2), -1)
    assert v.rat_part == 0 and v.log_coeff == 2
    with pytest.raises(ArithmeticError):
        v.value


def test_logscalar_arithmetic():
    c = Fraction(1, 3)
    a = LogScalar(Fraction(1), Fraction(2), c)
    b = LogScalar.rational(3, c)
    assert (a * b).log_coeff == 6
    with pytest.raises(ArithmeticError):
        a * a
    with pytest.raises(ValueError):
        a + LogScalar.rational(1, Fraction(1, 2))


def test_recursions_randomized():
    rng = random.Random(7)
    for _ in range(30):
        s = random_setup(rng)
        c = Fraction(rng.randint(-9, 9), 10)
        r, k = rng.randint(0, 2), rng.randint(-s.m - 3, 2)
        for fn in (alpha, beta):
            lhs = fn(s, c, r, k)
            rhs = fn(s, c, r + 1, k - 1) * c + fn(s, c, r, k - 1)
            assert lhs == rhs


def test_alpha_derivative_identity():
    # d/dc alpha_{r,k} = k alpha_{r+1,k-1}
    s = make_setup([(1, 1, "1/2"), (2, 0, "-1/3")])
    c, h = Fraction(1, 5), Fraction(1, 10**9)
    for r, k in ((0, -5), (1, -4)):
        fd = (alpha(s, c + h, r, k).to_mpf() - alpha(s, c - h, r, k).to_mpf()) / (2 * float(h))
        exact = k * alpha(s, c, r + 1, k - 1).to_mpf()
        assert abs(fd - exact) <= 1e-12 * abs(exact)


def test_numeric_backend_agrees(s1):
    for c, r, k in ((Fraction(1, 3), 0, -4), (Fraction(-99, 100), 1, -5), (Fraction(1, 2), 0, Fraction(-7, 2))):
        num = alpha_beta_numeric(s1, c, r, k, "beta")
        if isinstance(k, int):
            ex = beta(s1, c, r, k).to_mpf()
            assert abs(num.value - ex) <= abs(ex) * mpmath.mpf(10) ** -40
        else:
            assert num.rel_error < mpmath.mpf(10) ** -40


def test_numeric_backend_rejects_low_precision(s1):
    with pytest.raises(ValueError):
        alpha_beta_numeric(s1, 0, 0, -2, prec=32)
    with pytest.raises(QuadratureError):
        alpha_beta_numeric(s1, Fraction(1, 3), 0, -4, rel_tol=Fraction(1, 10**500))


def test_asymptotic_lead_alpha(nonneg):
    k = nonneg.m + 1
    lead = asymptotic_lead(nonneg, "alpha", k, 1)
    eps = Fraction(1, 2**40)
    val = alpha(nonneg, 1 - eps, 0, -k).value * eps**lead.exponent
    assert abs(val / lead.constant - 1) < Fraction(1, 2**30)
    with pytest.raises(ValueError):
        asymptotic_lead(nonneg, "alpha", nonneg.m, 1)

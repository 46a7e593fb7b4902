"""Exact and numeric evaluation of the weighted moment integrals

    alpha_{r,k}(c) = int_{-1}^{1} (c t + 1)^k t^r p_c(t) dt
    beta_{r,k}(c)  = int_{-1}^{1} (c t + 1)^k t^r sum_a x_a d_a s_a p_c(t)/(1 + x_a t) dt
                     + (-1)^r (1 - c)^k p_c(-1)/m_inf + (1 + c)^k p_c(1)/m_0

and their boundary asymptotics as c -> +-1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

from .admissible import AdmissibleSetup, factor_polys, moment_poly, sum_term_poly, validate
from .exact_algebra import DEFAULT_PRECISION, Poly, RatLike, as_rat, to_mpf


@dataclass(frozen=True)
class LogScalar:
    """``rat_part + log_coeff * ln((1 + c)/(1 - c))`` with exact rationals."""

    rat_part: Fraction
    log_coeff: Fraction
    c: Fraction

    def __post_init__(self):
        if not -1 < self.c < 1:
            raise ValueError("LogScalar needs -1 < c < 1")

    @classmethod
    def rational(cls, value: RatLike, c: RatLike) -> "LogScalar":
        return cls(as_rat(value), Fraction(0), as_rat(c))

    @property
    def is_rational(self) -> bool:
        return self.log_coeff == 0

    @property
    def value(self) -> Fraction:
        """The exact rational value; raises if a log part is present."""
        if self.log_coeff != 0:
            raise ArithmeticError(f"value carries a log term ({self.log_coeff} * L)")
        return self.rat_part

    def _check(self, other: "LogScalar"):
        if self.c != other.c:
            raise ValueError("LogScalars evaluated at different c")

    def __add__(self, other):
        if isinstance(other, LogScalar):
            self._check(other)
            return LogScalar(self.rat_part + other.rat_part, self.log_coeff + other.log_coeff, self.c)
        return LogScalar(self.rat_part + as_rat(other), self.log_coeff, self.c)

    __radd__ = __add__

    def __neg__(self):
        return LogScalar(-self.rat_part, -self.log_coeff, self.c)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, LogScalar):
            self._check(other)
            if self.log_coeff and other.log_coeff:
                raise ArithmeticError("product of two log-bearing values is not a LogScalar")
            if other.log_coeff:
                self, other = other, self
            k = other.rat_part
        else:
            k = as_rat(other)
        return LogScalar(self.rat_part * k, self.log_coeff * k, self.c)

    __rmul__ = __mul__

    def __truediv__(self, k):
        k = as_rat(k)
        return LogScalar(self.rat_part / k, self.log_coeff / k, self.c)

    def to_mpf(self, prec: int = DEFAULT_PRECISION):
        with mpmath.workprec(prec + 16):
            v = to_mpf(self.rat_part)
            if self.log_coeff:
                c = to_mpf(self.c)
                v += to_mpf(self.log_coeff) * mpmath.log((1 + c) / (1 - c))
            return +v

    def __float__(self) -> float:
        return float(self.to_mpf(64))


def weighted_integral(g: Poly, c: RatLike, k: int) -> LogScalar:
    """Exact ``int_{-1}^{1} (c t + 1)^k g(t) dt`` for integer ``k``."""
    c = as_rat(c)
    if not -1 < c < 1:
        raise ValueError("need -1 < c < 1")
    if not isinstance(k, int):
        raise TypeError("exact path requires integer k (use alpha_beta_numeric)")
    if k >= 0:
        return LogScalar.rational((g * Poly([1, c]) ** k).definite_integral(-1, 1), c)
    if c == 0:
        return LogScalar.rational(g.definite_integral(-1, 1), c)
    # u = c t + 1 maps [-1, 1] onto [1 - c, 1 + c] (reversed when c < 0)
    b = g.compose_affine(1 / c, -1 / c)
    lo, hi = 1 - c, 1 + c
    rat = Fraction(0)
    logc = Fraction(0)
    for j, bj in enumerate(b.coeffs):
        if bj == 0:
            continue
        e = k + j
        if e == -1:
            logc += bj
        else:
            rat += bj * (hi ** (e + 1) - lo ** (e + 1)) / (e + 1)
    return LogScalar(rat / c, logc / c, c)


@lru_cache(maxsize=256)
def _alpha_integrand(setup: AdmissibleSetup, r: int) -> Poly:
    return Poly.monomial(r) * moment_poly(setup)


@lru_cache(maxsize=256)
def _beta_integrand(setup: AdmissibleSetup, r: int) -> Poly:
    return Poly.monomial(r) * sum_term_poly(setup) / 2


def _prepared(setup: AdmissibleSetup) -> AdmissibleSetup:
    return setup if setup.hat_factors else validate(setup)


def alpha(setup: AdmissibleSetup, c: RatLike, r: int, k: int) -> LogScalar:
    setup = _prepared(setup)
    if r < 0:
        raise ValueError("r must be nonnegative")
    return weighted_integral(_alpha_integrand(setup, r), c, k)


def boundary_terms(setup: AdmissibleSetup, c: RatLike, r: int, k: int) -> Fraction:
    setup = _prepared(setup)
    c = as_rat(c)
    pc = moment_poly(setup)
    w_minus, w_plus = setup.boundary_weights()
    out = Fraction(0)
    pm, pp = pc(Fraction(-1)), pc(Fraction(1))
    if pm:
        out += (-1) ** r * (1 - c) ** k * pm * w_minus
    if pp:
        out += (1 + c) ** k * pp * w_plus
    return out


def beta(setup: AdmissibleSetup, c: RatLike, r: int, k: int) -> LogScalar:
    setup = _prepared(setup)
    if r < 0:
        raise ValueError("r must be nonnegative")
    return weighted_integral(_beta_integrand(setup, r), c, k) + boundary_terms(setup, c, r, k)


# ---------------------------------------------------------------------------
# numeric backend


class QuadratureError(RuntimeError):
    pass


@dataclass(frozen=True)
class NumericValue:
    value: mpmath.mpf
    rel_error: mpmath.mpf
    prec: int


def _breakpoints(c) -> list:
    """Subdivide [-1, 1] geometrically towards the end where c t + 1 is
    smallest, so the peak of (c t + 1)^k is resolved."""
    pts = [mpmath.mpf(-1), mpmath.mpf(1)]
    gap = 1 - abs(c)
    if gap < mpmath.mpf("0.25"):
        h = gap
        inner = []
        while h < 1:
            inner.append(-1 + h)
            h *= 4
        if c < 0:
            inner = [-p for p in inner]
        pts = sorted(set(pts + inner))
    return pts


def alpha_beta_numeric(
    setup: AdmissibleSetup,
    c,
    r: int,
    k,
    which: str = "alpha",
    prec: int = DEFAULT_PRECISION,
    rel_tol=None,
    max_degree: int = 10,
) -> NumericValue:
    """Tanh-sinh quadrature of alpha or beta at working precision ``prec``
    bits; ``k`` may be any rational (or float)."""
    setup = _prepared(setup)
    if prec < 64:
        raise ValueError("precision must be at least 64 bits")
    if which not in ("alpha", "beta"):
        raise ValueError("which must be 'alpha' or 'beta'")
    with mpmath.workprec(prec + 32):
        cm = to_mpf(c) if not isinstance(c, mpmath.mpf) else +c
        if not -1 < cm < 1:
            raise ValueError("need |c| < 1")
        km = to_mpf(k) if not isinstance(k, (float, mpmath.mpf)) else mpmath.mpf(k)
        g = _alpha_integrand(setup, r) if which == "alpha" else _beta_integrand(setup, r)

        def f(t):
            return (cm * t + 1) ** km * g.eval_mp(t)

        val, err = mpmath.quad(f, _breakpoints(cm), error=True, maxdegree=max_degree)
        if which == "beta":
            pc = moment_poly(setup)
            w_minus, w_plus = setup.boundary_weights()
            val += (-1) ** r * (1 - cm) ** km * to_mpf(pc(Fraction(-1)) * w_minus)
            val += (1 + cm) ** km * to_mpf(pc(Fraction(1)) * w_plus)
        scale = abs(val) if val != 0 else mpmath.mpf(1)
        rel = err / scale
        tol = mpmath.mpf(2) ** (-int(prec * 0.75)) if rel_tol is None else to_mpf(rel_tol)
        if rel > tol:
            raise QuadratureError(
                f"quadrature reached relative error {mpmath.nstr(rel, 5)} > {mpmath.nstr(tol, 5)}"
            )
        return NumericValue(+val, rel, prec)


# ---------------------------------------------------------------------------
# boundary asymptotics


@dataclass(frozen=True)
class AsymptoticLead:
    """``value ~ constant / (1 -+ c)^exponent`` as c approaches ``side``."""

    side: int  # +1 for c -> 1-, -1 for c -> -1+
    exponent: int
    constant: Fraction


def asymptotic_lead(setup: AdmissibleSetup, which: str, k: int, side: int) -> AsymptoticLead:
    """Leading blow-up of alpha_{0,-k} (``which='alpha'``, k >= m+1) or
    beta_{0,-k} (``which='beta'``, k >= m) at c -> side."""
    setup = _prepared(setup)
    if side not in (1, -1):
        raise ValueError("side must be +1 or -1")
    m = setup.m
    p0, pinf, q0, qinf = factor_polys(setup)
    d = setup.d0 if side == 1 else setup.dinf
    f = math.factorial
    if which == "alpha":
        if k < m + 1:
            raise ValueError(f"alpha asymptotics need k >= m+1 = {m + 1}")
        edge_val = p0(Fraction(-1)) if side == 1 else pinf(Fraction(1))
        const = Fraction(f(k - 2 - d) * f(d), f(k - 1)) * edge_val
        return AsymptoticLead(side, k - 1 - d, const)
    if which == "beta":
        if k < m:
            raise ValueError(f"beta asymptotics need k >= m = {m}")
        if d == 0:
            pc = moment_poly(setup)
            w_minus, w_plus = setup.boundary_weights()
            const = pc(Fraction(-1)) * w_minus if side == 1 else pc(Fraction(1)) * w_plus
            return AsymptoticLead(side, k, const)
        q = q0 if side == 1 else qinf
        edge_val = q(Fraction(-1)) if side == 1 else q(Fraction(1))
        const = Fraction(f(k - 1 - d) * f(d - 1), f(k - 1)) * edge_val
        return AsymptoticLead(side, k - d, const)
    raise ValueError("which must be 'alpha' or 'beta'")

"""Weighted extremal affine scalar curvature, the extremal polynomial
F_{c,p}(z) and the Futaki-type obstructions along the 2-dimensional
Reeb subcone f = c z + 1."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .admissible import AdmissibleSetup, factor_polys, moment_poly, sum_term_poly, validate
from .exact_algebra import Poly, RatLike, as_rat
from .integrals import LogScalar, alpha, beta

CSC = "csc"
WEIGHTED = "weighted"
KINDS = (CSC, WEIGHTED)


class NonPolynomialResidue(ArithmeticError):
    """The extremal profile is not a polynomial for this weight."""


class IdentityFailure(AssertionError):
    pass


def _prepared(setup: AdmissibleSetup) -> AdmissibleSetup:
    return setup if setup.hat_factors else validate(setup)


def _int_weight(p) -> int:
    p = as_rat(p)
    if p.denominator != 1:
        raise ValueError("the exact path needs an integer weight p")
    return int(p)


@dataclass(frozen=True)
class AffineScal:
    """Scal_{cz+1,p} = A1 z + A2."""

    A1: Fraction
    A2: Fraction
    c: Fraction
    p: int

    def __call__(self, z):
        return self.A1 * z + self.A2

    def as_poly(self) -> Poly:
        return Poly([self.A2, self.A1])


def _moments(setup, c, p):
    k = -(1 + p)
    a0, a1, a2 = (alpha(setup, c, r, k).value for r in (0, 1, 2))
    b0, b1 = (beta(setup, c, r, 1 - p).value for r in (0, 1))
    return a0, a1, a2, b0, b1


def solve_affine(setup: AdmissibleSetup, c: RatLike, p: RatLike) -> AffineScal:
    """Cramer solution of

        alpha_{1,-(1+p)} A1 + alpha_{0,-(1+p)} A2 = 2 beta_{0,1-p}
        alpha_{2,-(1+p)} A1 + alpha_{1,-(1+p)} A2 = 2 beta_{1,1-p}
    """
    setup = _prepared(setup)
    c, p = as_rat(c), _int_weight(p)
    a0, a1, a2, b0, b1 = _moments(setup, c, p)
    det = a1 * a1 - a0 * a2
    # strict Cauchy-Schwarz for a positive weight on [-1, 1]
    assert det < 0, "singular affine system"
    A1 = (2 * b0 * a1 - 2 * b1 * a0) / det
    A2 = (2 * b1 * a1 - 2 * b0 * a2) / det
    return AffineScal(A1, A2, c, p)


def system_determinant(setup: AdmissibleSetup, c: RatLike, p: RatLike) -> Fraction:
    setup = _prepared(setup)
    a0, a1, a2, _, _ = _moments(setup, as_rat(c), _int_weight(p))
    return a1 * a1 - a0 * a2


def scal_identity_check(setup: AdmissibleSetup, c: RatLike, p: RatLike, affine: AffineScal | None = None) -> Fraction:
    """Assert both linear equations and the total-curvature identity

        A1 alpha_{1,-p} + A2 alpha_{0,-p} = 2 beta_{0,2-p}

    (for p = m+2 this is S_c = 2 beta_{0,-m}).  Returns S_c."""
    setup = _prepared(setup)
    c, p = as_rat(c), _int_weight(p)
    A = affine or solve_affine(setup, c, p)
    a0, a1, a2, b0, b1 = _moments(setup, c, p)
    if A.A1 * a1 + A.A2 * a0 != 2 * b0 or A.A1 * a2 + A.A2 * a1 != 2 * b1:
        raise IdentityFailure("affine system not satisfied")
    total = A.A1 * alpha(setup, c, 1, -p).value + A.A2 * alpha(setup, c, 0, -p).value
    if total != 2 * beta(setup, c, 0, 2 - p).value:
        raise IdentityFailure("total scalar curvature identity failed")
    return total


@dataclass(frozen=True)
class ExtremalPoly:
    F: Poly
    c: Fraction
    p: int
    affine: AffineScal
    setup: AdmissibleSetup

    def __call__(self, z):
        return self.F(z)

    def G_numerator(self) -> Poly:
        """F itself; G = F / (c z + 1)^(p-1)."""
        return self.F

    def reduced(self) -> Poly:
        """F / ((1+z)^(d0+1) (1-z)^(dinf+1)), positive at both ends."""
        s = self.setup
        lin = Poly([1, 1]) ** (s.d0 + 1) * Poly([1, -1]) ** (s.dinf + 1)
        return self.F.exact_div(lin)


def _laurent_mul_poly(b: Poly, shift: int) -> dict[int, Fraction]:
    return {j + shift: v for j, v in enumerate(b.coeffs) if v}


def build_extremal_poly(setup: AdmissibleSetup, c: RatLike, p: RatLike) -> ExtremalPoly:
    """Exact F_{c,p}(z) = (c z + 1)^(p-1) G(z) with

        Q(z) = p_c T(z) / (c z + 1)^(p-1) - (A1 z + A2) p_c / (c z + 1)^(p+1)
        G(z) = 2 p_c(-1)/m_inf/(1 - c)^(p-1) (z + 1) + int_{-1}^{z} Q(t)(z - t) dt

    where T = sum_a 2 x_a d_a s_a/(1 + x_a z)."""
    setup = _prepared(setup)
    c, p = as_rat(c), _int_weight(p)
    if p < 2:
        raise ValueError("weight p must be >= 2")
    A = solve_affine(setup, c, p)
    pc = moment_poly(setup)
    T = sum_term_poly(setup)
    w_minus, _ = setup.boundary_weights()
    edge = 2 * pc(Fraction(-1)) * w_minus
    if c == 0:
        Q = T - A.as_poly() * pc
        Q2 = Q.antiderivative().antiderivative()
        Q1 = Q.antiderivative()
        G = Q2 - Q2(Fraction(-1)) - Q1(Fraction(-1)) * Poly([1, 1]) + Poly([1, 1]) * edge
        F = G
    else:
        # Laurent expansion in u = c z + 1; z = (u - 1)/c
        n1 = T.compose_affine(1 / c, -1 / c)
        n2 = (A.as_poly() * pc).compose_affine(1 / c, -1 / c)
        lau: dict[int, Fraction] = {}
        for e, v in _laurent_mul_poly(n1, -(p - 1)).items():
            lau[e] = lau.get(e, Fraction(0)) + v
        for e, v in _laurent_mul_poly(n2, -(p + 1)).items():
            lau[e] = lau.get(e, Fraction(0)) - v
        lau = {e: v for e, v in lau.items() if v}
        for e in (-1, -2):
            if e in lau:
                raise NonPolynomialResidue(
                    f"u^{e} term in Q for p={p}; F is not a polynomial (needs p >= m+2)"
                )
        # double antiderivative in z: d/dz = c d/du
        q2 = {e + 2: v / (c * c * (e + 1) * (e + 2)) for e, v in lau.items()}
        q1 = {e + 1: v / (c * (e + 1)) for e, v in lau.items()}
        u_minus = 1 - c  # u at z = -1
        q2_at = sum(v * u_minus**e for e, v in q2.items())
        q1_at = sum(v * u_minus**e for e, v in q1.items())
        # G = q2(u) - q2_at - q1_at (z+1) + edge (z+1)/(1-c)^(p-1); z + 1 = (u - u_minus)/c
        lin_coef = (edge / (1 - c) ** (p - 1) - q1_at) / c
        g: dict[int, Fraction] = dict(q2)
        g[0] = g.get(0, Fraction(0)) - q2_at - lin_coef * u_minus
        g[1] = g.get(1, Fraction(0)) + lin_coef
        f_u: dict[int, Fraction] = {}
        for e, v in g.items():
            if v:
                f_u[e + p - 1] = f_u.get(e + p - 1, Fraction(0)) + v
        neg = {e: v for e, v in f_u.items() if e < 0 and v}
        if neg:
            raise NonPolynomialResidue(f"negative powers of (c z + 1) remain: {sorted(neg)}")
        top = max(f_u, default=0)
        F = Poly([f_u.get(e, 0) for e in range(top + 1)]).compose_affine(c, 1)
    ep = ExtremalPoly(F, c, p, A, setup)
    check_endpoints(ep)
    return ep


def check_endpoints(ep: ExtremalPoly) -> None:
    """F(+-1) = 0, F'(-1) = 2 p_c(-1)/m_inf, F'(1) = -2 p_c(1)/m_0, and the
    momentum profile F/p_c has slopes 2/m_inf and -2/m_0 at the ends."""
    s = ep.setup
    F = ep.F
    pc = moment_poly(s)
    w_minus, w_plus = s.boundary_weights()
    one, mone = Fraction(1), Fraction(-1)
    if F(one) != 0 or F(mone) != 0:
        raise IdentityFailure("F does not vanish at z = +-1")
    dF = F.derivative()
    if dF(mone) != 2 * pc(mone) * w_minus or dF(one) != -2 * pc(one) * w_plus:
        raise IdentityFailure("endpoint slopes of F are wrong")
    p0, pinf, _, _ = factor_polys(s)
    try:
        P0 = F.exact_div(Poly([1, 1]) ** (s.d0 + 1))
        Pinf = F.exact_div(Poly([1, -1]) ** (s.dinf + 1))
    except ArithmeticError:
        raise IdentityFailure("F lacks the blow-down zero order at an endpoint") from None
    if P0(mone) != 2 * p0(mone) * w_minus or Pinf(one) != 2 * pinf(one) * w_plus:
        raise IdentityFailure("momentum profile slopes at the ends are wrong")


def verify_ode(ep: ExtremalPoly) -> Poly:
    """Reconstruct Scal from G = F/(c z+1)^(p-1) and assert it equals
    A1 z + A2.  Uses

        p_c Scal = -(c z+1)^(p+1) G'' + (c z+1)^2 T,
        (c z+1)^(p+1) G'' = u^2 F'' + 2(1-p) c u F' + p(p-1) c^2 F.

    Returns the reconstructed p_c * Scal."""
    s, c, p, F = ep.setup, ep.c, ep.p, ep.F
    u = Poly([1, c])
    H = u * u * F.derivative(2) + u * F.derivative() * (2 * (1 - p) * c) + F * (p * (p - 1) * c * c)
    recon = -H + u * u * sum_term_poly(s)
    expected = ep.affine.as_poly() * moment_poly(s)
    if recon != expected:
        raise IdentityFailure("weighted scalar curvature ODE not satisfied")
    return recon


# ---------------------------------------------------------------------------
# obstructions


@dataclass(frozen=True)
class ObstructionValue:
    value: LogScalar
    c: Fraction
    p: int
    kind: str
    futaki: Fraction | None = None

    @property
    def rational(self) -> Fraction:
        return self.value.value


def obstruction_raw(setup: AdmissibleSetup, c: RatLike, p: RatLike, kind: str = CSC) -> LogScalar:
    """kind='csc':      alpha_{1,-p} beta_{0,1-p} - alpha_{0,-p} beta_{1,1-p}
                        (vanishes iff A1 - c A2 = 0, i.e. Scal_{f,p}/f constant)
    kind='weighted': alpha_{1,-(1+p)} beta_{0,1-p} - alpha_{0,-(1+p)} beta_{1,1-p}
                        (vanishes iff A1 = 0)"""
    setup = _prepared(setup)
    c, p = as_rat(c), _int_weight(p)
    if kind == CSC:
        k = -p
    elif kind == WEIGHTED:
        k = -(1 + p)
    else:
        raise ValueError(f"unknown obstruction kind {kind!r}")
    a1, a0 = alpha(setup, c, 1, k), alpha(setup, c, 0, k)
    b0, b1 = beta(setup, c, 0, 1 - p), beta(setup, c, 1, 1 - p)
    return a1 * b0 - a0 * b1


def futaki_obstruction(setup: AdmissibleSetup, c: RatLike, p: RatLike | None = None, kind: str = CSC) -> ObstructionValue:
    """Obstruction value at c.  For kind='csc' and p = m+2 the normalized
    transversal Futaki invariant 2*value/alpha_{0,-(m+1)} is attached."""
    setup = _prepared(setup)
    c = as_rat(c)
    p = setup.m + 2 if p is None else _int_weight(p)
    val = obstruction_raw(setup, c, p, kind)
    fut = None
    if kind == CSC and p == setup.m + 2 and val.is_rational:
        fut = 2 * val.value / alpha(setup, c, 0, -(setup.m + 1)).value
    return ObstructionValue(val, c, p, kind, fut)


def csc_constant(setup: AdmissibleSetup, c: RatLike) -> Fraction:
    """C_{K_c} = 2 beta_{0,-m} / alpha_{0,-m-1}."""
    setup = _prepared(setup)
    m = setup.m
    return 2 * beta(setup, c, 0, -m).value / alpha(setup, c, 0, -m - 1).value


def structural_pole_orders(setup: AdmissibleSetup, p: int, kind: str = CSC) -> tuple[int, int]:
    """Generic pole orders of the obstruction at c = 1 and c = -1.

    The leading boundary terms of the two products cancel in the weighted
    obstruction exactly when p = 2d + 2 (d the blow-down dimension on that
    side), dropping the order by one; the CSC form never cancels."""
    setup = _prepared(setup)
    out = []
    for d in (setup.d0, setup.dinf):
        if kind == CSC:
            out.append(2 * p - 3 - 2 * d)
        else:
            out.append(2 * p - 2 - 2 * d - (1 if d >= 1 and p == 2 * d + 2 else 0))
    return out[0], out[1]

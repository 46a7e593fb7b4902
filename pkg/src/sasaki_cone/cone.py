"""Exploration of the 2-dimensional Reeb subcone c in (-1, 1): extremal
intervals, CSC rays, Einstein-Hilbert functionals and the cone boundary."""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import mpmath

from .admissible import AdmissibleSetup, Hypotheses, theorem_hypotheses, validate
from .exact_algebra import (
    DEFAULT_REFINE_WIDTH,
    UNIT_OPEN,
    Interval,
    Poly,
    RatLike,
    as_rat,
    bivariate_dz,
    bivariate_eval_c,
    bivariate_eval_z,
    certify_positive_on_box,
    count_real_roots,
    discriminant,
    interval_eval,
    interpolate,
    isolate_roots,
    poly_gcd,
    refine_root,
    resultant_in_z,
    sample_points,
    square_free_part,
    to_mpf,
)
from .extremal import (
    CSC,
    WEIGHTED,
    build_extremal_poly,
    obstruction_raw,
    structural_pole_orders,
    system_determinant,
)
from .integrals import alpha, beta

DEFAULT_DEGREE_CEILING = 512
HOLDOUT = (Fraction(-611, 1009), Fraction(233, 1009), Fraction(787, 1009))
NEAR_ONE = 1 - Fraction(1, 2**20)


class DegreeCeilingExceeded(ArithmeticError):
    pass


class UnresolvedEnclosure(ArithmeticError):
    pass


def _prepared(setup: AdmissibleSetup) -> AdmissibleSetup:
    return setup if setup.hat_factors else validate(setup)


def interpolate_verified(
    func: Callable[[Fraction], Sequence[Fraction]],
    start_degree: int,
    ceiling: int = DEFAULT_DEGREE_CEILING,
    holdout: Sequence[Fraction] = HOLDOUT,
    points: Callable[[int], list[Fraction]] = sample_points,
) -> list[Poly]:
    """Interpolate a vector of polynomials in one variable from exact
    samples, doubling the degree bound until every holdout point agrees.

    ``func`` returns a tuple of values (one per component)."""
    cache: dict[Fraction, tuple] = {}

    def f(c):
        if c not in cache:
            cache[c] = tuple(func(c))
        return cache[c]

    checks = [(h, f(h)) for h in holdout]
    n = min(max(1, start_degree), max(1, ceiling))
    while True:
        xs = [x for x in points(n + 1 + len(holdout)) if x not in holdout][: n + 1]
        vals = [f(x) for x in xs]
        comps = [interpolate([(x, v[i]) for x, v in zip(xs, vals)]) for i in range(len(vals[0]))]
        if all(comps[i](h) == hv[i] for h, hv in checks for i in range(len(comps))):
            return comps
        if n >= ceiling:
            raise DegreeCeilingExceeded(f"interpolation did not verify up to degree {ceiling}")
        n = min(2 * n, ceiling)


def _strip_linear(P: Poly, root: Fraction, limit: int) -> tuple[Poly, int]:
    """Divide out (1 - c/root), i.e. (1 - c) or (1 + c) for root = +-1, up to
    ``limit`` times; returns (quotient, count)."""
    lin = Poly([1, -1 / root])
    k = 0
    while k < limit and not P.is_zero() and P(root) == 0:
        P = P.exact_div(lin)
        k += 1
    return P, k


# ---------------------------------------------------------------------------
# extremality


def is_extremal(setup: AdmissibleSetup, c: RatLike, p: RatLike) -> bool:
    """F_{c,p} > 0 on (-1, 1), decided exactly by Sturm counting."""
    F = build_extremal_poly(setup, c, p).F
    return F(Fraction(0)) > 0 and count_real_roots(F, UNIT_OPEN) == 0


# ---------------------------------------------------------------------------
# obstruction numerator


@dataclass(frozen=True)
class ObstructionPoly:
    """numerator(c) = scale * Phi(c) * (1-c)^a * (1+c)^b."""

    numerator: Poly
    exponents: tuple[int, int]
    scale: Fraction
    kind: str
    p: int
    verified_degree: int

    @property
    def identically_zero(self) -> bool:
        return self.numerator.is_zero()

    @property
    def clearing_exponent(self) -> int:
        return max(self.exponents)

    def phi(self, c: RatLike) -> Fraction:
        c = as_rat(c)
        a, b = self.exponents
        return self.numerator(c) / (self.scale * (1 - c) ** a * (1 + c) ** b)

    def roots(self, width: RatLike = DEFAULT_REFINE_WIDTH) -> list[Interval]:
        if self.identically_zero:
            raise ValueError("identically zero obstruction")
        sq = square_free_part(self.numerator)
        return [refine_root(sq, e, as_rat(width)) if e.width else e for e in isolate_roots(self.numerator, UNIT_OPEN)]


def obstruction_poly(
    setup: AdmissibleSetup,
    p: RatLike | None = None,
    kind: str = CSC,
    degree_ceiling: int = DEFAULT_DEGREE_CEILING,
    normalize: bool = True,
) -> ObstructionPoly:
    """Exact polynomial numerator of the obstruction as a function of c.

    Samples Phi(c) (1-c)^A (1+c)^A with generous A = 2p, interpolates with
    holdout verification, then divides the surplus boundary factors back
    out down to the structural pole orders."""
    setup = _prepared(setup)
    p = setup.m + 2 if p is None else int(as_rat(p))
    a_s, b_s = structural_pole_orders(setup, p, kind)
    A = max(2 * p, a_s, b_s)

    def raw(c):
        return (obstruction_raw(setup, c, p, kind).value * (1 - c) ** A * (1 + c) ** A,)

    (R,) = interpolate_verified(raw, 4 * setup.m + 16, degree_ceiling)
    if R.is_zero():
        return ObstructionPoly(R, (a_s, b_s), Fraction(1), kind, p, 0)
    R, ka = _strip_linear(R, Fraction(1), A - a_s)
    R, kb = _strip_linear(R, Fraction(-1), A - b_s)
    a, b = A - ka, A - kb
    scale = Fraction(1)
    if normalize:
        content, prim = R.primitive()
        sgn = 1
        probe = prim(NEAR_ONE)
        if probe == 0:
            probe = next(v for v in (prim(x) for x in sample_points(R.degree + 2)) if v != 0)
        if probe < 0:
            sgn = -1
        scale = sgn / content
        R = prim * sgn
    return ObstructionPoly(R, (a, b), scale, kind, p, R.degree)


# ---------------------------------------------------------------------------
# CSC rays


@dataclass(frozen=True)
class CscRoot:
    enclosure: Interval
    is_extremal: bool
    approx: mpmath.mpf
    certified: bool

    def to_json(self) -> dict:
        return {
            "enclosure": self.enclosure.to_json(),
            "is_extremal": self.is_extremal,
            "approx": float(self.approx),
            "certified": self.certified,
        }


@dataclass(frozen=True)
class CscReport:
    roots: list[CscRoot]
    identically_zero: bool
    obstruction: ObstructionPoly

    @property
    def extremal_roots(self) -> list[CscRoot]:
        return [r for r in self.roots if r.is_extremal]


def _root_approx(poly: Poly, enc: Interval):
    with mpmath.workprec(128):
        if enc.width == 0:
            return to_mpf(enc.lo)
        f = lambda t: poly.eval_mp(t)
        try:
            return mpmath.findroot(f, (to_mpf(enc.lo), to_mpf(enc.hi)), solver="anderson")
        except (ValueError, ZeroDivisionError):
            return to_mpf(enc.midpoint)


def _verdict_on_enclosure(setup, p, sq, enc: Interval, bivariate, width, max_halvings=40):
    """Refine ``enc`` until the extremality verdict is constant on it.

    With a bivariate numerator P the verdict is certified by box positivity
    (extremal) or by a fixed z at which P < 0 on the enclosure (not
    extremal).  Without it, constancy is checked at both ends and the
    midpoint of the enclosure."""
    for _ in range(max_halvings):
        mid = enc.midpoint
        v = is_extremal(setup, mid, p)
        if enc.width == 0:
            return enc, v, True
        if bivariate is not None:
            if v and certify_positive_on_box(bivariate, -1, 1, enc.lo, enc.hi):
                return enc, True, True
            if not v and _certify_negative_somewhere(bivariate, enc):
                return enc, False, True
        elif is_extremal(setup, enc.lo, p) == v == is_extremal(setup, enc.hi, p):
            return enc, v, False
        enc = refine_root(sq, enc, enc.width / 4)
    return enc, is_extremal(setup, enc.midpoint, p), False


def _certify_negative_somewhere(P: Sequence[Poly], enc: Interval) -> bool:
    Fm = bivariate_eval_c(P, enc.midpoint)
    # the minimiser of P(., c_mid) on a grid is a good witness
    zs = [Fraction(k, 64) for k in range(-63, 64)]
    z0 = min(zs, key=lambda z: Fm(z))
    _, hi = interval_eval(bivariate_eval_z(P, z0), enc.lo, enc.hi)
    return hi < 0


def find_csc_rays(
    setup: AdmissibleSetup,
    p: RatLike | None = None,
    kind: str = CSC,
    width: RatLike = DEFAULT_REFINE_WIDTH,
    degree_ceiling: int = DEFAULT_DEGREE_CEILING,
    bivariate: Sequence[Poly] | None = None,
) -> CscReport:
    setup = _prepared(setup)
    p = setup.m + 2 if p is None else int(as_rat(p))
    op = obstruction_poly(setup, p, kind, degree_ceiling)
    if op.identically_zero:
        return CscReport([], True, op)
    sq = square_free_part(op.numerator)
    out = []
    for enc in isolate_roots(op.numerator, UNIT_OPEN):
        if enc.width:
            enc = refine_root(sq, enc, as_rat(width))
        enc, v, cert = _verdict_on_enclosure(setup, p, sq, enc, bivariate, width)
        out.append(CscRoot(enc, v, _root_approx(sq, enc), cert))
    return CscReport(out, False, op)


# ---------------------------------------------------------------------------
# Einstein-Hilbert functionals


def ehf(setup: AdmissibleSetup, c: RatLike, kind: str = "HS", p: RatLike | None = None) -> Fraction:
    """H_S(c) = beta_{0,-m}^(m+1) / alpha_{0,-(m+1)}^m, or the weighted
    H_K(c) = beta_{0,2-p}^p / alpha_{0,-p}^(p-2)."""
    setup = _prepared(setup)
    c = as_rat(c)
    m = setup.m
    if kind == "HS":
        return beta(setup, c, 0, -m).value ** (m + 1) / alpha(setup, c, 0, -(m + 1)).value ** m
    if kind == "HK":
        p = m + 2 if p is None else int(as_rat(p))
        return beta(setup, c, 0, 2 - p).value ** p / alpha(setup, c, 0, -p).value ** (p - 2)
    raise ValueError("kind must be 'HS' or 'HK'")


def hs_derivative_formula(setup: AdmissibleSetup, c: RatLike) -> Fraction:
    setup = _prepared(setup)
    c = as_rat(c)
    m = setup.m
    b = beta(setup, c, 0, -m).value
    a = alpha(setup, c, 0, -(m + 1)).value
    bracket = (
        alpha(setup, c, 1, -(m + 2)).value * beta(setup, c, 0, -(m + 1)).value
        - alpha(setup, c, 0, -(m + 2)).value * beta(setup, c, 1, -(m + 1)).value
    )
    return m * (m + 1) * b**m * a ** (m - 1) / a ** (2 * m) * bracket


class IdentityFailure(AssertionError):
    pass


def hs_derivative_identity(
    setup: AdmissibleSetup,
    c: RatLike,
    h: RatLike = Fraction(1, 10**8),
    rel_tol: float = 1e-5,
    exact: bool = True,
) -> Fraction:
    """Check H_S'(c) against a central difference and (optionally) exactly
    against the derivative of the interpolated numerator/denominator.
    Returns the formula value."""
    setup = _prepared(setup)
    c, h = as_rat(c), as_rat(h)
    m = setup.m
    val = hs_derivative_formula(setup, c)
    fd = (ehf(setup, c + h) - ehf(setup, c - h)) / (2 * h)
    scale = max(abs(val), abs(ehf(setup, c)) * h * 100)
    if abs(fd - val) > rel_tol * scale:
        raise IdentityFailure(f"H_S' formula {float(val)} vs finite difference {float(fd)}")
    if exact:
        K = m + 1

        def num_den(t):
            w = (1 - t) ** K * (1 + t) ** K
            return beta(setup, t, 0, -m).value * w, alpha(setup, t, 0, -(m + 1)).value * w

        Nb, Na = interpolate_verified(num_den, 4 * m + 16)
        # H = Nb^(m+1) / (Na^m (1-c^2)^K): logarithmic derivative
        H = ehf(setup, c)
        dlog = (m + 1) * Nb.derivative()(c) / Nb(c) - m * Na.derivative()(c) / Na(c) + 2 * K * c / (1 - c * c)
        if H * dlog != val:
            raise IdentityFailure("exact derivative of H_S disagrees with the formula")
    return val


# ---------------------------------------------------------------------------
# cone classification


@dataclass(frozen=True)
class BivariateNumerator:
    """P(z, c) = M(c) F_{c,p}(z) / ((1+z)^(d0+1) (1-z)^(dinf+1)) with M > 0
    on (-1, 1); coefficient i is the c-polynomial multiplying z^i."""

    coeffs: list[Poly]
    p: int

    def at(self, c: RatLike) -> Poly:
        return bivariate_eval_c(self.coeffs, as_rat(c))


def _threads(threads: int | None) -> int:
    env = os.environ.get("SASAKI_CONE_THREADS")
    if env:
        return max(1, int(env))
    return max(1, threads or 1)


def bivariate_numerator(
    setup: AdmissibleSetup, p: RatLike | None = None, degree_ceiling: int = DEFAULT_DEGREE_CEILING
) -> BivariateNumerator:
    setup = _prepared(setup)
    p = setup.m + 2 if p is None else int(as_rat(p))
    E = 2 * p

    def det_cleared(c):
        return (system_determinant(setup, c, p) * (1 - c) ** E * (1 + c) ** E,)

    (D,) = interpolate_verified(det_cleared, 4 * setup.m + 16, degree_ceiling)
    D, _ = _strip_linear(D, Fraction(1), E)
    D, _ = _strip_linear(D, Fraction(-1), E)
    M = -D  # the determinant is negative on (-1, 1)
    E2 = 3 * p

    def coeffs(c):
        P = build_extremal_poly(setup, c, p).reduced()
        w = M(c) * (1 - c) ** E2 * (1 + c) ** E2
        n = p + 1
        return [P[i] * w for i in range(n)]

    comps = interpolate_verified(coeffs, 4 * setup.m + 16, degree_ceiling)
    while comps and comps[-1].is_zero():
        comps.pop()
    for root in (Fraction(1), Fraction(-1)):
        while all(q(root) == 0 for q in comps):
            comps = [_strip_linear(q, root, 1)[0] for q in comps]
    g = Poly()
    for q in comps:
        g = poly_gcd(g, q) if not g.is_zero() else q.monic()
    if g.degree > 0 and count_real_roots(g, UNIT_OPEN) == 0:
        g = g if g(Fraction(0)) > 0 else -g
        comps = [q.exact_div(g) for q in comps]
    # positive rational content
    den, cont = 1, 0
    for q in comps:
        for v in q.coeffs:
            den = math.lcm(den, v.denominator)
    for q in comps:
        for v in q.coeffs:
            cont = math.gcd(cont, int(v * den))
    comps = [q * Fraction(den, cont) for q in comps]
    # sanity: positive multiple of the reduced F at a holdout point
    h = HOLDOUT[1]
    ref = build_extremal_poly(setup, h, p).reduced()
    got = bivariate_eval_c(comps, h)
    ratio = got.lc / ref.lc
    if ratio <= 0 or got != ref * ratio:
        raise ArithmeticError("bivariate numerator failed the holdout comparison")
    return BivariateNumerator(comps, p)


@dataclass(frozen=True)
class BoundaryCandidate:
    enclosure: Interval
    sources: tuple[str, ...]

    def to_json(self) -> dict:
        return {"enclosure": self.enclosure.to_json(), "sources": list(self.sources)}


@dataclass(frozen=True)
class ExtremalInterval:
    """Maximal extremal interval; ``lower``/``upper`` are the boundary
    enclosures (None means the cone edge -1 or +1)."""

    lower: BoundaryCandidate | None
    upper: BoundaryCandidate | None
    witness: Fraction

    @property
    def interval(self) -> Interval:
        lo = self.lower.enclosure.hi if self.lower else Fraction(-1)
        hi = self.upper.enclosure.lo if self.upper else Fraction(1)
        return Interval.open(lo, hi)

    def to_json(self) -> dict:
        return {
            "interval": self.interval.to_json(),
            "lower_boundary": self.lower.enclosure.to_json() if self.lower else None,
            "upper_boundary": self.upper.enclosure.to_json() if self.upper else None,
            "witness": f"{self.witness.numerator}/{self.witness.denominator}",
        }


@dataclass
class ConeReport:
    extremal_set: list[ExtremalInterval]
    csc: CscReport
    boundary_candidates: list[BoundaryCandidate]
    ehf_samples: list[tuple[Fraction, Fraction]]
    hypotheses: Hypotheses
    bivariate: BivariateNumerator
    gap_verdicts: list[tuple[Fraction, bool]] = field(default_factory=list)

    @property
    def csc_roots(self) -> list[CscRoot]:
        return self.csc.roots


def _candidate_roots(polys: dict[str, Poly], width: Fraction) -> list[BoundaryCandidate]:
    raw: list[tuple[Interval, str]] = []
    for name, q in polys.items():
        if q.is_zero() or q.degree <= 0:
            continue
        sq = square_free_part(q)
        for enc in isolate_roots(q, UNIT_OPEN):
            raw.append((refine_root(sq, enc, width) if enc.width else enc, name))
    raw.sort(key=lambda t: t[0].lo)
    merged: list[BoundaryCandidate] = []
    for enc, name in raw:
        if merged and merged[-1].enclosure.hi >= enc.lo:
            prev = merged[-1]
            lo = min(prev.enclosure.lo, enc.lo)
            hi = max(prev.enclosure.hi, enc.hi)
            srcs = tuple(sorted(set(prev.sources) | {name}))
            merged[-1] = BoundaryCandidate(Interval.closed(lo, hi), srcs)
        else:
            merged.append(BoundaryCandidate(enc, (name,)))
    return merged


def _simple_rational_between(lo: Fraction, hi: Fraction) -> Fraction:
    """A low-height rational strictly inside (lo, hi)."""
    den = 1
    while True:
        k = (lo * den).__floor__() + 1
        q = Fraction(k, den)
        if lo < q < hi:
            return q
        den *= 2


def classify_cone(
    setup: AdmissibleSetup,
    p: RatLike | None = None,
    width: RatLike = DEFAULT_REFINE_WIDTH,
    degree_ceiling: int = DEFAULT_DEGREE_CEILING,
    ehf_grid: int = 9,
    threads: int | None = None,
) -> ConeReport:
    setup = _prepared(setup)
    p = setup.m + 2 if p is None else int(as_rat(p))
    width = as_rat(width)
    biv = bivariate_numerator(setup, p, degree_ceiling)
    P = biv.coeffs
    polys: dict[str, Poly] = {"leading": P[-1], "P(-1)": bivariate_eval_z(P, -1), "P(1)": bivariate_eval_z(P, 1)}
    if len(P) >= 3:
        res = resultant_in_z(P, bivariate_dz(P))
        if res.is_zero():
            raise ArithmeticError("z-discriminant vanishes identically (repeated factor in z)")
        polys["resultant"] = res
    cands = _candidate_roots(polys, width)

    edges = [Fraction(-1)] + [x for cd in cands for x in (cd.enclosure.lo, cd.enclosure.hi)] + [Fraction(1)]
    gaps = [(edges[2 * i], edges[2 * i + 1]) for i in range(len(cands) + 1)]
    for lo, hi in gaps:
        if not lo < hi:
            raise UnresolvedEnclosure("boundary enclosures overlap at maximal refinement")
    witnesses = [_simple_rational_between(lo, hi) for lo, hi in gaps]
    with ThreadPoolExecutor(_threads(threads)) as ex:
        verdicts = list(ex.map(lambda w: is_extremal(setup, w, p), witnesses))

    extremal: list[ExtremalInterval] = []
    current: ExtremalInterval | None = None
    for i, (w, v) in enumerate(zip(witnesses, verdicts)):
        lower = cands[i - 1] if i > 0 else None
        upper = cands[i] if i < len(cands) else None
        if not v:
            if current is not None:
                extremal.append(current)
                current = None
            continue
        if current is None:
            current = ExtremalInterval(lower, upper, w)
        else:
            enc = lower.enclosure
            if certify_positive_on_box(P, -1, 1, enc.lo, enc.hi):
                current = ExtremalInterval(current.lower, upper, current.witness)
            else:
                extremal.append(current)
                current = ExtremalInterval(lower, upper, w)
    if current is not None:
        extremal.append(current)

    csc = find_csc_rays(setup, p, CSC, width, degree_ceiling, bivariate=P)
    grid = [Fraction(2 * k - ehf_grid - 1, ehf_grid + 1) for k in range(1, ehf_grid + 1)]
    samples = [(c, ehf(setup, c)) for c in grid]
    return ConeReport(
        extremal, csc, cands, samples, theorem_hypotheses(setup, p), biv, list(zip(witnesses, verdicts))
    )


# ---------------------------------------------------------------------------
# one-parameter families


@dataclass(frozen=True)
class ScanRow:
    param: Fraction
    discriminant_sign: int
    root_count: int


@dataclass(frozen=True)
class DiscriminantScan:
    numerator: list[Poly]  # c-coefficients, each a polynomial in the parameter
    discriminant: Poly
    exponents: tuple[int, int]
    sign_changes: list[Interval]
    rows: list[ScanRow]

    @property
    def degree_c(self) -> int:
        return len(self.numerator) - 1

    @property
    def is_cubic_or_lower(self) -> bool:
        return self.degree_c <= 3

    def at(self, x: RatLike) -> Poly:
        return bivariate_eval_c(self.numerator, as_rat(x))


def discriminant_scan(
    family: Callable[[Fraction], AdmissibleSetup],
    p: RatLike,
    param_range: tuple[RatLike, RatLike],
    samples: int = 20,
    kind: str = WEIGHTED,
    width: RatLike = Fraction(1, 10**6),
    degree_ceiling: int = DEFAULT_DEGREE_CEILING,
) -> DiscriminantScan:
    """Track the obstruction numerator across a rational one-parameter
    family: joint polynomial in (c, x), its discriminant in c, the
    parameter values where the discriminant changes sign, and root counts
    in (-1, 1) at ``samples`` evenly spread parameters."""
    lo, hi = (as_rat(v) for v in param_range)
    p = int(as_rat(p))
    probe = _prepared(family((lo + hi) / 2))
    a, b = structural_pole_orders(probe, p, kind)

    def raw_coeffs(x):
        s = _prepared(family(x))
        if structural_pole_orders(s, p, kind) != (a, b):
            raise ValueError("family changes the blow-down data")
        (R,) = interpolate_verified(
            lambda c: (obstruction_raw(s, c, p, kind).value * (1 - c) ** a * (1 + c) ** b,),
            4 * s.m + 16,
            degree_ceiling,
        )
        return R

    # common c-degree from the midpoint; parameter points inside (lo, hi)
    def x_points(n):
        return [lo + (hi - lo) * Fraction(2 * k + 1, 2 * n) for k in range(n)]

    hold = [lo + (hi - lo) * Fraction(k, 1013) for k in (101, 499, 877)]
    cache: dict[Fraction, Poly] = {}

    def vec(x):
        if x not in cache:
            cache[x] = raw_coeffs(x)
        return cache[x]

    degc = max(vec(h).degree for h in hold)

    def padded(x):
        R = vec(x)
        return [R[i] for i in range(degc + 1)]

    comps = interpolate_verified(padded, 8, degree_ceiling, holdout=hold, points=x_points)
    while comps and comps[-1].is_zero():
        comps.pop()
    g = Poly()
    for q in comps:
        g = q.monic() if g.is_zero() else poly_gcd(g, q)
    if g.degree > 0:
        comps = [q.exact_div(g) for q in comps]
    disc = discriminant(comps) if len(comps) >= 2 else Poly()
    changes: list[Interval] = []
    if not disc.is_zero() and disc.degree > 0:
        sq = square_free_part(disc)
        for enc in isolate_roots(disc, Interval.open(lo, hi)):
            changes.append(refine_root(sq, enc, as_rat(width)) if enc.width else enc)
    rows = []
    for x in x_points(samples):
        Nx = bivariate_eval_c(comps, x)
        dval = disc(x) if not disc.is_zero() else Fraction(0)
        sgn = (dval > 0) - (dval < 0)
        count = count_real_roots(Nx, UNIT_OPEN) if not Nx.is_zero() else -1
        rows.append(ScanRow(x, sgn, count))
    return DiscriminantScan(comps, disc, (a, b), changes, rows)

"""Exact rational polynomials, real-root counting/isolation, interpolation
and resultants.

Rationals are :class:`fractions.Fraction`.  A :class:`Poly` is an immutable
dense coefficient tuple, lowest degree first.  Bivariate polynomials are
plain sequences of :class:`Poly` (the outer index is the degree in the main
variable, the inner polynomials carry the second variable).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

import mpmath

Rat = Fraction
RatLike = Union[int, Fraction, str]

DEFAULT_REFINE_WIDTH = Fraction(1, 10**12)


def as_rat(value: RatLike) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected so that no binary rounding sneaks into exact paths.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            den_i = int(den)
            if den_i == 0:
                raise ZeroDivisionError(f"zero denominator in {value!r}")
            return Fraction(int(num), den_i)
        return Fraction(text)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def rat_str(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


class Poly:
    """Dense univariate polynomial with Fraction coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[RatLike] = ()):
        cs = [as_rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # construction helpers
    @classmethod
    def const(cls, value: RatLike) -> "Poly":
        return cls([value])

    @classmethod
    def x(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def monomial(cls, degree: int, coeff: RatLike = 1) -> "Poly":
        return cls([0] * degree + [coeff])

    @classmethod
    def linear(cls, a: RatLike, b: RatLike) -> "Poly":
        """The polynomial ``a*x + b``."""
        return cls([b, a])

    @classmethod
    def from_roots(cls, roots: Iterable[RatLike]) -> "Poly":
        out = cls([1])
        for r in roots:
            out = out * cls([-as_rat(r), 1])
        return out

    # basic properties
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly.const(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "Poly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            s = str(c)
            terms.append(s if i == 0 else f"{s}*x^{i}" if i > 1 else f"{s}*x")
        return "Poly(" + " + ".join(terms) + ")"

    # arithmetic
    @staticmethod
    def _coerce(other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly.const(other)

    def __add__(self, other) -> "Poly":
        o = Poly._coerce(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly([self[i] + o[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other) -> "Poly":
        return self + (-Poly._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return Poly._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            k = as_rat(other)
            return Poly([c * k for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, k) -> "Poly":
        k = as_rat(k)
        return Poly([c / k for c in self.coeffs])

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative polynomial power")
        result, base = Poly([1]), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: "Poly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        if len(rem) - 1 < dq:
            return Poly(), self
        quo = [Fraction(0)] * (len(rem) - dq)
        inv_lc = 1 / other.lc
        for i in range(len(rem) - 1, dq - 1, -1):
            q = rem[i] * inv_lc
            quo[i - dq] = q
            if q:
                for j, b in enumerate(other.coeffs):
                    rem[i - dq + j] -= q * b
        return Poly(quo), Poly(rem[:dq])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("polynomial division is not exact")
        return q

    # evaluation and calculus
    def __call__(self, x):
        acc = 0 * x if not isinstance(x, (int, Fraction)) else Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_mp(self, x):
        """Horner evaluation in mpmath at the current working precision."""
        acc = mpmath.mpf(0)
        for c in reversed(self.coeffs):
            acc = acc * x + mpmath.mpf(c.numerator) / c.denominator
        return acc

    def derivative(self, order: int = 1) -> "Poly":
        p = self
        for _ in range(order):
            p = Poly([i * c for i, c in enumerate(p.coeffs)][1:])
        return p

    def antiderivative(self) -> "Poly":
        """Antiderivative vanishing at 0."""
        return Poly([0] + [c / (i + 1) for i, c in enumerate(self.coeffs)])

    def definite_integral(self, a: RatLike, b: RatLike) -> Fraction:
        anti = self.antiderivative()
        return anti(as_rat(b)) - anti(as_rat(a))

    def compose(self, q: "Poly") -> "Poly":
        out = Poly()
        for c in reversed(self.coeffs):
            out = out * q + c
        return out

    def compose_affine(self, a: RatLike, b: RatLike) -> "Poly":
        """Return ``p(a*u + b)`` as a polynomial in ``u``."""
        return self.compose(Poly.linear(a, b))

    def shift_scale(self, a: RatLike, b: RatLike) -> "Poly":
        return self.compose_affine(a, b)

    # normalizations
    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self / self.lc

    def primitive(self) -> tuple[Fraction, "Poly"]:
        """Split into ``content * primitive`` with integer, gcd-1 coefficients
        and positive leading coefficient."""
        if self.is_zero():
            return Fraction(0), self
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        if ints[-1] < 0:
            g = -g
        return Fraction(g, den), Poly([Fraction(v, g) for v in ints])

    def integer_coeffs(self) -> list[int]:
        _, prim = self.primitive()
        return [int(c) for c in prim.coeffs]


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd over Q (zero if both are zero)."""
    a, b = p, q
    while not b.is_zero():
        a, b = b, a % b
        if not b.is_zero():
            # keep coefficient growth in check
            b = b.primitive()[1]
    return a.monic()


def square_free_part(p: Poly) -> Poly:
    if p.is_zero():
        raise ValueError("zero polynomial has no square-free part")
    if p.degree <= 0:
        return Poly([1])
    g = poly_gcd(p, p.derivative())
    return p.exact_div(g).monic()


def has_multiple_roots(p: Poly) -> bool:
    return poly_gcd(p, p.derivative()).degree > 0


def poly_arith(p: Poly, q: Poly | None, op: str, bounds=None, affine=None):
    """Dispatcher over the basic polynomial operations.

    ``op`` is one of ``add``, ``mul``, ``compose_affine`` (``affine=(a, b)``
    gives ``p(a*u+b)``), ``derivative`` and ``definite_integral``
    (``bounds=(lo, hi)``; returns a Fraction).
    """
    if op == "add":
        return p + q
    if op == "mul":
        return p * q
    if op == "compose_affine":
        a, b = affine
        return p.compose_affine(a, b)
    if op == "derivative":
        return p.derivative()
    if op == "definite_integral":
        lo, hi = bounds
        return p.definite_integral(lo, hi)
    raise ValueError(f"unknown polynomial operation {op!r}")


# ---------------------------------------------------------------------------
# intervals and real roots


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction
    lo_open: bool = False
    hi_open: bool = False

    def __post_init__(self):
        object.__setattr__(self, "lo", as_rat(self.lo))
        object.__setattr__(self, "hi", as_rat(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def open(cls, lo: RatLike, hi: RatLike) -> "Interval":
        return cls(as_rat(lo), as_rat(hi), True, True)

    @classmethod
    def closed(cls, lo: RatLike, hi: RatLike) -> "Interval":
        return cls(as_rat(lo), as_rat(hi), False, False)

    @classmethod
    def point(cls, x: RatLike) -> "Interval":
        return cls.closed(x, x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        lo_ok = x > self.lo if self.lo_open else x >= self.lo
        hi_ok = x < self.hi if self.hi_open else x <= self.hi
        return lo_ok and hi_ok

    def overlaps(self, other: "Interval") -> bool:
        return not (self.hi < other.lo or other.hi < self.lo)

    def as_floats(self) -> tuple[float, float]:
        return float(self.lo), float(self.hi)

    def to_json(self) -> dict:
        return {
            "lo": rat_str(self.lo),
            "hi": rat_str(self.hi),
            "lo_float": float(self.lo),
            "hi_float": float(self.hi),
        }


UNIT_OPEN = Interval.open(-1, 1)


def sturm_sequence(p: Poly) -> list[Poly]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        r = seq[-2] % seq[-1]
        if r.is_zero():
            break
        # positive rescaling keeps sign variations intact
        content, prim = (-r).primitive()
        seq.append(prim * (1 if content > 0 else -1))
    return seq


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def sign_variations(seq: Sequence[Poly], x: Fraction) -> int:
    signs = [s for s in (_sign(q(x)) for q in seq) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(p: Poly, iv: Interval = UNIT_OPEN) -> int:
    """Number of distinct real roots of ``p`` in ``iv`` (Sturm chain on the
    square-free part, endpoints handled according to openness)."""
    if p.is_zero():
        raise ValueError("zero polynomial has infinitely many roots")
    sq = square_free_part(p)
    if sq.degree == 0:
        return 0
    seq = sturm_sequence(sq)
    if iv.lo == iv.hi:
        return int(sq(iv.lo) == 0 and not (iv.lo_open or iv.hi_open))
    # Sturm counts roots in (lo, hi]
    n = sign_variations(seq, iv.lo) - sign_variations(seq, iv.hi)
    if iv.hi_open and sq(iv.hi) == 0:
        n -= 1
    if not iv.lo_open and sq(iv.lo) == 0:
        n += 1
    return n


def _cauchy_bound(p: Poly) -> Fraction:
    lc = abs(p.lc)
    return 1 + max((abs(c) / lc for c in p.coeffs[:-1]), default=Fraction(0))


def isolate_roots(p: Poly, iv: Interval = UNIT_OPEN) -> list[Interval]:
    """Disjoint closed rational enclosures, one per distinct root of ``p`` in
    ``iv``, sorted ascending.  Each enclosure either is a single rational
    point or has the root strictly inside, with a sign change of the
    square-free part across it."""
    if p.is_zero():
        raise ValueError("zero polynomial has infinitely many roots")
    sq = square_free_part(p)
    if sq.degree == 0:
        return []
    seq = sturm_sequence(sq)
    lo, hi = iv.lo, iv.hi
    bound = _cauchy_bound(sq)
    lo, hi = max(lo, -bound), min(hi, bound)
    out: list[Interval] = []
    # exact rational roots on the endpoints
    if lo == iv.lo and not iv.lo_open and sq(lo) == 0:
        out.append(Interval.point(lo))
    if lo > hi:
        return out

    def count_open(a: Fraction, b: Fraction) -> int:
        n = sign_variations(seq, a) - sign_variations(seq, b)
        return n - (1 if sq(b) == 0 else 0)

    stack = [(lo, hi)]
    found: list[Interval] = []
    while stack:
        a, b = stack.pop()
        n = count_open(a, b)
        if n == 0:
            continue
        if n == 1 and _sign(sq(a)) * _sign(sq(b)) < 0:
            found.append(Interval.closed(a, b))
            continue
        mid = (a + b) / 2
        if sq(mid) == 0:
            found.append(Interval.point(mid))
        stack.append((a, mid))
        stack.append((mid, b))
    out.extend(found)
    if hi == iv.hi and not iv.hi_open and sq(hi) == 0:
        out.append(Interval.point(hi))
    out.sort(key=lambda e: e.lo)
    return out


def refine_root(sq: Poly, enc: Interval, width: Fraction = DEFAULT_REFINE_WIDTH) -> Interval:
    """Bisect an isolating enclosure of a simple root of ``sq`` down to
    ``width``."""
    a, b = enc.lo, enc.hi
    if a == b:
        return enc
    sa = _sign(sq(a))
    if sa == 0 or _sign(sq(b)) == 0 or sa == _sign(sq(b)):
        raise ValueError("enclosure does not bracket a sign change")
    width = as_rat(width)
    while b - a > width:
        mid = (a + b) / 2
        sm = _sign(sq(mid))
        if sm == 0:
            return Interval.point(mid)
        if sm == sa:
            a = mid
        else:
            b = mid
    return Interval.closed(a, b)


def real_roots(p: Poly, iv: Interval = UNIT_OPEN, width: Fraction = DEFAULT_REFINE_WIDTH) -> list[Interval]:
    sq = square_free_part(p)
    return [refine_root(sq, e, width) for e in isolate_roots(p, iv)]


# ---------------------------------------------------------------------------
# interpolation


def interpolate(points: Sequence[tuple[RatLike, RatLike]]) -> Poly:
    """Unique polynomial of degree < n through n points (Newton form)."""
    xs = [as_rat(x) for x, _ in points]
    if len(set(xs)) != len(xs):
        raise ValueError("duplicate abscissa in interpolation data")
    coef = [as_rat(y) for _, y in points]
    n = len(xs)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    out = Poly()
    for i in range(n - 1, -1, -1):
        out = out * Poly([-xs[i], 1]) + coef[i]
    return out


def sample_points(n: int) -> list[Fraction]:
    """``n`` distinct rationals in (-1, 1) with small heights, roughly
    Chebyshev-distributed so interpolation stays well conditioned."""
    pts: list[Fraction] = []
    seen = set()
    den = 2 * n + 7
    for i in range(n):
        theta = math.pi * (2 * i + 1) / (2 * n)
        q = Fraction(round(math.cos(theta) * den), den)
        while q in seen or abs(q) >= 1:
            q = q - Fraction(1, 3 * den) if q > 0 else q + Fraction(1, 5 * den)
        seen.add(q)
        pts.append(q)
    return pts


# ---------------------------------------------------------------------------
# resultants


def _bareiss_det(mat: list[list[Poly]]) -> Poly:
    """Fraction-free determinant over Q[c]."""
    n = len(mat)
    if n == 0:
        return Poly([1])
    m = [row[:] for row in mat]
    sign = 1
    prev = Poly([1])
    for k in range(n - 1):
        if m[k][k].is_zero():
            for i in range(k + 1, n):
                if not m[i][k].is_zero():
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return Poly()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).exact_div(prev)
        prev = m[k][k]
    return m[n - 1][n - 1] * sign


def sylvester_matrix(p: Sequence[Poly], q: Sequence[Poly]) -> list[list[Poly]]:
    """Sylvester matrix of two polynomials in z given as coefficient lists
    (index = z-degree) over Q[c]."""
    dp, dq = len(p) - 1, len(q) - 1
    size = dp + dq
    zero = Poly()
    rows = []
    for i in range(dq):
        row = [zero] * size
        for j, coef in enumerate(reversed(p)):
            row[i + j] = coef
        rows.append(row)
    for i in range(dp):
        row = [zero] * size
        for j, coef in enumerate(reversed(q)):
            row[i + j] = coef
        rows.append(row)
    return rows


def _trim(p: Sequence[Poly]) -> list[Poly]:
    out = [Poly._coerce(c) for c in p]
    while out and out[-1].is_zero():
        out.pop()
    return out


def resultant_in_z(p: Sequence[Poly], q: Sequence[Poly]) -> Poly:
    """Res_z(p, q) for bivariate polynomials given as z-coefficient lists of
    polynomials in c."""
    p, q = _trim(p), _trim(q)
    if len(p) < 2 or len(q) < 2:
        raise ValueError("resultant needs positive degree in z for both inputs")
    return _bareiss_det(sylvester_matrix(p, q))


def bivariate_dz(p: Sequence[Poly]) -> list[Poly]:
    return [p[i] * i for i in range(1, len(p))]


def bivariate_eval_c(p: Sequence[Poly], c) -> Poly:
    """Specialize the inner variable, returning a polynomial in z."""
    return Poly([coef(c) for coef in p])


def bivariate_eval_z(p: Sequence[Poly], z) -> Poly:
    out = Poly()
    for coef in reversed(list(p)):
        out = out * z + coef
    return out


def discriminant(p: Sequence[Poly]) -> Poly:
    """Discriminant in the main variable, (-1)^(n(n-1)/2) Res(p, p')/lc."""
    p = _trim(p)
    n = len(p) - 1
    res = resultant_in_z(p, bivariate_dz(p))
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return res.exact_div(p[-1]) * sign


def univariate_discriminant(p: Poly) -> Fraction:
    return discriminant([Poly.const(c) for c in p.coeffs])[0]


# ---------------------------------------------------------------------------
# interval arithmetic over exact rationals


def interval_eval(p: Poly, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Rigorous range enclosure of ``p`` over ``[lo, hi]`` (Horner with
    interval arithmetic; exact, possibly pessimistic)."""
    a = b = Fraction(0)
    for coef in reversed(p.coeffs):
        prods = (a * lo, a * hi, b * lo, b * hi)
        a, b = min(prods) + coef, max(prods) + coef
    return a, b


def _imul(x: tuple, y: tuple) -> tuple:
    prods = (x[0] * y[0], x[0] * y[1], x[1] * y[0], x[1] * y[1])
    return min(prods), max(prods)


def bivariate_interval_eval(p: Sequence[Poly], zlo, zhi, clo, chi) -> tuple[Fraction, Fraction]:
    acc = (Fraction(0), Fraction(0))
    for coef in reversed(list(p)):
        lo_c, hi_c = interval_eval(coef, clo, chi)
        acc = _imul(acc, (zlo, zhi))
        acc = (acc[0] + lo_c, acc[1] + hi_c)
    return acc


def certify_positive_on_box(p: Sequence[Poly], zlo, zhi, clo, chi, max_depth: int = 14) -> bool:
    """True only if p(z, c) > 0 is proven on the closed box; False means
    'not certified' (which includes genuine failure).  Bisects z and c
    alternately, so ``max_depth`` bounds the number of splits per branch."""
    stack = [(Fraction(zlo), Fraction(zhi), Fraction(clo), Fraction(chi), 0)]
    while stack:
        a, b, lo_c, hi_c, depth = stack.pop()
        lo, _ = bivariate_interval_eval(p, a, b, lo_c, hi_c)
        if lo > 0:
            continue
        # cheap refutation: a point value <= 0 settles it
        zm, cm = (a + b) / 2, (lo_c + hi_c) / 2
        if bivariate_eval_z(p, zm)(cm) <= 0:
            return False
        if depth >= 2 * max_depth:
            return False
        if depth % 2 == 0 or lo_c == hi_c:
            stack.append((a, zm, lo_c, hi_c, depth + 1))
            stack.append((zm, b, lo_c, hi_c, depth + 1))
        else:
            stack.append((a, b, lo_c, cm, depth + 1))
            stack.append((a, b, cm, hi_c, depth + 1))
    return True


# ---------------------------------------------------------------------------
# big floats


DEFAULT_PRECISION = 256


def to_mpf(value, prec: int | None = None):
    """Fraction -> mpf at the current (or given) working precision."""
    if prec is not None:
        with mpmath.workprec(prec):
            return to_mpf(value)
    value = as_rat(value) if not isinstance(value, mpmath.mpf) else value
    if isinstance(value, Fraction):
        return mpmath.mpf(value.numerator) / value.denominator
    return mpmath.mpf(value)


def bigfloat_context(prec: int = DEFAULT_PRECISION):
    if prec < 64:
        raise ValueError("precision must be at least 64 bits")
    return mpmath.workprec(prec)

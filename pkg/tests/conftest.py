import random
from fractions import Fraction

import pytest

from sasaki_cone.admissible import make_setup


def random_nonneg_setup(rng: random.Random, signed_x: bool = True):
    """1-3 factors, d <= 3, s in {0..4}, admissible x, d0, dinf <= 2."""
    factors = []
    for _ in range(rng.randint(1, 3)):
        x = Fraction(rng.randint(1, 19), 20)
        if signed_x and rng.random() < 0.5:
            x = -x
        factors.append((rng.randint(1, 3), rng.randint(0, 4), x))
    return make_setup(factors, rng.randint(0, 2), rng.randint(0, 2))


def random_setup(rng: random.Random):
    """Arbitrary-sign scalar curvatures; used by the identity suites."""
    factors = []
    for _ in range(rng.randint(1, 3)):
        x = Fraction(rng.randint(1, 29), 30) * rng.choice((1, -1))
        factors.append((rng.randint(1, 2), rng.randint(-4, 4), x))
    if rng.random() < 0.25:
        return make_setup(factors, 0, 0, rng.randint(1, 3), rng.randint(1, 3))
    return make_setup(factors, rng.randint(0, 2), rng.randint(0, 2))


@pytest.fixture
def s1():
    return make_setup([(1, -2, "4/5"), (1, 2, "-4/5")])


@pytest.fixture
def s3():
    return make_setup([(1, -200, "100/101"), (1, -100, "9/10")])


@pytest.fixture
def nonneg():
    return make_setup([(1, 1, "1/2")])


def s4(x):
    return make_setup([(1, 2, x)], d0=3, dinf=1)


def v1(dinf):
    return make_setup([(3, 2, Fraction(dinf + 2, dinf + 4))], dinf=dinf)


from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

"""Brieskorn-Pham links z_0^a_0 + ... + z_n^a_n = 0: weights, regularity,
positivity and the Fano index."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from itertools import combinations, combinations_with_replacement


@dataclass(frozen=True)
class BrieskornData:
    exponents: tuple[int, ...]
    degree: int
    weights: tuple[int, ...]

    def __post_init__(self):
        assert all(a * w == self.degree for a, w in zip(self.exponents, self.weights))

    def to_json(self) -> dict:
        return {"exponents": list(self.exponents), "degree": self.degree, "weights": list(self.weights)}


def weights_from_exponents(a) -> BrieskornData:
    a = tuple(int(v) for v in a)
    if any(v < 2 for v in a):
        raise ValueError("all exponents must be >= 2")
    d = reduce(math.lcm, a)
    return BrieskornData(a, d, tuple(d // v for v in a))


def is_regular(bd: BrieskornData) -> bool:
    return all(math.gcd(u, v) == 1 for u, v in combinations(bd.weights, 2))


@dataclass(frozen=True)
class Positivity:
    positive: bool
    index: int
    einstein_applicable: bool | None = None  # index >= d0 + 2, when d0 given

    def to_json(self) -> dict:
        return {"positive": self.positive, "index": self.index, "einstein_applicable": self.einstein_applicable}


def positivity_and_index(bd: BrieskornData, d0: int | None = None) -> Positivity:
    index = sum(bd.weights) - bd.degree
    flag = None if d0 is None else index >= d0 + 2
    return Positivity(index > 0, index, flag)


def enumerate_regular_positive(n: int, bound: int = 60) -> list[tuple[int, ...]]:
    """All exponent vectors (length n+1, sorted descending) of regular,
    positive Brieskorn-Pham links with degree d <= bound.

    Weights are pairwise coprime divisors of d with no w_j = d, so
    a_j = d/w_j >= 2."""
    if n < 1:
        raise ValueError("n must be positive")
    found = set()
    for d in range(2, bound + 1):
        divisors = [w for w in range(1, d) if d % w == 0]
        for ws in combinations_with_replacement(divisors, n + 1):
            if sum(ws) <= d:
                continue
            if reduce(math.lcm, (d // w for w in ws)) != d:
                # the same link is listed under its minimal degree
                continue
            if all(math.gcd(u, v) == 1 for u, v in combinations(ws, 2)):
                found.add(tuple(sorted((d // w for w in ws), reverse=True)))
    return sorted(found)


def bound_is_stable(n: int, bound: int = 60) -> bool:
    return enumerate_regular_positive(n, bound) == enumerate_regular_positive(n, 2 * bound)

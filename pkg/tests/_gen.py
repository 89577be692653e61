"""Seeded random generators shared by the test modules."""

from __future__ import annotations

import random
from fractions import Fraction

from ward.operators import HSeries
from ward.series import Series


def rat(rng: random.Random, num: int = 9, den: int = 5, nonzero: bool = False) -> Fraction:
    while True:
        c = Fraction(rng.randint(-num, num), rng.randint(1, den))
        if c or not nonzero:
            return c


def series(rng: random.Random, trunc: int, min_order: int = 0, sparse: float = 0.0) -> Series:
    coeffs = [Fraction(0)] * min_order
    for _ in range(min_order, trunc + 1):
        coeffs.append(Fraction(0) if rng.random() < sparse else rat(rng))
    return Series(coeffs[: trunc + 1], trunc)


def h_series(rng: random.Random, trunc: int) -> HSeries:
    return HSeries(Series([0] + [rat(rng, nonzero=True) for _ in range(trunc)], trunc))

import math
import random
from fractions import Fraction

import pytest

from _gen import rat, series
from ward import riordan
from ward.errors import PrecisionExhausted, ZeroConstantTerm
from ward.riordan import (RiordanPair, a_sequence, a_sequence_recurrence_holds, identity,
                          inverse_pascal, materialize, matrix_apply, pascal,
                          riordan_apply, riordan_inverse)
from ward.series import Series, mul_inverse


def unit_series(rng, t):
    s = series(rng, t)
    return Series((rat(rng, nonzero=True),) + s.coeffs[1:], t)


def rand_pair(rng, t=10):
    return RiordanPair(unit_series(rng, t), unit_series(rng, t))


def test_zero_constant_rejected():
    with pytest.raises(ZeroConstantTerm):
        RiordanPair(Series([0, 1], 3), Series.one(3))


def test_pascal_action():
    t = 10
    P = pascal(t)
    assert riordan_apply(P, Series.geometric(t)) == Series.geometric(t, 2)
    assert riordan_apply(P, Series.one(t)) == Series.geometric(t)
    g = series(random.Random(1), t)
    assert riordan_apply(identity(t), g) == g


def test_action_matches_matrix():
    rng = random.Random(2)
    for _ in range(5):
        R = rand_pair(rng)
        gamma = series(rng, 10)
        M = materialize(R, 10)
        assert list(riordan_apply(R, gamma).coeffs) == matrix_apply(M, gamma.coeffs)


def test_pascal_squared():
    t = 8
    PP = pascal(t) @ pascal(t)
    M = materialize(PP, t)
    assert all(M[n][k] == math.comb(n, k) * 2 ** (n - k)
               for n in range(t + 1) for k in range(n + 1))
    assert PP.g.agrees(Series([1, -2], t))


def test_group_laws():
    rng = random.Random(3)
    R = rand_pair(rng)
    I = identity(10)
    assert (R @ I).f == R.f and (R @ I).g.agrees(R.g)
    inv = riordan_inverse(R)
    prod = R @ inv
    assert prod.f.agrees(Series.one(10)) and prod.g.agrees(Series.one(10))


def test_inverse_pascal_entries():
    t = 8
    inv = riordan_inverse(pascal(t))
    M = materialize(inv, t)
    assert all(M[n][k] == (-1) ** (n + k) * math.comb(n, k)
               for n in range(t + 1) for k in range(n + 1))
    assert M == materialize(inverse_pascal(t), t)
    ii = riordan_inverse(identity(5))
    assert ii.f == Series.one(5) and ii.g.agrees(Series.one(5))


def test_a_sequences():
    assert a_sequence(pascal(10)).a.agrees(Series([1, 1], 9))
    f = unit_series(random.Random(4), 6)
    assert a_sequence(RiordanPair(f, Series.one(6))).a.agrees(Series.one(6))


def test_a_sequence_recurrence_random():
    rng = random.Random(5)
    for _ in range(5):
        assert a_sequence_recurrence_holds(rand_pair(rng, 12), 12)


def test_materialize():
    assert materialize(pascal(5), 3) == [[1], [1, 1], [1, 2, 1], [1, 3, 3, 1]]
    assert materialize(identity(4), 2) == [[1], [0, 1], [0, 0, 1]]
    with pytest.raises(PrecisionExhausted):
        materialize(pascal(3), 4)


def test_materialize_definition():
    rng = random.Random(6)
    R = rand_pair(rng, 8)
    M = materialize(R, 8)
    ginv = mul_inverse(R.g)
    for j in range(9):
        col = (R.f * ginv ** (j + 1)).shift(j).truncate(8)
        assert [M[i][j] for i in range(j, 9)] == list(col.coeffs[j:])


def test_call_and_matmul_aliases():
    R = pascal(6)
    g = Series.geometric(6)
    assert R(g) == riordan.riordan_apply(R, g)
    assert (R @ R).f == riordan.riordan_mul(R, R).f
    assert a_sequence(pascal(6)).a[0] == Fraction(1)

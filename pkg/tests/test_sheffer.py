import math
import random
from fractions import Fraction

import pytest

from _gen import h_series, series
from ward import catalog, sheffer
from ward.catalog import make_h
from ward.errors import InvalidH, InvalidParameter, PrecisionExhausted
from ward.operators import HSeries, d_h
from ward.series import Series


def test_classical_expansion():
    E = sheffer.sheffer_coeffs(make_h("pascal:2", 10))
    assert E.c[1] == 1 and not any(E.c[2:])
    assert E.finite_degree == 1


def test_pascal_columns():
    for s in range(2, 7):
        E = sheffer.sheffer_coeffs(make_h(f"pascal:{s}", 12))
        expected = [Fraction(math.comb(s - 2, k - 1), math.factorial(k)) for k in range(1, 13)]
        assert list(E.c[1:]) == expected
        assert E.verdict == sheffer.CalculusVerdict(sheffer.FINITE, s - 1)


def test_verdicts():
    assert sheffer.classify_calculus(make_h("pascal:1", 10)).kind == sheffer.INFINITE
    assert sheffer.classify_calculus(make_h("polylog:0", 10)).kind == sheffer.INFINITE
    for alpha in range(1, 6):
        v = sheffer.classify_calculus(make_h(f"polylog:{alpha}", 10))
        assert v == sheffer.CalculusVerdict(sheffer.FINITE, alpha)
    assert sheffer.classify_calculus(make_h("fibonomial", 10)).kind == sheffer.INFINITE
    assert sheffer.classify_calculus(make_h("q:1/2", 10)).kind == sheffer.INFINITE


def test_raw_data_verdicts():
    raw = HSeries(make_h("pascal:3", 10).base)  # no tag
    assert sheffer.classify_calculus(raw) == sheffer.CalculusVerdict(
        sheffer.FINITE_UP_TO_TRUNC, 2)
    raw_inf = HSeries(make_h("fibonomial", 10).base)
    assert sheffer.classify_calculus(raw_inf).kind == sheffer.UNKNOWN


def test_family_closed_forms():
    t = 12
    for alpha in range(1, 6):
        E = sheffer.sheffer_coeffs(make_h(f"polylog:{alpha}", t))
        assert [E.c[k] for k in range(1, alpha + 1)] == [catalog.stirling2(alpha, k)
                                                         for k in range(1, alpha + 1)]
    q = Fraction(3, 2)
    E = sheffer.sheffer_coeffs(make_h("q:3/2", t))
    assert all(E.c[k] == (q - 1) ** (k - 1) / math.factorial(k) for k in range(1, t + 1))


def test_reconstruct_monomials():
    rng = random.Random(1)
    for _ in range(5):
        h = h_series(rng, 15)
        E = sheffer.sheffer_coeffs(h)
        for n in range(16):
            xn = Series.monomial(n, 15)
            rec = sheffer.reconstruct_apply(E, xn)
            assert rec == d_h(h)(xn)
            if n:
                assert rec == Series.monomial(n - 1, 14, h[n])
        assert sheffer.reconstruct_apply(E, Series.one(15)).is_zero()


def test_reconstruct_degenerate():
    E = sheffer.sheffer_coeffs(make_h("pascal:2", 4))
    with pytest.raises(PrecisionExhausted):
        sheffer.reconstruct_apply(E, Series([1], 0))


def test_h_from_a():
    h = sheffer.h_from_a([0, 1, 1], 12)
    assert all(h[n] == math.comb(n + 1, 2) for n in range(13))
    y = series(random.Random(2), 12)
    E = sheffer.sheffer_coeffs(h)
    target = y.derivative() + y.derivative(2).shift(1).scale(Fraction(1, 2))
    assert sheffer.reconstruct_apply(E, y) == target.truncate(11)
    assert E.verdict == sheffer.CalculusVerdict(sheffer.FINITE, 2)
    assert sheffer.h_from_a([0, 1], 10).base == make_h("pascal:2", 10).base


def test_h_from_a_failures():
    with pytest.raises(InvalidH) as exc:
        sheffer.h_from_a([0, 1, -1], 10)
    assert exc.value.witness == 3
    with pytest.raises(InvalidParameter):
        sheffer.h_from_a([1, 1], 5)


def test_bcb_sums():
    assert sheffer.bcb_sums([0, 1, 1], 4) == [0, 1, 3, 6, 10]


def test_pascal_column_check():
    rng = random.Random(3)
    for s in range(2, 7):
        for _ in range(5):
            assert sheffer.pascal_column_expansion_check(s, series(rng, 20))
    assert sheffer.pascal_column_expansion_check(4, Series.monomial(3, 6))
    y = series(rng, 10)
    assert d_h(make_h("pascal:2", 10))(y) == y.derivative()
    with pytest.raises(InvalidParameter):
        sheffer.pascal_column_expansion_check(1, y)


def test_expansion_json():
    E = sheffer.sheffer_coeffs(make_h("polylog:2", 4))
    assert E.to_json() == {"c": ["1", "1", "0", "0"], "finite_degree": 2,
                           "verdict": "FiniteDegree"}
    assert E.a() == (0, 1, 2, 0, 0)

import json
import math
from fractions import Fraction

import pytest

from ward import catalog
from ward.catalog import (combinatorial_numbers, eulerian, exp_equals_hypergeom_check,
                          fibonacci, generalized_exp, hypergeom_pFq, make_h, parse_tag,
                          pochhammer, polylog_closed_form_check, polylog_eulerian_form,
                          q_integer, stirling2)
from ward.errors import InvalidParameter, PochhammerPole
from ward.series import Series


def test_parse_tags():
    assert parse_tag("pascal:4").param == 4
    assert parse_tag("q:3/2").param == Fraction(3, 2)
    assert parse_tag("fibonomial").family == catalog.FIBONOMIAL
    assert parse_tag("file:h.json").path == "h.json"
    for bad in ("pascal", "pascal:1/2", "nope:3", "q:x"):
        with pytest.raises(InvalidParameter):
            parse_tag(bad)


def test_family_coefficients():
    t = 10
    p4 = make_h("pascal:4", t)
    assert [p4[n] for n in range(1, t + 1)] == [math.comb(n + 2, 3) for n in range(1, t + 1)]
    assert all(make_h("polylog:1", t)[n] == n for n in range(t + 1))
    assert all(make_h("pascal:2", t)[n] == n for n in range(t + 1))
    fib = make_h("fibonomial", t)
    assert all(fib[n] == fibonacci(n) for n in range(t + 1))
    q = make_h("q:3", t)
    assert all(q[n] == q_integer(n, 3) for n in range(t + 1))


def test_invalid_parameters():
    with pytest.raises(InvalidParameter):
        make_h("pascal:0", 5)
    with pytest.raises(InvalidParameter):
        make_h("q:1", 5)
    with pytest.raises(InvalidParameter):
        make_h("polylog:-1", 5)
    # [2]_q = 1 + q vanishes
    with pytest.raises(InvalidParameter):
        make_h("q:-1", 5)


def test_file_family(tmp_path):
    path = tmp_path / "h.json"
    path.write_text(json.dumps(Series([0, 1, 2, 3], 3).to_json()))
    h = make_h(f"file:{path}", 3)
    assert h[3] == 3
    with pytest.raises(InvalidParameter):
        make_h(f"file:{path}", 5)


def test_numbers():
    assert stirling2(4, 2) == 7
    assert [stirling2(4, k) for k in range(5)] == [0, 1, 7, 6, 1]
    assert [eulerian(3, k) for k in range(3)] == [1, 4, 1]
    assert [fibonacci(n) for n in range(8)] == [0, 1, 1, 2, 3, 5, 8, 13]
    assert q_integer(4, 2) == 15
    assert combinatorial_numbers("stirling2", 5, 3) == 25
    assert combinatorial_numbers("qinteger", 3, q=Fraction(1, 2)) == Fraction(7, 4)
    with pytest.raises(InvalidParameter):
        combinatorial_numbers("bell", 3)


def test_polylog_forms():
    t = 12
    two = polylog_eulerian_form(2, t)
    num = Series([0, 1, 1], t)
    assert two == num * Series([1, -1], t) ** -3
    assert two == Series.from_function(lambda k: k * k, t)
    assert make_h("polylog:0", t).base == Series([0] + [1] * t, t)
    assert polylog_closed_form_check(0, t)
    assert polylog_closed_form_check(5, 30)


def test_generalized_exp():
    e = generalized_exp(make_h("pascal:2", 8))
    assert e == Series.from_function(lambda k: Fraction(1, math.factorial(k)), 8)
    with pytest.raises(InvalidParameter):
        generalized_exp(make_h("pascal:2", 3), 5)


def test_hypergeometric():
    expected = [1, 1, Fraction(1, 4), Fraction(1, 40), Fraction(1, 800), Fraction(1, 28000),
               Fraction(1, 1568000), Fraction(1, 131712000)]
    assert list(hypergeom_pFq([1], [1, 2, 3], 6, 7).coeffs) == expected
    exp = hypergeom_pFq([], [], 1, 9)
    assert exp == Series.from_function(lambda k: Fraction(1, math.factorial(k)), 9)
    assert hypergeom_pFq([5], [2], 3, 0).coeffs == (1,)
    assert pochhammer(3, 0) == 1 and pochhammer(3, 3) == 60


def test_pochhammer_pole():
    with pytest.raises(PochhammerPole) as exc:
        hypergeom_pFq([1], [-2], 1, 6)
    assert exc.value.index == 3


def test_exp_equals_hypergeom():
    assert exp_equals_hypergeom_check(4, 7)
    for s in range(2, 7):
        assert exp_equals_hypergeom_check(s, 20)
    # direct product oracle: h_k = C(k+s-2, s-1)
    for s in range(3, 7):
        e = generalized_exp(make_h(f"pascal:{s}", 12))
        prod = Fraction(1)
        for k in range(1, 13):
            prod *= math.comb(k + s - 2, s - 1)
            assert e[k] == 1 / prod

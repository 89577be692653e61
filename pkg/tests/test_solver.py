import math
import random
from fractions import Fraction

import pytest

from _gen import h_series, rat, series
from ward import solver
from ward.catalog import make_h
from ward.errors import InvalidParameter, NotNonExpansive, PrecisionExhausted, RootsDontFactor
from ward.operators import classical_h, d_h, i_h, identity_op, jackson0_h, zero_op
from ward.series import Series, mul_inverse

EXP = Series.from_function(lambda k: Fraction(1, math.factorial(k)), 12)
SINE = Series.from_function(
    lambda k: Fraction((-1) ** (k // 2), math.factorial(k)) if k % 2 else 0, 12)


def poly_rhs(*qs, trunc):
    return solver.PolynomialRHS(tuple(Series.constant(q, trunc) for q in qs))


def test_fixed_point_exp():
    P = solver.IVProblem(classical_h(13), 1, poly_rhs(0, 1, trunc=13), (1,))
    res = solver.solve_ivp_fixed_point(P, 12)
    assert res.series == EXP
    assert solver.verify_ivp(P, res.series)


def test_fixed_point_sine():
    P = solver.IVProblem(classical_h(14), 2, poly_rhs(0, -1, trunc=14), (0, 1))
    assert solver.solve_ivp_fixed_point(P, 12).series == SINE


def test_zero_rhs():
    rng = random.Random(1)
    h = h_series(rng, 10)
    init = (Fraction(2), Fraction(3), Fraction(-1))
    P = solver.IVProblem(h, 3, poly_rhs(0, trunc=10), init)
    res = solver.solve_ivp_fixed_point(P, 7)
    assert res.series == solver.initial_polynomial(h, init, 7)


def test_nonlinear_rhs():
    # y' = y^2, y(0) = 1 gives 1/(1-x)
    P = solver.IVProblem(classical_h(11), 1, poly_rhs(0, 0, 1, trunc=11), (1,))
    assert solver.solve_ivp_fixed_point(P, 10).series == Series.geometric(10)


def test_contraction_history():
    rng = random.Random(2)
    h = h_series(rng, 16)
    q = series(rng, 16)
    P = solver.IVProblem(h, 2, solver.LinearDhRHS(q, (Series.constant(2, 16),)), (1, -1))
    res = solver.solve_ivp_fixed_point(P, 14, record=True)
    for m, it in enumerate(res.history[1:], 1):
        assert it.agrees(res.series, min(m - 1, 14))
    assert solver.verify_ivp(P, res.series)


def test_precision_guard():
    P = solver.IVProblem(classical_h(5), 1, poly_rhs(0, 1, trunc=5), (1,))
    with pytest.raises(PrecisionExhausted):
        solver.solve_ivp_fixed_point(P, 5)


def test_linear_rhs_order_guard():
    q = Series.zero(5)
    with pytest.raises(InvalidParameter):
        solver.IVProblem(classical_h(6), 1, solver.LinearDhRHS(q, (q, q)), (1,))


def test_affine():
    h = classical_h(12)
    assert solver.solve_affine(h, identity_op(), Series.zero(12), 1, 12) == EXP
    q = series(random.Random(3), 12)
    assert solver.solve_affine(h, zero_op(), q, 2, 11) == (i_h(h)(q) + 2).truncate(11)
    ones = solver.solve_affine(jackson0_h(12), identity_op(), Series.zero(12), 1, 12)
    assert ones == Series.geometric(12)
    with pytest.raises(NotNonExpansive):
        solver.solve_affine(h, d_h(h), q, 1, 5)


def test_f_of_integral():
    rng = random.Random(4)
    h = make_h("pascal:3", 12)
    e = solver.solve_f_of_integral(h, Series.one(12), Series.zero(12), 3, 12)
    ref = solver.solve_affine(h, identity_op(), Series.zero(12), 3, 12)
    assert e == ref
    r = series(rng, 12)
    y0 = solver.solve_f_of_integral(h, Series.zero(12), r, 2, 11)
    assert y0 == (i_h(h)(r) + 2).truncate(11)
    for _ in range(5):
        h = h_series(rng, 21)
        f, r = series(rng, 21), series(rng, 21)
        T = solver.f_of_integral_operator(h, f)
        assert (solver.solve_f_of_integral(h, f, r, 1, 20)
                == solver.solve_affine(h, T, r, 1, 20))


def char(h, a, init, q=None):
    t = h.trunc
    q = Series.zero(t) if q is None else q
    return solver.CharProblem(h, tuple(a), q, tuple(init))


def test_heaviside_reduce():
    rng = random.Random(5)
    h = h_series(rng, 10)
    q = series(rng, 10)
    assert solver.heaviside_reduce(char(h, [2], [1], q)) == q
    P = char(h, [3, 5], [2, 7])
    assert solver.heaviside_reduce(P) == Series.constant(7 - 5 * 2, 10)


def test_reduction_recovers_equation():
    # D_h applied n-1 times to the reduced first-order data gives back the equation
    rng = random.Random(6)
    h = h_series(rng, 14)
    P = char(h, [rat(rng, nonzero=True), rat(rng), rat(rng)], [1, 2, 3], series(rng, 14))
    y = solver.solve_heaviside(P, 12)
    assert solver.verify_char_solution(P, y)


def test_heaviside_examples():
    h = classical_h(12)
    P = char(h, [1], [1])
    assert P.reflected() == [1, -1]
    assert solver.solve_heaviside(P, 12) == EXP
    longer = char(classical_h(13), [1], [1])
    assert solver.solve_heaviside(P, 12) == solver.solve_char_fixed_point(longer, 12).series
    assert solver.solve_heaviside(char(h, [-1, 0], [0, 1]), 12) == SINE
    two = solver.solve_heaviside(char(h, [-2, 3], [2, 3]), 12)
    assert all(two[k] == Fraction(1 + 2**k, math.factorial(k)) for k in range(13))
    assert two == solver.oracle_linear_solve(char(h, [-2, 3], [2, 3]), 12)


def test_partial_fractions():
    P = char(classical_h(10), [-2, 3], [0, 0])
    pf = solver.partial_fractions(P, trunc=10)
    assert pf.remainder_ok
    inv = mul_inverse(Series(P.reflected(), 10))
    assert list(inv.coeffs) == [2 ** (k + 1) - 1 for k in range(11)]
    B = {pf.roots[li][0]: v for (li, k), v in pf.B.items()}
    assert B == {1: -1, 2: 2}


def test_double_root():
    P = char(classical_h(10), [-1, 2], [1, 1])
    pf = solver.partial_fractions(P, [(1, 2)], trunc=10)
    assert pf.remainder_ok and set(pf.B) == {(0, 1), (0, 2)}
    assert solver.solve_via_roots(P, 10, pf) == solver.solve_heaviside(P, 10)


def test_roots_dont_factor():
    P = char(classical_h(8), [-1, 0], [0, 1])  # C = x^2 + 1
    with pytest.raises(RootsDontFactor):
        solver.partial_fractions(P)
    with pytest.raises(RootsDontFactor):
        solver.partial_fractions(P, [(1, 2)])


def test_rational_roots():
    assert solver.rational_roots([Fraction(2), -3, 1]) == [(1, 1), (2, 1)]
    # 4x^2 - 4x + 1 = (2x - 1)^2
    assert solver.rational_roots([1, -4, 4]) == [(Fraction(1, 2), 2)]


def test_oracle_examples():
    h = classical_h(10)
    assert solver.oracle_linear_solve(char(h, [3, 1], [0, 0]), 10).is_zero()
    fib = make_h("fibonomial", 12)
    y = solver.oracle_linear_solve(char(fib, [1], [1]), 12)
    prod = 1
    for k in range(1, 13):
        prod *= fib[k]
        assert y[k] == Fraction(1, prod)


def test_char_problem_validation():
    h = classical_h(5)
    with pytest.raises(InvalidParameter):
        char(h, [0, 1], [1, 1])
    with pytest.raises(InvalidParameter):
        char(h, [1, 1], [1])

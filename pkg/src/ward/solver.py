"""Initial value problems for h-differential equations.

Problem shapes:

* :class:`IVProblem` -- ``D_h^(n) y = G(y)`` with ``D_h^(j) y (0) = y_j``.
  ``G`` is one of the :class:`PolynomialRHS`, :class:`LinearDhRHS`,
  :class:`AffineIntegralRHS` forms, each Lipschitz enough for the fixed-point
  map to contract.  Solved by iterating
  ``F(f) = sum_j y_j x^j / (h_1...h_j) + I_h^(n)(G(f))`` from zero.
* :class:`CharProblem` -- constant coefficients,
  ``D_h^(n) y = a_0 y + a_1 D_h y + ... + a_(n-1) D_h^(n-1) y + q``.
  Solved through the reflected characteristic polynomial, via rational
  partial fractions when possible, and by a coefficientwise recursion that
  serves as an independent oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .errors import (InvalidParameter, NotNonExpansive, PrecisionExhausted,
                     RootsDontFactor)
from .operators import (HSeries, SeriesOperator, d_h, i_h, op_series,
                        op_series_apply)
from .series import Series, as_rat, mul_inverse


# -- right-hand sides -------------------------------------------------------


@dataclass(frozen=True)
class PolynomialRHS:
    """``G(y) = q_0 + q_1 y + q_2 y^2 + ...`` (Cauchy powers)."""

    q: Tuple[Series, ...]
    kind = "polynomial"

    def evaluate(self, h: HSeries, y: Series) -> Series:
        acc = None
        power = None
        for i, qi in enumerate(self.q):
            power = Series.one(y.trunc) if i == 0 else power * y
            term = qi * power
            acc = term if acc is None else acc + term
        return acc if acc is not None else Series.zero(y.trunc)


@dataclass(frozen=True)
class LinearDhRHS:
    """``G(y) = q + sum_i p_i D_h^(i)(y)``."""

    q: Series
    p: Tuple[Series, ...] = ()
    kind = "linear"

    def evaluate(self, h: HSeries, y: Series) -> Series:
        acc = self.q
        D = d_h(h)
        deriv = y
        for i, pi in enumerate(self.p):
            if i:
                deriv = D(deriv)
            if pi.is_zero():
                acc = acc.truncate(min(acc.trunc, pi.trunc))
            else:
                acc = acc + pi * deriv
        return acc


@dataclass(frozen=True)
class AffineIntegralRHS:
    """``G(y) = f(I_h)(y) + r``."""

    f: Series
    r: Series
    kind = "affine"

    def evaluate(self, h: HSeries, y: Series) -> Series:
        return op_series_apply(self.f, i_h(h), y) + self.r


RHSSpec = Union[PolynomialRHS, LinearDhRHS, AffineIntegralRHS]


@dataclass(frozen=True)
class IVProblem:
    h: HSeries
    n: int
    rhs: RHSSpec
    init: Tuple[Fraction, ...]

    def __post_init__(self):
        if self.n < 1:
            raise InvalidParameter("equation order must be >= 1")
        if len(self.init) != self.n:
            raise InvalidParameter(
                f"need {self.n} initial values, got {len(self.init)}")
        object.__setattr__(self, "init", tuple(as_rat(c) for c in self.init))
        # D_h^(i) is 2^i-Lipschitz; only i <= n-1 keeps F contractive
        if isinstance(self.rhs, LinearDhRHS) and len(self.rhs.p) > self.n:
            raise InvalidParameter(
                f"linear right-hand side of an order-{self.n} problem may use "
                f"D_h^(i) only for i < {self.n}")


@dataclass
class FixedPointResult:
    series: Series
    iterations: int
    history: List[Series] = field(default_factory=list)
    method: str = "fixed-point"


def initial_polynomial(h: HSeries, init: Sequence[Fraction], trunc: int) -> Series:
    """``y_0 + y_1 x / h_1 + y_2 x^2 / (h_1 h_2) + ...``."""
    out = []
    denom = Fraction(1)
    for j, yj in enumerate(init):
        if j:
            denom *= h[j]
        out.append(as_rat(yj) / denom)
    return Series(out[: trunc + 1], trunc)


def fixed_point_map(P: IVProblem, trunc: int):
    """Return ``F`` of the fixed-point formulation at working precision ``trunc``."""
    base = initial_polynomial(P.h, P.init, trunc)
    integ = i_h(P.h).power(P.n)

    def F(f: Series) -> Series:
        return base + integ(P.rhs.evaluate(P.h, f))

    return F


def solve_ivp_fixed_point(P: IVProblem, out_trunc: int, start: Optional[Series] = None,
                          record: bool = False) -> FixedPointResult:
    """Iterate ``F`` until two consecutive iterates agree on ``0..out_trunc``.

    ``F`` halves distances, so the loop ends within ``out_trunc + 2`` steps
    from the zero series.  ``start`` overrides the zero start (for
    uniqueness probes); ``record`` keeps every iterate in ``history``.
    """
    work = out_trunc + P.n
    if P.h.trunc < work:
        raise PrecisionExhausted(
            f"h known to {P.h.trunc}, need {work} for out_trunc {out_trunc}")
    F = fixed_point_map(P, work)
    cur = Series.zero(work) if start is None else start
    history = [cur] if record else []
    limit = out_trunc + 3 + (0 if start is None else work)
    for it in range(1, limit + 1):
        nxt = F(cur)
        if nxt.trunc < out_trunc:
            raise PrecisionExhausted(
                f"iterate only known to {nxt.trunc}; inputs too short for {out_trunc}")
        if record:
            history.append(nxt)
        if cur.trunc >= out_trunc and nxt.agrees(cur, out_trunc):
            return FixedPointResult(nxt.truncate(out_trunc), it, history)
        cur = nxt
    raise RuntimeError("fixed-point iteration failed to settle")  # unreachable if F contracts


def verify_ivp(P: IVProblem, y: Series) -> bool:
    """Substitute ``y`` back: equation on the known prefix and initial values."""
    D = d_h(P.h)
    deriv = y
    for j in range(P.n):
        if deriv.coeffs[0] != P.init[j]:
            return False
        deriv = D(deriv)
    return deriv.agrees(P.rhs.evaluate(P.h, y))


def solve_affine(h: HSeries, T: SeriesOperator, q: Series, y0, out_trunc: int) -> Series:
    """``D_h y = T(y) + q``, ``y(0) = y0``: ``sum_k (I_h o T)^k (y0 + I_h q)``."""
    if T.order_shift < 0:
        raise NotNonExpansive(f"T has order_shift {T.order_shift} < 0")
    if h.trunc < out_trunc:
        raise PrecisionExhausted(f"h known to {h.trunc}, need {out_trunc}")
    I = i_h(h)
    base = I(q) + as_rat(y0)
    step = I @ T
    acc = base
    term = base
    for _ in range(out_trunc):
        term = step(term)
        acc = acc + term
    if acc.trunc < out_trunc:
        raise PrecisionExhausted(f"solution only known to {acc.trunc}")
    return acc.truncate(out_trunc)


def solve_f_of_integral(h: HSeries, f: Series, r: Series, y0, out_trunc: int) -> Series:
    """``D_h y = f(I_h)(y) + r``: ``(1/(1 - x f))(I_h)(y0 + I_h r)``."""
    if h.trunc < out_trunc:
        raise PrecisionExhausted(f"h known to {h.trunc}, need {out_trunc}")
    I = i_h(h)
    geo = mul_inverse(1 - f.shift(1))
    y = op_series_apply(geo, I, I(r) + as_rat(y0))
    if y.trunc < out_trunc:
        raise PrecisionExhausted(f"solution only known to {y.trunc}")
    return y.truncate(out_trunc)


def f_of_integral_operator(h: HSeries, f: Series) -> SeriesOperator:
    return op_series(f, i_h(h))


# -- constant coefficients --------------------------------------------------


@dataclass(frozen=True)
class CharProblem:
    """``C(D_h)(y) = q`` with ``C(x) = x^n - sum_k a_k x^k``."""

    h: HSeries
    a: Tuple[Fraction, ...]
    q: Series
    init: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(as_rat(c) for c in self.a))
        object.__setattr__(self, "init", tuple(as_rat(c) for c in self.init))
        if not self.a:
            raise InvalidParameter("need at least one coefficient a_0")
        if self.a[0] == 0:
            raise InvalidParameter("a_0 must be nonzero (otherwise lower the order)")
        if len(self.init) != len(self.a):
            raise InvalidParameter(
                f"need {len(self.a)} initial values, got {len(self.init)}")

    @property
    def n(self) -> int:
        return len(self.a)

    def char_poly(self) -> List[Fraction]:
        """``C`` as coefficients by increasing power."""
        return [-c for c in self.a] + [Fraction(1)]

    def reflected(self) -> List[Fraction]:
        """``C*(x) = x^n C(1/x) = 1 - x P*(x)``."""
        return [Fraction(1)] + [-self.a[self.n - i] for i in range(1, self.n + 1)]

    def as_ivp(self) -> IVProblem:
        t = self.q.trunc
        p = tuple(Series.constant(c, t) for c in self.a)
        return IVProblem(self.h, self.n, LinearDhRHS(self.q, p), self.init)


def heaviside_reduce(P: CharProblem) -> Series:
    """The series ``r`` of the equivalent first-order problem.

    ``r_0 = q``, ``r_j = y_(n-j) - sum_{k=j}^{n-1} a_k y_(k-j) + I_h(r_(j-1))``;
    returns ``r_(n-1)``.
    """
    n, a, y = P.n, P.a, P.init
    I = i_h(P.h)
    r = P.q
    for j in range(1, n):
        const = y[n - j] - sum((a[k] * y[k - j] for k in range(j, n)), Fraction(0))
        r = I(r) + const
    return r


def _reduced_start(P: CharProblem) -> Series:
    return i_h(P.h)(heaviside_reduce(P)) + P.init[0]


def solve_heaviside(P: CharProblem, out_trunc: int) -> Series:
    """``y = (1/C*)(I_h)(y_0 + I_h(r))``."""
    if P.h.trunc < out_trunc:
        raise PrecisionExhausted(f"h known to {P.h.trunc}, need {out_trunc}")
    inv = mul_inverse(Series(P.reflected(), out_trunc))
    y = op_series_apply(inv, i_h(P.h), _reduced_start(P))
    if y.trunc < out_trunc:
        raise PrecisionExhausted(f"solution only known to {y.trunc}")
    return y.truncate(out_trunc)


def oracle_linear_solve(P: CharProblem, out_trunc: int) -> Series:
    """Coefficientwise forward substitution, independent of the operator route.

    ``D_h^(m)`` maps coefficient ``j + m`` to ``j`` with factor
    ``h_(j+1) ... h_(j+m)``, so equating coefficients of ``x^j`` gives
    ``y_(j+n)`` from lower ones.
    """
    n, a, h = P.n, P.a, P.h
    if h.trunc < out_trunc:
        raise PrecisionExhausted(f"h known to {h.trunc}, need {out_trunc}")
    if P.q.trunc < out_trunc - n:
        raise PrecisionExhausted(f"q known to {P.q.trunc}, need {out_trunc - n}")

    def H(j, m):
        out = Fraction(1)
        for i in range(1, m + 1):
            out *= h[j + i]
        return out

    c = [Fraction(0)] * (max(out_trunc, n - 1) + 1)
    for m in range(n):
        c[m] = P.init[m] / H(0, m)
    for j in range(0, out_trunc - n + 1):
        s = P.q[j]
        for k in range(n):
            s += a[k] * c[j + k] * H(j, k)
        c[j + n] = s / H(j, n)
    return Series(c[: out_trunc + 1], out_trunc)


def verify_char_solution(P: CharProblem, y: Series) -> bool:
    """Equation on the known prefix and all ``n`` initial values, exactly."""
    D = d_h(P.h)
    derivs = [y]
    for _ in range(P.n):
        derivs.append(D(derivs[-1]))
    for j in range(P.n):
        if derivs[j].coeffs[0] != P.init[j]:
            return False
    rhs = P.q
    for k in range(P.n):
        rhs = rhs + derivs[k].scale(P.a[k])
    return derivs[P.n].agrees(rhs)


# -- rational roots and partial fractions -----------------------------------


def _poly_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> List[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _poly_eval(p: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _synthetic_div(p: Sequence[Fraction], root: Fraction) -> List[Fraction]:
    """Quotient of ``p`` by ``(x - root)``; assumes exact divisibility."""
    deg = len(p) - 1
    out = [Fraction(0)] * deg
    carry = Fraction(0)
    for i in range(deg, 0, -1):
        carry = carry * root + p[i]
        out[i - 1] = carry
    return out


def _divisors(n: int) -> List[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(poly: Sequence) -> List[Tuple[Fraction, int]]:
    """Rational roots with multiplicity (rational root theorem)."""
    p = [as_rat(c) for c in poly]
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    den = math.lcm(*(c.denominator for c in p))
    ints = [int(c * den) for c in p]
    g = math.gcd(*ints)
    ints = [c // g for c in ints]
    roots: List[Tuple[Fraction, int]] = []
    zero_mult = 0
    while len(p) > 1 and p[0] == 0:
        p = p[1:]
        ints = ints[1:]
        zero_mult += 1
    if zero_mult:
        roots.append((Fraction(0), zero_mult))
    if len(p) == 1:
        return roots
    candidates = set()
    for num in _divisors(ints[0]):
        for d in _divisors(ints[-1]):
            candidates.add(Fraction(num, d))
            candidates.add(Fraction(-num, d))
    for cand in sorted(candidates):
        mult = 0
        while len(p) > 1 and _poly_eval(p, cand) == 0:
            p = _synthetic_div(p, cand)
            mult += 1
        if mult:
            roots.append((cand, mult))
    return roots


def _solve_linear(M: List[List[Fraction]], rhs: List[Fraction]) -> List[Fraction]:
    """Gauss-Jordan elimination over Q; ``M`` must be invertible."""
    n = len(M)
    A = [list(row) + [rhs[i]] for i, row in enumerate(M)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            raise ArithmeticError("singular system")
        A[col], A[piv] = A[piv], A[col]
        pv = A[col][col]
        A[col] = [v / pv for v in A[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                factor = A[r][col]
                A[r] = [vr - factor * vc for vr, vc in zip(A[r], A[col])]
    return [A[i][n] for i in range(n)]


@dataclass(frozen=True)
class PartialFractions:
    """Decomposition of ``1/C*(x)`` from the roots of ``C``.

    ``A[(l, k)]`` follows the form
    ``1/C* = (1/a_0) sum_l sum_k (-1)^(k+1) lambda_l^k A_lk / (1 - lambda_l x)^k``;
    ``B[(l, k)]`` is the plain coefficient of ``1/(1 - lambda_l x)^k``.
    """

    roots: Tuple[Tuple[Fraction, int], ...]
    A: Dict[Tuple[int, int], Fraction]
    B: Dict[Tuple[int, int], Fraction]
    remainder_ok: bool


def _binomial_series(lam: Fraction, k: int, trunc: int) -> Series:
    """``1/(1 - lam x)^k``."""
    return Series([math.comb(j + k - 1, k - 1) * lam**j for j in range(trunc + 1)], trunc)


def partial_fractions(P: CharProblem, roots: Optional[Sequence[Tuple]] = None,
                      trunc: int = 20) -> PartialFractions:
    """Partial fractions of ``1/C*`` over Q.

    Without ``roots`` a rational-root search is run first.  Raises
    :class:`RootsDontFactor` unless the roots factor ``C`` exactly.
    """
    C = P.char_poly()
    n = P.n
    if roots is None:
        roots = rational_roots(C)
    roots = tuple((as_rat(lam), int(m)) for lam, m in roots)
    prod = [Fraction(1)]
    for lam, m in roots:
        for _ in range(m):
            prod = _poly_mul(prod, [-lam, Fraction(1)])
    if sum(m for _, m in roots) != n or prod != C:
        raise RootsDontFactor(
            f"roots {[(str(l), m) for l, m in roots]} do not factor C over Q")
    if any(lam == 0 for lam, _ in roots):
        raise RootsDontFactor("zero root contradicts a_0 != 0")

    def factor(lam, power):
        out = [Fraction(1)]
        for _ in range(power):
            out = _poly_mul(out, [Fraction(1), -lam])
        return out

    # numerator polynomial paired with each unknown B_lk
    keys, cols = [], []
    for li, (lam, m) in enumerate(roots):
        for k in range(1, m + 1):
            num = factor(lam, m - k)
            for lj, (mu, mm) in enumerate(roots):
                if lj != li:
                    num = _poly_mul(num, factor(mu, mm))
            keys.append((li, k))
            cols.append(num + [Fraction(0)] * (n - len(num)))
    M = [[cols[c][row] for c in range(n)] for row in range(n)]
    rhs = [Fraction(1)] + [Fraction(0)] * (n - 1)
    sol = _solve_linear(M, rhs)
    B = dict(zip(keys, sol))
    a0 = P.a[0]
    A = {(li, k): a0 * (-1) ** (k + 1) * B[(li, k)] / roots[li][0] ** k
         for (li, k) in keys}

    reassembled = Series.zero(trunc)
    for (li, k), Ak in A.items():
        lam = roots[li][0]
        coef = Fraction((-1) ** (k + 1)) * lam**k * Ak / a0
        reassembled = reassembled + _binomial_series(lam, k, trunc).scale(coef)
    remainder_ok = reassembled == mul_inverse(Series(P.reflected(), trunc))
    return PartialFractions(roots, A, B, remainder_ok)


def solve_via_roots(P: CharProblem, out_trunc: int,
                    pf: Optional[PartialFractions] = None) -> Series:
    """Sum of ``(1/(1 - lambda x)^k)(I_h)`` terms applied to ``y_0 + I_h(r)``."""
    if pf is None:
        pf = partial_fractions(P, trunc=out_trunc)
    if P.h.trunc < out_trunc:
        raise PrecisionExhausted(f"h known to {P.h.trunc}, need {out_trunc}")
    I = i_h(P.h)
    start = _reduced_start(P)
    a0 = P.a[0]
    acc = None
    for (li, k), Ak in sorted(pf.A.items()):
        lam = pf.roots[li][0]
        coef = Fraction((-1) ** (k + 1)) * lam**k * Ak / a0
        term = op_series_apply(_binomial_series(lam, k, out_trunc), I, start).scale(coef)
        acc = term if acc is None else acc + term
    if acc.trunc < out_trunc:
        raise PrecisionExhausted(f"solution only known to {acc.trunc}")
    return acc.truncate(out_trunc)


def solve_char_fixed_point(P: CharProblem, out_trunc: int, record: bool = False) -> FixedPointResult:
    return solve_ivp_fixed_point(P.as_ivp(), out_trunc, record=record)

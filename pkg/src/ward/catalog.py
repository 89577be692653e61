"""Named h-families and the combinatorial numbers around them.

Families (CLI syntax in brackets):

* Pascal columns ``x/(1-x)^s`` [``pascal:s``]
* polylog ``sum k^alpha x^k`` [``polylog:alpha``]
* Fibonacci ``x/(1-x-x^2)`` [``fibonomial``]
* q-integers ``x/((1-x)(1-qx))`` [``q:p/r``]
* a series read from JSON [``file:path``]
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .errors import InvalidH, InvalidParameter, PochhammerPole
from .operators import HSeries
from .series import Series, as_rat, mul_inverse, parse_rat

PASCAL = "pascal"
POLYLOG = "polylog"
FIBONOMIAL = "fibonomial"
QCALC = "q"
CUSTOM = "custom"
FROM_A = "from-a"  # built by ward.sheffer.h_from_a from a polynomial


@dataclass(frozen=True)
class CatalogTag:
    family: str
    param: Optional[Fraction] = None
    path: Optional[str] = None
    # coefficients of the polynomial a for FROM_A tags
    a: Optional[tuple] = None

    def __str__(self):
        if self.family == FIBONOMIAL:
            return FIBONOMIAL
        if self.family == CUSTOM:
            return f"file:{self.path}" if self.path else CUSTOM
        if self.family == FROM_A:
            return "from-a:" + ",".join(str(c) for c in self.a)
        return f"{self.family}:{self.param}"


def parse_tag(text: str) -> CatalogTag:
    """Parse ``pascal:4``, ``polylog:2``, ``fibonomial``, ``q:3/2``, ``file:path``."""
    name, _, arg = text.partition(":")
    name = name.strip().lower()
    if name == FIBONOMIAL and not arg:
        return CatalogTag(FIBONOMIAL)
    if name == "file" and arg:
        return CatalogTag(CUSTOM, path=arg)
    if name in (PASCAL, POLYLOG, QCALC) and arg:
        try:
            p = parse_rat(arg)
        except ValueError as exc:
            raise InvalidParameter(str(exc)) from None
        if name != QCALC and p.denominator != 1:
            raise InvalidParameter(f"{name} parameter must be an integer, got {arg}")
        return CatalogTag(name, p)
    raise InvalidParameter(f"unknown h tag {text!r}")


# -- combinatorial numbers ------------------------------------------------


@lru_cache(maxsize=None)
def fibonacci(n: int) -> int:
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def q_integer(n: int, q) -> Fraction:
    """``[n]_q = 1 + q + ... + q^(n-1)``."""
    q = as_rat(q)
    return sum((q**i for i in range(n)), Fraction(0))


def stirling2_sum(n: int, k: int) -> Fraction:
    """``S(n, k)`` via ``(1/k!) sum_j (-1)^(k+j) C(k,j) j^n``."""
    s = sum((-1) ** (k + j) * math.comb(k, j) * j**n for j in range(k + 1))
    return Fraction(s, math.factorial(k))


@lru_cache(maxsize=None)
def stirling2_rec(n: int, k: int) -> int:
    if n == 0 and k == 0:
        return 1
    if n == 0 or k == 0:
        return 0
    return k * stirling2_rec(n - 1, k) + stirling2_rec(n - 1, k - 1)


def stirling2(n: int, k: int) -> int:
    a, b = stirling2_sum(n, k), stirling2_rec(n, k)
    if a != b:
        raise AssertionError(f"Stirling mismatch at ({n},{k}): {a} vs {b}")
    return b


@lru_cache(maxsize=None)
def eulerian(n: int, k: int) -> int:
    if n == 0:
        return 1 if k == 0 else 0
    if k < 0 or k >= n:
        return 0
    return (k + 1) * eulerian(n - 1, k) + (n - k) * eulerian(n - 1, k - 1)


def combinatorial_numbers(kind: str, n: int, k: Optional[int] = None, q=None) -> Fraction:
    """Dispatch on ``kind`` in {stirling2, eulerian, fibonacci, qinteger}."""
    kind = kind.lower()
    if kind == "stirling2":
        return Fraction(stirling2(n, k))
    if kind == "eulerian":
        return Fraction(eulerian(n, k))
    if kind == "fibonacci":
        return Fraction(fibonacci(n))
    if kind == "qinteger":
        return q_integer(n, q)
    raise InvalidParameter(f"unknown kind {kind!r}")


# -- h families -----------------------------------------------------------


def pascal_series(s: int, trunc: int) -> Series:
    """``x/(1-x)^s`` as a series."""
    return (mul_inverse(Series([1, -1], trunc)) ** s).shift(1).truncate(trunc)


def make_h(tag, trunc: int) -> HSeries:
    if isinstance(tag, str):
        tag = parse_tag(tag)
    fam = tag.family
    if fam == PASCAL:
        s = int(tag.param)
        if s < 1:
            raise InvalidParameter(f"pascal column needs s >= 1, got {s}")
        base = pascal_series(s, trunc)
    elif fam == POLYLOG:
        alpha = int(tag.param)
        if alpha < 0:
            raise InvalidParameter(f"polylog needs alpha >= 0, got {alpha}")
        base = Series([0] + [k**alpha for k in range(1, trunc + 1)], trunc)
    elif fam == FIBONOMIAL:
        base = (mul_inverse(Series([1, -1, -1], trunc))).shift(1).truncate(trunc)
    elif fam == QCALC:
        q = as_rat(tag.param)
        if q == 1:
            raise InvalidParameter("q-calculus needs q != 1")
        # x / ((1-x)(1-qx))
        base = mul_inverse(Series([1, -1 - q, q], trunc)).shift(1).truncate(trunc)
    elif fam == CUSTOM:
        with open(tag.path) as fh:
            base = Series.from_json(json.load(fh))
        if base.trunc < trunc:
            raise InvalidParameter(
                f"{tag.path} holds trunc {base.trunc}, need {trunc}")
        base = base.truncate(trunc)
    else:
        raise InvalidParameter(f"cannot build h for family {fam!r}")
    try:
        return HSeries(base, tag)
    except InvalidH as exc:
        raise InvalidParameter(f"{tag}: {exc}") from None


def polylog_eulerian_form(alpha: int, trunc: int) -> Series:
    """``(sum_i E(alpha,i) x^(alpha-i)) / (1-x)^(alpha+1)``."""
    num = [0] * (alpha + 1)
    for i in range(alpha + 1):
        num[alpha - i] = eulerian(alpha, i)
    den = Series([1, -1], trunc) ** (alpha + 1)
    return Series(num[: trunc + 1], trunc) * mul_inverse(den)


def polylog_closed_form_check(alpha: int, trunc: int) -> bool:
    """Does the Eulerian rational form reproduce ``h_alpha = sum_{k>=1} k^alpha x^k``?

    The Eulerian numerator also yields the ``k = 0`` term ``0^alpha``, which is
    1 for ``alpha = 0``; it is dropped before comparing, so ``alpha = 0``
    gives ``x/(1-x)``.
    """
    form = polylog_eulerian_form(alpha, trunc)
    zero_term = Fraction(1 if alpha == 0 else 0)
    if form.coeffs[0] != zero_term:
        return False
    h = make_h(CatalogTag(POLYLOG, Fraction(alpha)), trunc)
    return (form - zero_term) == h.base


def generalized_exp(h: HSeries, trunc: Optional[int] = None) -> Series:
    """``e_h^x = sum x^k / (h_1 h_2 ... h_k)``."""
    if trunc is None:
        trunc = h.trunc
    if trunc > h.trunc:
        raise InvalidParameter(f"trunc {trunc} exceeds h.trunc {h.trunc}")
    out = [Fraction(1)]
    for k in range(1, trunc + 1):
        out.append(out[-1] / h[k])
    return Series(out, trunc)


def pochhammer(a, n: int) -> Fraction:
    a = as_rat(a)
    out = Fraction(1)
    for i in range(n):
        out *= a + i
    return out


def hypergeom_pFq(upper: Sequence, lower: Sequence, scale, trunc: int) -> Series:
    """Coefficients of ``pFq(upper; lower; scale*x)`` up to ``x^trunc``."""
    upper = [as_rat(a) for a in upper]
    lower = [as_rat(b) for b in lower]
    scale = as_rat(scale)
    out = [Fraction(1)]
    term = Fraction(1)
    for k in range(trunc):
        den = Fraction(k + 1)
        for b in lower:
            if b + k == 0:
                raise PochhammerPole(
                    f"lower parameter {b} vanishes in (b)_{k + 1}", index=k + 1)
            den *= b + k
        num = scale
        for a in upper:
            num *= a + k
        term = term * num / den
        out.append(term)
    return Series(out, trunc)


def exp_equals_hypergeom_check(s: int, trunc: int) -> bool:
    """``e_{h_s}`` against ``1F(s-1)(1; 1, ..., s-1; (s-1)! x)``."""
    if s < 2:
        raise InvalidParameter("needs s >= 2")
    h = make_h(CatalogTag(PASCAL, Fraction(s)), trunc)
    lhs = generalized_exp(h, trunc)
    rhs = hypergeom_pFq([1], list(range(1, s)), math.factorial(s - 1), trunc)
    return lhs == rhs

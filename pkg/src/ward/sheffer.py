"""Rewriting ``D_h`` in classical derivatives.

Every h-derivative has a unique expansion

    D_h(y) = sum_{k>=1} c_k x^(k-1) y^(k),
    c_k = (1/k!) sum_{j=0}^{k} (-1)^(k+j) C(k, j) h_j,

equivalently ``c_k = a_k / k!`` with ``a`` the inverse-Pascal transform of
``h``.  ``h`` generates a *finite* calculus when only finitely many ``c_k``
are nonzero, which happens exactly when ``a`` is a polynomial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from . import catalog
from .catalog import CatalogTag
from .errors import InvalidH, InvalidParameter, PrecisionExhausted
from .operators import HSeries, d_h, jackson0_h
from .riordan import inverse_pascal, pascal, riordan_apply
from .series import Series, as_rat, mul_inverse

FINITE = "FiniteDegree"
INFINITE = "InfiniteCertified"
FINITE_UP_TO_TRUNC = "FiniteUpToTrunc"
UNKNOWN = "UnknownBeyondTrunc"


@dataclass(frozen=True)
class CalculusVerdict:
    kind: str
    degree: Optional[int] = None

    def to_json(self) -> dict:
        out = {"verdict": self.kind}
        if self.degree is not None:
            out["degree"] = self.degree
        return out


@dataclass(frozen=True)
class ShefferExpansion:
    """``L_k^h(x) = c[k] x^(k-1)`` for ``1 <= k <= trunc``; ``c[0] = 0``."""

    c: Tuple[Fraction, ...]
    finite_degree: Optional[int] = None
    verdict: Optional[CalculusVerdict] = None

    @property
    def trunc(self) -> int:
        return len(self.c) - 1

    def a(self) -> Tuple[Fraction, ...]:
        """``a_k = k! c_k``, the inverse-Pascal transform of ``h``."""
        return tuple(math.factorial(k) * ck for k, ck in enumerate(self.c))

    def to_json(self) -> dict:
        return {
            "c": [str(ck) for ck in self.c[1:]],
            "finite_degree": self.finite_degree,
            "verdict": self.verdict.kind if self.verdict else None,
        }


def sheffer_formula(h: HSeries) -> Tuple[Fraction, ...]:
    hc = h.base.coeffs
    out = [Fraction(0)]
    for k in range(1, h.trunc + 1):
        s = sum((-1) ** (k + j) * math.comb(k, j) * hc[j] for j in range(k + 1))
        out.append(Fraction(s) / math.factorial(k))
    return tuple(out)


def inverse_pascal_transform(h: HSeries) -> Series:
    return riordan_apply(inverse_pascal(h.trunc), h.base)


def sheffer_coeffs(h: HSeries, closed_form: Optional[CatalogTag] = None) -> ShefferExpansion:
    c = sheffer_formula(h)
    a = inverse_pascal_transform(h)
    for k in range(1, h.trunc + 1):
        if a[k] != c[k] * math.factorial(k):
            raise AssertionError(f"inverse-Pascal route disagrees at k={k}")
    verdict = classify_calculus(h, closed_form)
    degree = verdict.degree if verdict.kind == FINITE else None
    return ShefferExpansion(c, degree, verdict)


def reconstruct_apply(E: ShefferExpansion, y: Series) -> Series:
    """``sum_k c_k x^(k-1) y^(k)`` with classical derivatives."""
    trunc = min(y.trunc, E.trunc) - 1
    if trunc < 0:
        raise PrecisionExhausted("reconstruction needs trunc >= 1")
    acc = Series.zero(trunc)
    deriv = y
    for k in range(1, trunc + 2):
        deriv = deriv.derivative()
        if E.c[k]:
            acc = acc + deriv.shift(k - 1).scale(E.c[k])
    return acc


# -- finite / infinite ------------------------------------------------------


def closed_form_a(tag: CatalogTag, trunc: int) -> Tuple[Series, Optional[int]]:
    """Known closed form of ``a = P^-1 h`` for a catalog family.

    Returns ``(a up to trunc, degree)``; ``degree`` is None when ``a`` is
    known not to be a polynomial.
    """
    fam = tag.family
    alt = Series([0] + [(-1) ** (k - 1) for k in range(1, trunc + 1)], trunc)
    if fam == catalog.PASCAL:
        s = int(tag.param)
        if s == 1:
            return alt, None
        # a = x (1+x)^(s-2)
        a = [0] + [math.comb(s - 2, k - 1) for k in range(1, s)]
        return Series(a[: trunc + 1], trunc), s - 1
    if fam == catalog.POLYLOG:
        alpha = int(tag.param)
        if alpha == 0:
            return alt, None
        a = [0] + [math.factorial(k) * catalog.stirling2(alpha, k)
                   for k in range(1, alpha + 1)]
        return Series(a[: trunc + 1], trunc), alpha
    if fam == catalog.FIBONOMIAL:
        a = [0] + [(-1) ** (k + 1) * catalog.fibonacci(k) for k in range(1, trunc + 1)]
        return Series(a, trunc), None
    if fam == catalog.QCALC:
        q = as_rat(tag.param)
        # (q-1)^(k-1) never vanishes for q != 1
        a = [0] + [(q - 1) ** (k - 1) for k in range(1, trunc + 1)]
        return Series(a, trunc), None
    if fam == catalog.FROM_A:
        a = list(tag.a)
        while len(a) > 1 and a[-1] == 0:
            a.pop()
        return Series(a[: trunc + 1], trunc), len(a) - 1
    raise InvalidParameter(f"no closed form for family {fam!r}")


def classify_calculus(h: HSeries, closed_form: Optional[CatalogTag] = None) -> CalculusVerdict:
    """Finite or infinite differential calculus.

    With a closed form (explicit argument or ``h.tag``) the verdict is exact;
    from raw coefficients only ``FiniteUpToTrunc`` / ``UnknownBeyondTrunc``.
    """
    tag = closed_form if closed_form is not None else h.tag
    if tag is not None and tag.family != catalog.CUSTOM:
        _, degree = closed_form_a(tag, h.trunc)
        if degree is None:
            return CalculusVerdict(INFINITE)
        return CalculusVerdict(FINITE, degree)
    c = sheffer_formula(h)
    last = max((k for k in range(1, len(c)) if c[k] != 0), default=0)
    if last < h.trunc:
        return CalculusVerdict(FINITE_UP_TO_TRUNC, last)
    return CalculusVerdict(UNKNOWN)


def bcb_sums(a: Sequence, upto: int):
    """``sum_k C(n, k) a_k`` for ``n = 0..upto``."""
    a = [as_rat(c) for c in a]
    return [sum((math.comb(n, k) * a[k] for k in range(min(n, len(a) - 1) + 1)),
                Fraction(0)) for n in range(upto + 1)]


def h_from_a(a: Sequence, trunc: int) -> HSeries:
    """The ``h`` with ``P^-1 h = a`` for a polynomial ``a`` with ``a_0 = 0``."""
    a = [as_rat(c) for c in a]
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    m = len(a) - 1
    if a[0] != 0 or m < 1:
        raise InvalidParameter("a must have a_0 = 0 and degree >= 1")
    for n, s in enumerate(bcb_sums(a, trunc)):
        if n >= 1 and s == 0:
            raise InvalidH(f"h_{n} = sum_k C({n},k) a_k vanishes", witness=n)
    a_ser = Series(a[: trunc + 1], trunc)
    via_pascal = riordan_apply(pascal(trunc), a_ser)
    # (1/(1-x)^(m+1)) sum_k a_k x^k (1-x)^(m-k)
    one_minus_x = Series([1, -1], trunc)
    num = Series.zero(trunc)
    for k in range(1, m + 1):
        if a[k]:
            num = num + (one_minus_x ** (m - k)).shift(k).truncate(trunc).scale(a[k])
    via_closed = num * mul_inverse(one_minus_x ** (m + 1))
    if not via_pascal.agrees(via_closed):
        raise AssertionError("Pascal transform and closed form disagree")
    tag = CatalogTag(catalog.FROM_A, a=tuple(a))
    return HSeries(via_pascal.truncate(trunc), tag)


def pascal_column_expansion_check(s: int, y: Series) -> bool:
    """Finite classical sum, 0-Jackson sum and ``D_{h_s}`` agree on ``y``."""
    if s < 2:
        raise InvalidParameter("needs s >= 2")
    t = y.trunc
    h = catalog.make_h(CatalogTag(catalog.PASCAL, Fraction(s)), t)
    direct = d_h(h)(y)
    out_trunc = t - 1

    finite = Series.zero(out_trunc)
    deriv = y
    for k in range(1, min(s - 1, t) + 1):
        deriv = deriv.derivative()
        coef = Fraction(math.comb(s - 2, k - 1), math.factorial(k))
        finite = finite + deriv.shift(k - 1).scale(coef)

    d0y = d_h(jackson0_h(t))(y)
    lemma = d0y.scale(1)
    deriv = d0y
    for k in range(1, min(s - 1, out_trunc) + 1):
        deriv = deriv.derivative()
        coef = Fraction(math.comb(s - 1, k), math.factorial(k))
        lemma = lemma + deriv.shift(k).scale(coef)

    return (direct.trunc == finite.trunc == lemma.trunc
            and direct == finite and direct == lemma)

"""Ward derivatives, h-integrals and operator power series.

For a series ``h = sum h_k x^k`` with ``h_0 = 0`` and every ``h_k != 0``
(``k >= 1``) the h-derivative sends ``x^n`` to ``h_n x^(n-1)`` and the
h-integral sends ``x^n`` to ``x^(n+1) / h_(n+1)``.  ``h_n = n`` gives the
classical derivative, ``h_n = 1`` the 0-Jackson derivative.

Operators carry a structural ``order_shift``: a certified lower bound on
how much they raise the order of any input.  Operator power series
``f(T)`` need ``order_shift >= 1``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .errors import InvalidH, NotContractive, PrecisionExhausted
from .series import (ABOVE_TRUNC, Distance, Series, as_rat, hadamard, order,
                     ultra_dist)


class HSeries:
    """A series usable as ``h``: zero constant term, nonzero ``h_1 .. h_trunc``.

    ``tag`` optionally records where the series came from (a catalog tag);
    :func:`ward.sheffer.classify_calculus` uses it to certify finiteness.
    """

    __slots__ = ("base", "tag")

    def __init__(self, base: Series, tag=None):
        if not isinstance(base, Series):
            base = Series(base)
        if base.coeffs[0] != 0:
            raise InvalidH("h must have zero constant term", witness=0)
        for k in range(1, base.trunc + 1):
            if base.coeffs[k] == 0:
                raise InvalidH(f"h_{k} = 0", witness=k)
        self.base = base
        self.tag = tag

    @property
    def trunc(self) -> int:
        return self.base.trunc

    def __getitem__(self, k):
        return self.base[k]

    def __eq__(self, other):
        if isinstance(other, HSeries):
            return self.base == other.base
        return NotImplemented

    def __hash__(self):
        return hash(self.base)

    def __repr__(self):
        tag = f", tag={self.tag!r}" if self.tag is not None else ""
        return f"HSeries({self.base!r}{tag})"

    def truncate(self, trunc: int) -> "HSeries":
        return HSeries(self.base.truncate(trunc), self.tag)


def classical_h(trunc: int) -> HSeries:
    """``x/(1-x)^2``, i.e. ``h_n = n``."""
    return HSeries(Series(range(trunc + 1), trunc))


def jackson0_h(trunc: int) -> HSeries:
    """``x/(1-x)``, i.e. ``h_n = 1``."""
    return HSeries(Series([0] + [1] * trunc, trunc))


@dataclass(frozen=True)
class SeriesOperator:
    """Linear map on truncated series with a certified order shift."""

    action: Callable[[Series], Series]
    order_shift: int
    name: str = "T"
    linear: bool = field(default=True)

    def __call__(self, s: Series) -> Series:
        return self.action(s)

    def __matmul__(self, other: "SeriesOperator") -> "SeriesOperator":
        """Composition: ``(self @ other)(s) == self(other(s))``."""
        return SeriesOperator(lambda s: self.action(other.action(s)),
                              self.order_shift + other.order_shift,
                              f"({self.name} o {other.name})")

    def __add__(self, other: "SeriesOperator") -> "SeriesOperator":
        return SeriesOperator(lambda s: self.action(s) + other.action(s),
                              min(self.order_shift, other.order_shift),
                              f"({self.name} + {other.name})")

    def __sub__(self, other: "SeriesOperator") -> "SeriesOperator":
        return SeriesOperator(lambda s: self.action(s) - other.action(s),
                              min(self.order_shift, other.order_shift),
                              f"({self.name} - {other.name})")

    def __rmul__(self, c) -> "SeriesOperator":
        c = as_rat(c)
        return SeriesOperator(lambda s: self.action(s).scale(c),
                              self.order_shift, f"{c}*{self.name}")

    def __neg__(self) -> "SeriesOperator":
        return (-1) * self

    def power(self, n: int) -> "SeriesOperator":
        def act(s):
            for _ in range(n):
                s = self.action(s)
            return s

        return SeriesOperator(act, n * self.order_shift, f"{self.name}^{n}")


def identity_op() -> SeriesOperator:
    return SeriesOperator(lambda s: s, 0, "I")


def zero_op() -> SeriesOperator:
    # any shift is honest for the zero map; 1 makes it usable inside f(T)
    return SeriesOperator(lambda s: Series.zero(s.trunc), 1, "0")


def d_h(h: HSeries) -> SeriesOperator:
    """The h-derivative ``x^n -> h_n x^(n-1)``; loses one known coefficient."""
    hc = h.base.coeffs

    def act(s: Series) -> Series:
        n = min(s.trunc, h.trunc) - 1
        if n < 0:
            raise PrecisionExhausted("h-derivative needs trunc >= 1")
        sc = s.coeffs
        return Series._raw([hc[k + 1] * sc[k + 1] for k in range(n + 1)], n)

    return SeriesOperator(act, -1, "D_h")


def i_h(h: HSeries) -> SeriesOperator:
    """The h-integral ``x^n -> x^(n+1) / h_(n+1)``; zero constant term."""
    hc = h.base.coeffs

    def act(s: Series) -> Series:
        n = min(s.trunc + 1, h.trunc)
        sc = s.coeffs
        return Series._raw(
            [Fraction(0)] + [sc[k] / hc[k + 1] for k in range(n)], n)

    return SeriesOperator(act, 1, "I_h")


def d_h_power(h: HSeries, n: int) -> SeriesOperator:
    return d_h(h).power(n)


def i_h_power(h: HSeries, n: int) -> SeriesOperator:
    return i_h(h).power(n)


def hadamard_derivative_identity_check(h: HSeries, s: Series) -> bool:
    """Three-way check of ``D_h(s) == D_0(h) * D_0(s) == D_0(h * s)``."""
    d0 = d_h(jackson0_h(max(h.trunc, s.trunc)))
    try:
        direct = d_h(h)(s)
        split = hadamard(d0(h.base), d0(s))
        joint = d0(hadamard(h.base, s))
    except PrecisionExhausted:
        return True  # nothing known to compare
    return direct.agrees(split) and direct.agrees(joint) and split.agrees(joint)


def _order_floor(s: Series) -> int:
    w = order(s)
    return s.trunc + 1 if w is ABOVE_TRUNC else w


def op_series_apply(f: Series, T: SeriesOperator, s: Series) -> Series:
    """Apply ``f(T) = sum f_n T^n`` to ``s``.

    Requires ``T.order_shift >= 1``; the sum is cut where ``T^n(s)`` can no
    longer reach a known coefficient.
    """
    shift = T.order_shift
    if shift < 1:
        raise NotContractive(
            f"operator series needs order_shift >= 1, got {shift}")
    w = _order_floor(s)
    cap = (f.trunc + 1) * shift - 1 + w  # unknown f_n live at or above this + 1
    acc = s.scale(f.coeffs[0])
    term = s
    n = 1
    while n <= f.trunc and n * shift + w <= min(acc.trunc, cap):
        term = T(term)
        if f.coeffs[n]:
            acc = acc + term.scale(f.coeffs[n])
        n += 1
    return acc.truncate(min(acc.trunc, cap))


def op_series(f: Series, T: SeriesOperator) -> SeriesOperator:
    """``f(T)`` as an operator."""
    if T.order_shift < 1:
        raise NotContractive(
            f"operator series needs order_shift >= 1, got {T.order_shift}")
    w = order(f)
    w = f.trunc + 1 if w is ABOVE_TRUNC else w
    return SeriesOperator(lambda s: op_series_apply(f, T, s),
                          w * T.order_shift, f"f({T.name})")


class OperatorClass(enum.Enum):
    ISOMETRY = "Isometry"
    CONTRACTIVE = "Contractive"


def classify_f_of_T(f: Series) -> OperatorClass:
    """``f(T)`` for contractive ``T`` is contractive iff ``f(0) = 0``."""
    return OperatorClass.CONTRACTIVE if f.coeffs[0] == 0 else OperatorClass.ISOMETRY


@dataclass(frozen=True)
class OpDistance:
    """Result of :func:`op_dist`.

    ``distance`` is a lower bound on the operator distance when a witness
    monomial was found (a finite probe never certifies the supremum), and an
    upper-bound placeholder ``2**-(probe_trunc+1)`` when no probe told the
    operators apart.  ``probe_distance`` is the plain series distance
    ``d(T1 x^k, T2 x^k)`` at the witness.
    """

    distance: Distance
    witness: Optional[int] = None
    probe_distance: Optional[Distance] = None


def op_dist(T1: SeriesOperator, T2: SeriesOperator, probe_trunc: int) -> OpDistance:
    """Sup over monomial probes ``x^k`` of ``2^k * d(T1 x^k, T2 x^k)``."""
    best = None
    for k in range(probe_trunc + 1):
        probe = Series.monomial(k, probe_trunc + 1)
        dist = ultra_dist(T1(probe), T2(probe))
        if not dist.exact:
            continue
        scaled = dist.value * 2**k
        if best is None or scaled > best[0]:
            best = (scaled, k, dist)
    if best is None:
        return OpDistance(Distance(Fraction(1, 2 ** (probe_trunc + 1)), "upper"))
    return OpDistance(Distance(best[0], "lower"), best[1], best[2])


def barrow_check(h: HSeries, s: Series) -> bool:
    """``I_h(D_h(s)) == s - s_0`` on the known prefix."""
    try:
        lhs = i_h(h)(d_h(h)(s))
    except PrecisionExhausted:
        return True
    return lhs.agrees(s - s.coeffs[0])


def ftc_check(h: HSeries, s: Series) -> bool:
    """``D_h(I_h(s)) == s`` on the known prefix."""
    try:
        lhs = d_h(h)(i_h(h)(s))
    except PrecisionExhausted:
        return True
    return lhs.agrees(s)


def leibniz_defect(h: HSeries, f: Series, g: Series) -> Series:
    """``D_h(f g) - f D_h(g) - g D_h(f)``; identically zero only for ``h_n = n``."""
    D = d_h(h)
    return D(f * g) - f * D(g) - g * D(f)

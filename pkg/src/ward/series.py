"""Truncated formal power series with exact rational coefficients.

A :class:`Series` stores the coefficients ``c_0 .. c_trunc`` of a power
series over the rationals.  ``trunc`` is the highest exponent whose
coefficient is reliably known; nothing is assumed about higher terms.
Every operation propagates precision pessimistically, so the ``trunc`` of a
result is the largest exponent fully determined by its inputs.

    >>> from ward.series import Series
    >>> geo = Series.geometric(5)
    >>> (geo * geo).coeffs[:4]
    (Fraction(1, 1), Fraction(2, 1), Fraction(3, 1), Fraction(4, 1))
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Callable, Iterable, Sequence, Union

from . import kernels
from .errors import NonzeroInnerConstant, PrecisionExhausted, ZeroConstantTerm

Rat = Fraction
Scalar = Union[int, Fraction]

_RAT_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rat(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` (decimal integers) into a Fraction.

    Anything else, including decimals like ``"0.5"`` and ``"1//2"``, raises
    ``ValueError`` naming the offending token.
    """
    m = _RAT_RE.match(text)
    if m is None:
        raise ValueError(f"malformed fraction {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rat(c: Fraction) -> str:
    return str(c)


def as_rat(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)) and not isinstance(c, bool):
        return Fraction(c)
    if isinstance(c, str):
        return parse_rat(c)
    raise TypeError(f"exact rational expected, got {type(c).__name__}")


class _AboveTrunc:
    """Order of a series whose known coefficients all vanish."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "AboveTrunc"

    def __reduce__(self):
        return (_AboveTrunc, ())


ABOVE_TRUNC = _AboveTrunc()


@dataclass(frozen=True)
class Distance:
    """Ultrametric distance, possibly only bounded.

    ``kind`` is ``"exact"``, ``"upper"`` (true value <= ``value``) or
    ``"lower"`` (true value >= ``value``).
    """

    value: Fraction
    kind: str = "exact"

    @property
    def exact(self) -> bool:
        return self.kind == "exact"


class Series:
    """Immutable truncated power series over Q."""

    __slots__ = ("_coeffs", "_trunc")

    def __init__(self, coeffs: Iterable = (), trunc: int | None = None):
        cs = [as_rat(c) for c in coeffs]
        if trunc is None:
            trunc = len(cs) - 1
        if trunc < 0:
            raise ValueError("trunc must be non-negative")
        if len(cs) > trunc + 1:
            cs = cs[: trunc + 1]
        elif len(cs) < trunc + 1:
            cs.extend([Fraction(0)] * (trunc + 1 - len(cs)))
        self._coeffs = tuple(cs)
        self._trunc = trunc

    @classmethod
    def _raw(cls, coeffs, trunc):
        obj = cls.__new__(cls)
        obj._coeffs = tuple(coeffs)
        obj._trunc = trunc
        return obj

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, trunc: int) -> "Series":
        return cls((), trunc)

    @classmethod
    def constant(cls, c: Scalar, trunc: int) -> "Series":
        return cls((c,), trunc)

    @classmethod
    def one(cls, trunc: int) -> "Series":
        return cls((1,), trunc)

    @classmethod
    def monomial(cls, k: int, trunc: int, c: Scalar = 1) -> "Series":
        if k > trunc:
            return cls.zero(trunc)
        return cls([0] * k + [c], trunc)

    @classmethod
    def x(cls, trunc: int) -> "Series":
        return cls.monomial(1, trunc)

    @classmethod
    def geometric(cls, trunc: int, ratio: Scalar = 1) -> "Series":
        """``1/(1 - ratio*x)``."""
        r = as_rat(ratio)
        return cls([r**k for k in range(trunc + 1)], trunc)

    @classmethod
    def from_function(cls, fn: Callable[[int], Scalar], trunc: int) -> "Series":
        return cls([fn(k) for k in range(trunc + 1)], trunc)

    # -- basic access -----------------------------------------------------

    @property
    def coeffs(self) -> tuple:
        return self._coeffs

    @property
    def trunc(self) -> int:
        return self._trunc

    def __getitem__(self, k):
        if isinstance(k, slice):
            return self._coeffs[k]
        if k < 0 or k > self._trunc:
            raise IndexError(f"coefficient {k} not known (trunc {self._trunc})")
        return self._coeffs[k]

    def __len__(self):
        return self._trunc + 1

    def __iter__(self):
        return iter(self._coeffs)

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return self._trunc == other._trunc and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self._trunc, self._coeffs))

    def __repr__(self):
        body = ", ".join(format_rat(c) for c in self._coeffs)
        return f"Series([{body}], trunc={self._trunc})"

    def __str__(self):
        terms = []
        for k, c in enumerate(self._coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append(f"-{mono}")
            else:
                terms.append(f"{c}{'*' + mono if mono else ''}")
        body = " + ".join(terms) if terms else "0"
        return f"{body} + O(x^{self._trunc + 1})"

    def agrees(self, other: "Series", upto: int | None = None) -> bool:
        """Coefficientwise equality on the common known prefix."""
        n = min(self._trunc, other._trunc)
        if upto is not None:
            n = min(n, upto)
        return self._coeffs[: n + 1] == other._coeffs[: n + 1]

    def truncate(self, trunc: int) -> "Series":
        if trunc > self._trunc:
            raise PrecisionExhausted(
                f"cannot raise trunc from {self._trunc} to {trunc}")
        return Series._raw(self._coeffs[: trunc + 1], trunc)

    def is_zero(self) -> bool:
        return not any(self._coeffs)

    # -- ring operations --------------------------------------------------

    def _lift(self, other) -> "Series":
        if isinstance(other, Series):
            return other
        return Series.constant(as_rat(other), self._trunc)

    def __add__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        n = min(self._trunc, other._trunc)
        return Series._raw(
            [self._coeffs[k] + other._coeffs[k] for k in range(n + 1)], n)

    __radd__ = __add__

    def __neg__(self):
        return Series._raw([-c for c in self._coeffs], self._trunc)

    def __sub__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        n = min(self._trunc, other._trunc)
        return Series._raw(
            [self._coeffs[k] - other._coeffs[k] for k in range(n + 1)], n)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Scalar) -> "Series":
        c = as_rat(c)
        return Series._raw([c * a for a in self._coeffs], self._trunc)

    def __mul__(self, other):
        if isinstance(other, Series):
            return cauchy_mul(self, other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, Series):
            return cauchy_mul(self, mul_inverse(other))
        try:
            return self.scale(1 / as_rat(other))
        except TypeError:
            return NotImplemented

    def __pow__(self, n: int) -> "Series":
        if n < 0:
            return mul_inverse(self) ** (-n)
        result = Series.one(self._trunc)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __call__(self, inner: "Series") -> "Series":
        return compose(self, inner)

    # -- calculus helpers ---------------------------------------------------

    def shift(self, k: int) -> "Series":
        """Multiply by ``x**k``; negative ``k`` divides (low terms must vanish)."""
        if k >= 0:
            return Series._raw((Fraction(0),) * k + self._coeffs, self._trunc + k)
        k = -k
        if any(self._coeffs[:k]):
            raise ValueError(f"series not divisible by x^{k}")
        if self._trunc - k < 0:
            raise PrecisionExhausted("no known coefficients remain after shift")
        return Series._raw(self._coeffs[k:], self._trunc - k)

    def derivative(self, times: int = 1) -> "Series":
        """Classical derivative; each application loses one known coefficient."""
        out = self
        for _ in range(times):
            if out._trunc < 1:
                raise PrecisionExhausted("derivative of a trunc-0 series")
            out = Series._raw(
                [k * out._coeffs[k] for k in range(1, out._trunc + 1)],
                out._trunc - 1)
        return out

    def inverse(self) -> "Series":
        return mul_inverse(self)

    def hadamard(self, other: "Series") -> "Series":
        return hadamard(self, other)

    def order(self):
        return order(self)

    def reversion(self) -> "Series":
        return reversion(self)

    def to_json(self) -> dict:
        return {"trunc": self._trunc, "coeffs": [format_rat(c) for c in self._coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> "Series":
        coeffs = obj["coeffs"]
        trunc = int(obj["trunc"])
        if len(coeffs) != trunc + 1:
            raise ValueError(
                f"coeffs has {len(coeffs)} entries, expected trunc+1 = {trunc + 1}")
        return cls([parse_rat(str(c)) for c in coeffs], trunc)


def add(a: Series, b: Series) -> Series:
    return a + b


def sub(a: Series, b: Series) -> Series:
    return a - b


def scale(a: Series, c: Scalar) -> Series:
    return a.scale(c)


def cauchy_mul(a: Series, b: Series) -> Series:
    n = min(a.trunc, b.trunc)
    return Series._raw(kernels.convolve(list(a.coeffs), list(b.coeffs), n), n)


def mul_inverse(a: Series) -> Series:
    """Multiplicative inverse; requires a nonzero constant term."""
    if a.coeffs[0] == 0:
        raise ZeroConstantTerm("series with zero constant term has no inverse")
    return Series._raw(kernels.reciprocal(list(a.coeffs), a.trunc), a.trunc)


def compose(f: Series, g: Series) -> Series:
    """``f(g(x))``; ``g`` must have zero constant term."""
    if g.coeffs[0] != 0:
        raise NonzeroInnerConstant("inner series of a composition needs g(0) = 0")
    n = min(f.trunc, g.trunc)
    return Series._raw(kernels.compose(list(f.coeffs), list(g.coeffs), n), n)


def hadamard(a: Series, b: Series) -> Series:
    n = min(a.trunc, b.trunc)
    return Series._raw([a.coeffs[k] * b.coeffs[k] for k in range(n + 1)], n)


def order(a: Series):
    for k, c in enumerate(a.coeffs):
        if c != 0:
            return k
    return ABOVE_TRUNC


def ultra_dist(a: Series, b: Series) -> Distance:
    """``2**-order(a - b)``, or an upper bound when the difference is unresolved."""
    diff = a - b
    w = order(diff)
    if w is ABOVE_TRUNC:
        return Distance(Fraction(1, 2 ** (diff.trunc + 1)), "upper")
    return Distance(Fraction(1, 2**w))


def reversion(u: Series) -> Series:
    """Compositional inverse ``v`` with ``u(v(x)) = v(u(x)) = x``.

    Uses Lagrange inversion: ``[x^k] v = (1/k) [x^(k-1)] (x/u)^k``.
    """
    if u.coeffs[0] != 0:
        raise NonzeroInnerConstant("reversion needs u(0) = 0")
    if u.trunc < 1 or u.coeffs[1] == 0:
        raise ZeroConstantTerm("reversion needs a nonzero linear coefficient")
    t = u.trunc
    phi = mul_inverse(u.shift(-1))  # x/u, trunc t-1
    out = [Fraction(0)] * (t + 1)
    power = Series.one(t - 1)
    for k in range(1, t + 1):
        power = power * phi
        out[k] = power.coeffs[k - 1] / k
    return Series._raw(out, t)


def polynomial(coeffs: Sequence[Scalar], trunc: int) -> Series:
    """Exact polynomial viewed as a series known up to ``trunc``."""
    return Series(list(coeffs)[: trunc + 1], trunc)

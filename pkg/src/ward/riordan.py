"""Riordan matrices ``T(f|g)``.

Column ``j`` of ``T(f|g)`` is generated by ``x^j f / g^(j+1)``.  The pair
``(f, g)`` is the canonical representation; :func:`materialize` builds the
lower-triangular matrix only for checks and display.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List

from .errors import PrecisionExhausted, ZeroConstantTerm
from .series import Series, compose, mul_inverse, reversion


@dataclass(frozen=True)
class RiordanPair:
    f: Series
    g: Series

    def __post_init__(self):
        if self.f.coeffs[0] == 0 or self.g.coeffs[0] == 0:
            raise ZeroConstantTerm("Riordan pair needs f(0) != 0 and g(0) != 0")

    @property
    def trunc(self) -> int:
        return min(self.f.trunc, self.g.trunc)

    def ratio(self) -> Series:
        """Common ratio ``x/g`` of the column progression."""
        return mul_inverse(self.g).shift(1)

    def __matmul__(self, other: "RiordanPair") -> "RiordanPair":
        return riordan_mul(self, other)

    def __call__(self, gamma: Series) -> Series:
        return riordan_apply(self, gamma)


def identity(trunc: int) -> RiordanPair:
    return RiordanPair(Series.one(trunc), Series.one(trunc))


def pascal(trunc: int) -> RiordanPair:
    """Pascal's triangle ``T(1 | 1-x)``."""
    return RiordanPair(Series.one(trunc), Series([1, -1], trunc))


def inverse_pascal(trunc: int) -> RiordanPair:
    """``T(1 | 1+x)``, entries ``(-1)^(n+k) C(n, k)``."""
    return RiordanPair(Series.one(trunc), Series([1, 1], trunc))


def riordan_apply(R: RiordanPair, gamma: Series) -> Series:
    """``(f/g) * gamma(x/g)``, the generating function of ``T(f|g) * gamma``."""
    u = R.ratio()
    return (R.f * mul_inverse(R.g)) * compose(gamma, u)


def riordan_mul(R1: RiordanPair, R2: RiordanPair) -> RiordanPair:
    """``T(f|g) T(l|m) = T(f * l(x/g) | g * m(x/g))``."""
    u = R1.ratio()
    return RiordanPair(R1.f * compose(R2.f, u), R1.g * compose(R2.g, u))


@dataclass(frozen=True)
class ASeq:
    """A-sequence of a Riordan pair: ``(x/A) o (x/g) = x``."""

    a: Series


def _ratio_reversion(R: RiordanPair) -> Series:
    u = R.ratio()
    return reversion(u)


def a_sequence(R: RiordanPair) -> ASeq:
    # x/A is the compositional inverse of x/g, so A = x / reversion(x/g)
    v = _ratio_reversion(R)
    return ASeq(mul_inverse(v.shift(-1)))


def riordan_inverse(R: RiordanPair) -> RiordanPair:
    """``T(1 / f(x/A) | A)``."""
    v = _ratio_reversion(R)  # v = x/A
    A = mul_inverse(v.shift(-1))
    f_at = compose(R.f, v)
    return RiordanPair(mul_inverse(f_at), A)


def materialize(R: RiordanPair, rows: int) -> List[List[Fraction]]:
    """Rows ``0..rows`` of the lower-triangular matrix, entry ``[i][j]`` for ``j <= i``."""
    if rows > R.trunc:
        raise PrecisionExhausted(f"rows {rows} exceed trunc {R.trunc}")
    f = R.f.truncate(rows)
    ginv = mul_inverse(R.g.truncate(rows))
    col = f * ginv  # f / g
    cols = []
    for j in range(rows + 1):
        cols.append(col.coeffs)
        col = (col * ginv).shift(1).truncate(rows)  # x^(j+1) f / g^(j+2)
    return [[cols[j][i] for j in range(i + 1)] for i in range(rows + 1)]


def matrix_apply(matrix: List[List[Fraction]], vector) -> List[Fraction]:
    """Lower-triangular matrix times a coefficient vector."""
    return [sum((row[j] * vector[j] for j in range(len(row))), Fraction(0))
            for row in matrix]


def a_sequence_recurrence_holds(R: RiordanPair, rows: int) -> bool:
    """Check ``d[i][j] = sum_k a_k d[i-1][j-1+k]`` for ``i, j >= 1``."""
    M = materialize(R, rows)
    a = a_sequence(R).a
    for i in range(1, rows + 1):
        for j in range(1, i + 1):
            s = Fraction(0)
            for k in range(i - j + 1):
                s += a[k] * M[i - 1][j - 1 + k]
            if s != M[i][j]:
                return False
    return True

"""Pure-Python coefficient kernels.

Every kernel takes plain lists of ``Fraction`` and returns a list of
``Fraction`` of length ``n + 1``.  Inputs are rescaled to a common
denominator so the inner loops run on Python ints; the gcd reduction
happens once per output coefficient instead of once per multiply-add.

The compiled twin in ``_ckernels.pyx`` implements the same algorithms and
must return identical values.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm


def to_common(coeffs):
    """Return ``(nums, den)`` with ``coeffs[i] == nums[i] / den``."""
    den = 1
    for c in coeffs:
        den = lcm(den, c.denominator)
    return [c.numerator * (den // c.denominator) for c in coeffs], den


def int_convolve(a, b, n):
    la, lb = len(a), len(b)
    out = [0] * (n + 1)
    for k in range(n + 1):
        lo = k - lb + 1
        if lo < 0:
            lo = 0
        hi = k if k < la - 1 else la - 1
        s = 0
        for i in range(lo, hi + 1):
            s += a[i] * b[k - i]
        out[k] = s
    return out


def convolve(a, b, n):
    """Cauchy product of ``a`` and ``b`` up to ``x**n``."""
    A, da = to_common(a[: n + 1])
    B, db = to_common(b[: n + 1])
    den = da * db
    return [Fraction(c, den) for c in int_convolve(A, B, n)]


def reciprocal(a, n):
    """Coefficients of ``1/a`` up to ``x**n``; ``a[0]`` must be nonzero."""
    A, da = to_common(a[: n + 1])
    la = len(A)
    a0 = A[0]
    # b_m = B_m / a0**(m+1) with B integral
    pw = [1] * (n + 2)
    for k in range(1, n + 2):
        pw[k] = pw[k - 1] * a0
    B = [0] * (n + 1)
    B[0] = 1
    for m in range(1, n + 1):
        s = 0
        top = m if m < la - 1 else la - 1
        for k in range(1, top + 1):
            s += A[k] * B[m - k] * pw[k - 1]
        B[m] = -s
    return [Fraction(da * B[m], pw[m + 1]) for m in range(n + 1)]


def compose(f, g, n):
    """Coefficients of ``f(g(x))`` up to ``x**n``; ``g[0]`` must be zero."""
    F, df = to_common(f[: n + 1])
    G, dg = to_common(g[: n + 1])
    top = len(F) - 1
    if top > n:
        top = n
    out = [0] * (n + 1)
    power = [1] + [0] * n
    dpow = [1] * (top + 1)
    for k in range(1, top + 1):
        dpow[k] = dpow[k - 1] * dg
    for k in range(top + 1):
        scale = F[k] * dpow[top - k]
        if scale:
            for i in range(k, n + 1):
                out[i] += scale * power[i]
        if k < top:
            power = int_convolve(power, G, n)
    den = df * dpow[top]
    return [Fraction(c, den) for c in out]

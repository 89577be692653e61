# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``ward._kernels_py``.

Same algorithms, same results; loop indices are C integers and the lists are
typed, the coefficient arithmetic stays on Python ints.
"""

from fractions import Fraction
from math import lcm


cpdef tuple to_common(list coeffs):
    cdef object den = 1
    cdef object c
    for c in coeffs:
        den = lcm(den, c.denominator)
    return [c.numerator * (den // c.denominator) for c in coeffs], den


cpdef list int_convolve(list a, list b, Py_ssize_t n):
    cdef Py_ssize_t la = len(a), lb = len(b)
    cdef Py_ssize_t k, i, lo, hi
    cdef list out = [0] * (n + 1)
    cdef object s
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


cpdef list convolve(list a, list b, Py_ssize_t n):
    cdef list A, B
    A, da = to_common(a[: n + 1])
    B, db = to_common(b[: n + 1])
    den = da * db
    return [Fraction(c, den) for c in int_convolve(A, B, n)]


cpdef list reciprocal(list a, Py_ssize_t n):
    cdef list A
    A, da = to_common(a[: n + 1])
    cdef Py_ssize_t la = len(A)
    cdef Py_ssize_t k, m, top
    cdef object a0 = A[0]
    cdef list pw = [1] * (n + 2)
    for k in range(1, n + 2):
        pw[k] = pw[k - 1] * a0
    cdef list B = [0] * (n + 1)
    B[0] = 1
    cdef object s
    for m in range(1, n + 1):
        s = 0
        top = m if m < la - 1 else la - 1
        for k in range(1, top + 1):
            s += A[k] * B[m - k] * pw[k - 1]
        B[m] = -s
    return [Fraction(da * B[m], pw[m + 1]) for m in range(n + 1)]


cpdef list compose(list f, list g, Py_ssize_t n):
    cdef list F, G
    F, df = to_common(f[: n + 1])
    G, dg = to_common(g[: n + 1])
    cdef Py_ssize_t top = len(F) - 1
    if top > n:
        top = n
    cdef Py_ssize_t k, i
    cdef list out = [0] * (n + 1)
    cdef list power = [1] + [0] * n
    cdef list dpow = [1] * (top + 1)
    for k in range(1, top + 1):
        dpow[k] = dpow[k - 1] * dg
    cdef object scale
    for k in range(top + 1):
        scale = F[k] * dpow[top - k]
        if scale:
            for i in range(k, n + 1):
                out[i] += scale * power[i]
        if k < top:
            power = int_convolve(power, G, n)
    den = df * dpow[top]
    return [Fraction(c, den) for c in out]

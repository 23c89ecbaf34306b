# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled tableau kernels. Same contract as ``_simplex_py``."""
from fractions import Fraction
from math import gcd


cdef object _mk
cdef object _ZERO = Fraction(0)
try:
    _mk = Fraction._from_coprime_ints
except AttributeError:
    def _mk(n, d):
        return Fraction(n, d, _normalize=False)


cdef inline object _axpy(object a, object f, object b):
    """``a - f * b`` on numerator/denominator ints, skipping Fraction dispatch."""
    cdef object an = a.numerator, ad = a.denominator
    cdef object n = f.numerator * b.numerator
    cdef object d = f.denominator * b.denominator
    cdef object g = gcd(n, d)
    if g != 1:
        n //= g
        d //= g
    if ad == d:
        n = an - n
    else:
        n = an * d - n * ad
        d = ad * d
    if not n:
        return _ZERO
    g = gcd(n, d)
    if g != 1:
        n //= g
        d //= g
    return _mk(n, d)


def pivot(list rows, list obj, Py_ssize_t r, Py_ssize_t c):
    cdef list prow = rows[r]
    cdef list row
    cdef Py_ssize_t width = len(prow)
    cdef Py_ssize_t i, k, m = len(rows)
    cdef list nz
    cdef object p = prow[c]
    cdef object f
    if p != 1:
        for k in range(width):
            if prow[k]:
                prow[k] = prow[k] / p
    nz = [k for k in range(width) if prow[k]]
    for i in range(m):
        if i == r:
            continue
        row = rows[i]
        f = row[c]
        if f:
            for k in nz:
                row[k] = _axpy(row[k], f, prow[k])
    f = obj[c]
    if f:
        for k in nz:
            obj[k] = _axpy(obj[k], f, prow[k])


def entering(list obj, Py_ssize_t ncols, list allowed):
    cdef Py_ssize_t j
    for j in range(ncols):
        if allowed[j] and obj[j] < 0:
            return j
    return -1


def leaving(list rows, list basis, Py_ssize_t c):
    cdef Py_ssize_t i, best = -1, m = len(rows)
    cdef object a, ratio, best_ratio = None
    cdef list row
    for i in range(m):
        row = rows[i]
        a = row[c]
        if a > 0:
            ratio = row[len(row) - 1] / a
            if best < 0 or ratio < best_ratio or (ratio == best_ratio and basis[i] < basis[best]):
                best = i
                best_ratio = ratio
    return best

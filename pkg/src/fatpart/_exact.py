"""Small exact linear algebra over Fractions (object arrays or nested lists)."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

import numpy as np


def is_exact_scalar(x) -> bool:
    return isinstance(x, Rational) and not isinstance(x, bool)


def is_exact_array(a) -> bool:
    a = np.asarray(a, dtype=object) if not isinstance(a, np.ndarray) else a
    return a.dtype == object and all(is_exact_scalar(x) for x in a.flat)


def to_fraction_array(a) -> np.ndarray:
    arr = np.array(a, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for idx, x in np.ndenumerate(arr):
        out[idx] = Fraction(x)
    return out


def _rows(a) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in np.asarray(a, dtype=object)]


def det(a) -> Fraction:
    """Determinant by Gaussian elimination with exact pivots."""
    m = _rows(a)
    n = len(m)
    sign = 1
    result = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            sign = -sign
        p = m[col][col]
        result *= p
        for r in range(col + 1, n):
            f = m[r][col]
            if f:
                f = f / p
                row_r, row_c = m[r], m[col]
                for k in range(col + 1, n):
                    row_r[k] -= f * row_c[k]
    return sign * result


def rank(a) -> int:
    m = _rows(a)
    if not m:
        return 0
    nr, nc = len(m), len(m[0])
    r = 0
    for col in range(nc):
        piv = next((i for i in range(r, nr) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, nr):
            f = m[i][col] / m[r][col]
            if f:
                for k in range(col, nc):
                    m[i][k] -= f * m[r][k]
        r += 1
        if r == nr:
            break
    return r


def inverse(a) -> np.ndarray:
    """Gauss-Jordan inverse; raises ZeroDivisionError on singular input."""
    m = _rows(a)
    n = len(m)
    aug = [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return np.array([row[n:] for row in aug], dtype=object)


def identity(n: int) -> np.ndarray:
    out = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            out[i, j] = Fraction(int(i == j))
    return out


def projector(l: int, n: int) -> np.ndarray:
    """``diag(1,...,1,0,...,0)`` with ``l`` ones: the matrix J_l."""
    if not 0 <= l <= n:
        raise ValueError(f"projector rank must satisfy 0 <= l <= N, got l={l}, N={n}")
    out = identity(n)
    for i in range(l, n):
        out[i, i] = Fraction(0)
    return out

"""Fixed-size 3x3 linear algebra in binary64.

A ``Mat3`` is a C-contiguous ``(3, 3)`` float64 array indexed row-major
(``A[i, j]`` is row ``i``, column ``j``).  Every kernel here is compiled with
numba in nopython mode; sums are written out term by term so that the
evaluation order is fixed left-to-right and no fused multiply-add is needed.

Kernels are written so that the pure-Python fallback (``NUMBA_DISABLE_JIT=1``)
also works on object arrays of :class:`fractions.Fraction`, which the test
suite uses to check the formulas exactly.
"""
from __future__ import annotations

import math

import numpy as np
from numba import njit

EPS = 2.0**-53
"""Unit roundoff of binary64."""


class SingularMatrix(ArithmeticError):
    """Raised when a 3x3 matrix has a floating-point determinant of zero."""


def mat3(entries) -> np.ndarray:
    """Build a ``Mat3`` from nine numbers or any 3x3 nested sequence."""
    a = np.ascontiguousarray(entries, dtype=np.float64)
    if a.size != 9:
        raise ValueError(f"expected 9 entries, got {a.size}")
    return a.reshape(3, 3)


def check_finite(a: np.ndarray) -> np.ndarray:
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    return a


def diag(x0: float, x1: float, x2: float) -> np.ndarray:
    a = np.zeros((3, 3))
    a[0, 0], a[1, 1], a[2, 2] = x0, x1, x2
    return a


@njit(cache=True)
def trace(a):
    return a[0, 0] + a[1, 1] + a[2, 2]


@njit(cache=True)
def dev(a):
    """Deviatoric part ``A - tr(A)/3 I`` by trace shift.

    Not used by the stable invariant kernels, which work with diagonal
    differences instead; this one does not vanish for ``alpha*I`` in general.
    """
    s = a.copy()
    m = (a[0, 0] + a[1, 1] + a[2, 2]) / 3
    s[0, 0] = a[0, 0] - m
    s[1, 1] = a[1, 1] - m
    s[2, 2] = a[2, 2] - m
    return s


@njit(cache=True)
def matmul(a, b):
    c = np.empty_like(a)
    for i in range(3):
        for j in range(3):
            c[i, j] = a[i, 0] * b[0, j] + a[i, 1] * b[1, j] + a[i, 2] * b[2, j]
    return c


@njit(cache=True)
def transpose(a):
    t = np.empty_like(a)
    for i in range(3):
        for j in range(3):
            t[i, j] = a[j, i]
    return t


@njit(cache=True)
def cofactor(a):
    """Signed 2x2 minors; ``A @ cofactor(A).T == det(A) * I``."""
    c = np.empty_like(a)
    c[0, 0] = a[1, 1] * a[2, 2] - a[1, 2] * a[2, 1]
    c[0, 1] = a[1, 2] * a[2, 0] - a[1, 0] * a[2, 2]
    c[0, 2] = a[1, 0] * a[2, 1] - a[1, 1] * a[2, 0]
    c[1, 0] = a[0, 2] * a[2, 1] - a[0, 1] * a[2, 2]
    c[1, 1] = a[0, 0] * a[2, 2] - a[0, 2] * a[2, 0]
    c[1, 2] = a[0, 1] * a[2, 0] - a[0, 0] * a[2, 1]
    c[2, 0] = a[0, 1] * a[1, 2] - a[0, 2] * a[1, 1]
    c[2, 1] = a[0, 2] * a[1, 0] - a[0, 0] * a[1, 2]
    c[2, 2] = a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]
    return c


@njit(cache=True)
def det(a):
    """Determinant by cofactor expansion along the first row."""
    c00 = a[1, 1] * a[2, 2] - a[1, 2] * a[2, 1]
    c01 = a[1, 2] * a[2, 0] - a[1, 0] * a[2, 2]
    c02 = a[1, 0] * a[2, 1] - a[1, 1] * a[2, 0]
    return a[0, 0] * c00 + a[0, 1] * c01 + a[0, 2] * c02


@njit(cache=True)
def _adjugate_and_det(a):
    c = cofactor(a)
    d = a[0, 0] * c[0, 0] + a[0, 1] * c[0, 1] + a[0, 2] * c[0, 2]
    return transpose(c), d


def inverse_adjugate(a: np.ndarray) -> np.ndarray:
    """Inverse as ``adj(A) / det(A)``; raises :class:`SingularMatrix` if ``fl(det) == 0``."""
    adj, d = _adjugate_and_det(a)
    if d == 0:
        raise SingularMatrix("matrix is singular in double precision")
    return adj / d


@njit(cache=True)
def frobenius_norm(a):
    s = 0.0
    for i in range(3):
        for j in range(3):
            s = s + a[i, j] * a[i, j]
    return math.sqrt(s)

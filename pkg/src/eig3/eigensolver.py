"""Closed-form eigenvalues of real diagonalizable 3x3 matrices.

The eigenvalues come from the trigonometric form of the cubic,

    lambda_k = (I1 + 2 sqrt(3 J2) cos((phi + 2 pi k) / 3)) / 3,   k = 1, 2, 3,

with the triple angle ``phi = atan2(sqrt(27 disc), 27 J3)``.  Using the
two-argument arctangent keeps ``phi`` in ``[0, pi]``, and for that range the
``k = 1, 2, 3`` ordering is already ascending.
"""
from __future__ import annotations

import math
import warnings
from typing import NamedTuple

import numpy as np
from numba import njit

from .invariants import (
    disc_naive,
    disc_stable,
    j2_naive,
    j2_stable,
    j3_naive,
    j3_stable,
)
from .mat3 import EPS, cofactor, dev, frobenius_norm, mat3, transpose

TWO_PI = 2.0 * math.pi


class EigenTriple(NamedTuple):
    lambda1: float
    lambda2: float
    lambda3: float


class NonRealSpectrum(UserWarning):
    """The computed discriminant is negative beyond rounding tolerance.

    The returned reals are then not the eigenvalues of the input; the
    spectrum likely contains a complex pair.
    """


class NotSymmetric(ValueError):
    pass


@njit(cache=True)
def triple_angle(j3, disc):
    # not max(disc, 0.0): that keeps -0.0, and atan2(-0.0, x < 0) is -pi
    dc = disc if disc > 0 else 0.0
    return math.atan2(math.sqrt(27 * dc), 27 * j3)


@njit(cache=True)
def _sort3(x, y, z):
    if x > y:
        x, y = y, x
    if y > z:
        y, z = z, y
    if x > y:
        x, y = y, x
    return x, y, z


@njit(cache=True)
def eigvals_from_invariants(i1, j2, j3, disc, mean):
    """Eigenvalue triple from precomputed invariants.

    ``mean`` is returned three times when ``j2 <= 0``; callers pass a mean
    that is exact for scaled identities.
    """
    if j2 <= 0:
        return mean, mean, mean
    phi = triple_angle(j3, disc)
    s = 2 * math.sqrt(3 * j2)
    l1 = (i1 + s * math.cos((phi + TWO_PI) / 3)) / 3
    l2 = (i1 + s * math.cos((phi + 2 * TWO_PI) / 3)) / 3
    l3 = (i1 + s * math.cos((phi + 3 * TWO_PI) / 3)) / 3
    return _sort3(l1, l2, l3)


@njit(cache=True)
def _diagonal_mean(a):
    # a00 + ((a11 - a00) + (a22 - a00)) / 3, written with the difference signs
    # of the invariant kernels
    return a[0, 0] - ((a[0, 0] - a[1, 1]) + (a[0, 0] - a[2, 2])) / 3


@njit(cache=True)
def eigvals_kernel(a):
    """Stable eigenvalue pipeline; returns ``(l1, l2, l3, disc)``."""
    i1 = a[0, 0] + a[1, 1] + a[2, 2]
    j2 = j2_stable(a)
    j3 = j3_stable(a)
    disc = disc_stable(a)
    l1, l2, l3 = eigvals_from_invariants(i1, j2, j3, disc, _diagonal_mean(a))
    return l1, l2, l3, disc


@njit(cache=True)
def eigvals_naive_kernel(a):
    i1 = a[0, 0] + a[1, 1] + a[2, 2]
    j2 = j2_naive(a)
    j3 = j3_naive(a)
    disc = disc_naive(j2, j3)
    l1, l2, l3 = eigvals_from_invariants(i1, j2, j3, disc, _diagonal_mean(a))
    return l1, l2, l3, disc


@njit(cache=True)
def _symmetrize_upper(a):
    s = np.empty((3, 3))
    for i in range(3):
        s[i, i] = a[i, i]
        for j in range(i + 1, 3):
            s[i, j] = a[i, j]
            s[j, i] = a[i, j]
    return s


@njit(cache=True)
def eigvalss_kernel(a):
    """Symmetric pipeline reading only the upper triangle.

    With an exactly symmetric operand the off-diagonal J2 products are
    squares, and the sum-of-products discriminant becomes a weighted sum of
    squares, so neither can come out negative.
    """
    s = _symmetrize_upper(a)
    i1 = s[0, 0] + s[1, 1] + s[2, 2]
    j2 = j2_stable(s)
    j3 = j3_stable(s)
    d = disc_stable(s)
    disc = d if d > 0 else 0.0
    return eigvals_from_invariants(i1, j2, j3, disc, _diagonal_mean(s))


@njit(cache=True)
def eigvals_batch(batch):
    """Stable eigenvalues of an ``(n, 3, 3)`` stack, as an ``(n, 3)`` array."""
    n = batch.shape[0]
    out = np.empty((n, 3))
    for k in range(n):
        l1, l2, l3, _ = eigvals_kernel(batch[k])
        out[k, 0] = l1
        out[k, 1] = l2
        out[k, 2] = l3
    return out


@njit(cache=True)
def disc_bound_double(a):
    """Lowest-order forward error bound of the discriminant, in doubles."""
    j2 = j2_stable(a)
    j3 = j3_stable(a)
    at = transpose(a)
    cd = cofactor(dev(a))
    m = np.empty((3, 3))
    for i in range(3):
        for j in range(3):
            m[i, j] = 12 * j2 * j2 * at[i, j] - 54 * j3 * cd[i, j]
    return frobenius_norm(dev(m)) * frobenius_norm(dev(a)) * EPS


def _check_spectrum(a: np.ndarray, disc: float) -> None:
    if disc < 0 and disc < -10 * disc_bound_double(a):
        warnings.warn(
            f"discriminant {disc!r} is negative beyond rounding; spectrum is likely not real",
            NonRealSpectrum,
            stacklevel=3,
        )


def eigvals(a) -> EigenTriple:
    """Ascending eigenvalues of a real diagonalizable matrix with real spectrum.

    Emits :class:`NonRealSpectrum` (a warning, not an exception) when the
    discriminant is clearly negative; the triple is returned regardless.
    """
    a = mat3(a)
    l1, l2, l3, disc = eigvals_kernel(a)
    _check_spectrum(a, disc)
    return EigenTriple(l1, l2, l3)


def eigvals_naive(a) -> EigenTriple:
    """Same closed form fed by the naive J2, J3 and ``4 J2^3 - 27 J3^2``.

    Kept for benchmarking only.
    """
    a = mat3(a)
    l1, l2, l3, disc = eigvals_naive_kernel(a)
    _check_spectrum(a, disc)
    return EigenTriple(l1, l2, l3)


def eigvalss(a) -> EigenTriple:
    """Ascending eigenvalues of a symmetric matrix.

    Raises :class:`NotSymmetric` unless ``|a_ij - a_ji| <= 4 eps max|a|``.
    """
    a = mat3(a)
    tol = 4 * EPS * np.max(np.abs(a))
    if np.max(np.abs(a - a.T)) > tol:
        raise NotSymmetric("matrix is not symmetric to working accuracy")
    return EigenTriple(*eigvalss_kernel(a))

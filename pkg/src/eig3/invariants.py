"""Invariants I1, J2, J3 and the discriminant of a 3x3 matrix.

Three families of kernels are provided:

* stable kernels, which only ever see the diagonal through the differences
  ``d0 = a00 - a11``, ``d1 = a00 - a22``, ``d2 = a11 - a22`` and therefore
  return an exact zero for any scaled identity;
* naive kernels, which expand each invariant as one monomial sum;
* tensor kernels, which form ``S = dev(A)`` by trace shift and evaluate the
  definitions ``tr(S S) / 2`` and ``det(S)``.

The statement order inside every kernel is part of its contract: rounding
errors measured by the benchmarks depend on it.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from numba import njit

from .mat3 import cofactor, det, dev, matmul, trace, transpose


class AlgorithmVariant(enum.Enum):
    STABLE = "stable"
    NAIVE = "naive"
    TENSOR = "tensor"


@dataclass(frozen=True)
class InvariantSet:
    i1: float
    j2: float
    j3: float
    disc: float
    variant: AlgorithmVariant


@njit(cache=True)
def diagonal_differences(a):
    return a[0, 0] - a[1, 1], a[0, 0] - a[2, 2], a[1, 1] - a[2, 2]


@njit(cache=True)
def i1(a):
    return a[0, 0] + a[1, 1] + a[2, 2]


@njit(cache=True)
def j2_stable(a):
    d0 = a[0, 0] - a[1, 1]
    d1 = a[0, 0] - a[2, 2]
    d2 = a[1, 1] - a[2, 2]
    offdiag = a[0, 1] * a[1, 0] + a[0, 2] * a[2, 0] + a[1, 2] * a[2, 1]
    diag = (d0 * d0 + d1 * d1 + d2 * d2) / 6
    return diag + offdiag


@njit(cache=True)
def j2_naive(a):
    a00, a01, a02 = a[0, 0], a[0, 1], a[0, 2]
    a10, a11, a12 = a[1, 0], a[1, 1], a[1, 2]
    a20, a21, a22 = a[2, 0], a[2, 1], a[2, 2]
    return (
        a00 * a00
        - a00 * a11
        - a00 * a22
        + 3 * a01 * a10
        + 3 * a02 * a20
        + a11 * a11
        - a11 * a22
        + 3 * a12 * a21
        + a22 * a22
    ) / 3


@njit(cache=True)
def j2_tensor(a):
    s = dev(a)
    return trace(matmul(s, s)) / 2


@njit(cache=True)
def j3_stable(a):
    d0 = a[0, 0] - a[1, 1]
    d1 = a[0, 0] - a[2, 2]
    d2 = a[1, 1] - a[2, 2]
    t1 = d1 + d2
    t2 = d0 - d2
    t3 = -d0 - d1
    offdiag = a[0, 1] * a[1, 2] * a[2, 0] + a[0, 2] * a[1, 0] * a[2, 1]
    mixed = (
        a[0, 1] * a[1, 0] * t1 + a[0, 2] * a[2, 0] * t2 + a[1, 2] * a[2, 1] * t3
    ) / 3
    diag = t1 * t2 * t3 / 27
    return offdiag + mixed - diag


@njit(cache=True)
def j3_naive(a):
    a00, a01, a02 = a[0, 0], a[0, 1], a[0, 2]
    a10, a11, a12 = a[1, 0], a[1, 1], a[1, 2]
    a20, a21, a22 = a[2, 0], a[2, 1], a[2, 2]
    return (
        2 * a00 * a00 * a00
        - 3 * a00 * a00 * a11
        - 3 * a00 * a00 * a22
        + 9 * a00 * a01 * a10
        + 9 * a00 * a02 * a20
        - 3 * a00 * a11 * a11
        + 12 * a00 * a11 * a22
        - 18 * a00 * a12 * a21
        - 3 * a00 * a22 * a22
        + 9 * a01 * a10 * a11
        - 18 * a01 * a10 * a22
        + 27 * a01 * a12 * a20
        + 27 * a02 * a10 * a21
        - 18 * a02 * a11 * a20
        + 9 * a02 * a20 * a22
        + 2 * a11 * a11 * a11
        - 3 * a11 * a11 * a22
        + 9 * a11 * a12 * a21
        - 3 * a11 * a22 * a22
        + 9 * a12 * a21 * a22
        + 2 * a22 * a22 * a22
    ) / 27


@njit(cache=True)
def j3_tensor(a):
    return det(dev(a))


@njit(cache=True)
def _dx(m, d0, d1, d2):
    m01, m02, m10 = m[0, 1], m[0, 2], m[1, 0]
    m12, m20, m21 = m[1, 2], m[2, 0], m[2, 1]
    r1 = m01 * m12 * m20 - m02 * m10 * m21
    r2 = -m01 * m02 * d2 + m01 * m01 * m12 - m02 * m02 * m21
    r3 = m01 * m21 * d1 - m01 * m01 * m20 + m02 * m21 * m21
    r4 = m02 * m12 * d0 + m01 * m12 * m12 - m02 * m02 * m10
    r5 = m01 * m12 * d1 - m01 * m02 * m10 + m02 * m12 * m21
    r6 = m02 * m21 * d0 - m01 * m02 * m20 + m01 * m12 * m21
    r7 = -m02 * m10 * d2 + m01 * m10 * m12 - m02 * m12 * m20
    r8 = m12 * d0 * d1 - m02 * m10 * d1 + m01 * m10 * m12 - m12 * m12 * m21
    r9 = m12 * d0 * d1 - m02 * m10 * d0 + m02 * m12 * m20 - m12 * m12 * m21
    # the m02*m21*d2 term must enter with +; with - the weighted sum no longer
    # equals 4 J2^3 - 27 J3^2
    r10 = m01 * d1 * d2 + m02 * m21 * d2 + m01 * m02 * m20 - m01 * m01 * m10
    r11 = m01 * d1 * d2 + m02 * m21 * d1 + m01 * m12 * m21 - m01 * m01 * m10
    r12 = -m02 * d0 * d2 + m01 * m12 * d0 + m02 * m12 * m21 - m02 * m02 * m20
    r13 = m02 * d0 * d2 + m01 * m12 * d2 - m01 * m02 * m10 + m02 * m02 * m20
    r14 = d0 * d1 * d2 - m01 * m10 * d0 + m02 * m20 * d1 - m12 * m21 * d2
    return (r1, r2, r3, r4, r5, r6, r7, r8, r9, r10, r11, r12, r13, r14)


@njit(cache=True)
def disc_stable(a):
    """Sum-of-products discriminant ``sum(w_i * u_i * v_i)``.

    ``u`` and ``v`` are the same 14 factors evaluated on ``A`` and ``A.T``;
    each factor vanishes as two eigenvalues coalesce, so there is no
    cancellation between large terms near a repeated eigenvalue.
    """
    d0 = a[0, 0] - a[1, 1]
    d1 = a[0, 0] - a[2, 2]
    d2 = a[1, 1] - a[2, 2]
    u = _dx(a, d0, d1, d2)
    v = _dx(transpose(a), d0, d1, d2)
    return (
        9 * u[0] * v[0]
        + 6 * u[1] * v[1]
        + 6 * u[2] * v[2]
        + 6 * u[3] * v[3]
        + 8 * u[4] * v[4]
        + 8 * u[5] * v[5]
        + 8 * u[6] * v[6]
        + 2 * u[7] * v[7]
        + 2 * u[8] * v[8]
        + 2 * u[9] * v[9]
        + 2 * u[10] * v[10]
        + 2 * u[11] * v[11]
        + 2 * u[12] * v[12]
        + 1 * u[13] * v[13]
    )


@njit(cache=True)
def disc_naive(j2, j3):
    """``4 J2^3 - 27 J3^2``; cancels catastrophically near a double root."""
    return 4 * j2 * j2 * j2 - 27 * j3 * j3


@njit(cache=True)
def jacobian_j2(a):
    return transpose(dev(a))


@njit(cache=True)
def jacobian_j3(a):
    return dev(cofactor(dev(a)))


@njit(cache=True)
def jacobian_disc(a):
    j2 = j2_stable(a)
    j3 = j3_stable(a)
    c = 12 * j2 * j2
    e = 54 * j3
    at = transpose(a)
    cd = cofactor(dev(a))
    m = np.empty_like(a)
    for i in range(3):
        for j in range(3):
            m[i, j] = c * at[i, j] - e * cd[i, j]
    return dev(m)


def invariant_set(a: np.ndarray, variant: AlgorithmVariant = AlgorithmVariant.STABLE) -> InvariantSet:
    """All four invariants computed by one algorithm family.

    The naive and tensor discriminants are ``4 J2^3 - 27 J3^2`` fed by the
    J2/J3 of the same family.
    """
    if variant is AlgorithmVariant.STABLE:
        return InvariantSet(i1(a), j2_stable(a), j3_stable(a), disc_stable(a), variant)
    if variant is AlgorithmVariant.NAIVE:
        j2, j3 = j2_naive(a), j3_naive(a)
    else:
        j2, j3 = j2_tensor(a), j3_tensor(a)
    return InvariantSet(i1(a), j2, j3, disc_naive(j2, j3), variant)

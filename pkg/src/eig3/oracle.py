"""Exact and high-precision reference values.

Every binary64 number is a dyadic rational, so the invariants of a floating
point matrix are computed here exactly with :class:`fractions.Fraction`.
Eigenvalues are irrational in general; they are bracketed by sign-change
bisection on the exact characteristic polynomial and returned as
:class:`BigScalar` midpoints.  Square roots (norms, critical points of the
cubic) use integer ``isqrt`` at a fixed binary precision.

None of this is fast.  It is only meant for tests and sweeps.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Context, Decimal
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from .mat3 import EPS, SingularMatrix

DEFAULT_PREC = 256
DEFAULT_ABS_TOL = 1e-40

ExactMatrix = list  # 3x3 nested list of Fraction


class ComplexSpectrum(ArithmeticError):
    """The exact discriminant is negative: two eigenvalues are complex."""


@dataclass(frozen=True, order=True)
class BigScalar:
    """Binary floating value with ``prec`` significant bits, stored exactly."""

    value: Fraction
    prec: int = DEFAULT_PREC

    @classmethod
    def from_fraction(cls, q: Fraction, prec: int = DEFAULT_PREC) -> "BigScalar":
        return cls(round_to_bits(q, prec), prec)

    def __float__(self) -> float:
        return float(self.value)

    def __str__(self) -> str:
        return to_decimal_string(self.value, 45)


def round_to_bits(q: Fraction, prec: int) -> Fraction:
    """Nearest dyadic rational with at most ``prec`` significant bits."""
    if q == 0:
        return Fraction(0)
    num, den = abs(q.numerator), q.denominator
    # 2**(e-1) <= |q| < 2**(e+1)
    e = num.bit_length() - den.bit_length()
    shift = prec - e
    if shift >= 0:
        m = round(Fraction(num << shift, den))
        r = Fraction(m, 1 << shift)
    else:
        m = round(Fraction(num, den << -shift))
        r = Fraction(m << -shift)
    return r if q > 0 else -r


def sqrt_fraction(q: Fraction, prec: int = DEFAULT_PREC) -> Fraction:
    """``floor(sqrt(q) * 2**s) / 2**s`` with ``s`` giving ~``prec`` significant bits."""
    if q < 0:
        raise ValueError("square root of a negative number")
    if q == 0:
        return Fraction(0)
    num, den = q.numerator, q.denominator
    s = prec - (num.bit_length() - den.bit_length()) // 2
    if s >= 0:
        r = math.isqrt((num << (2 * s)) // den)
        return Fraction(r, 1 << s)
    r = math.isqrt(num // (den << (-2 * s)))
    return Fraction(r << -s)


def to_decimal_string(q: Fraction, digits: int = 45) -> str:
    ctx = Context(prec=digits)
    d = ctx.divide(Decimal(q.numerator), Decimal(q.denominator))
    return format(d, "e") if d != 0 else "0"


def abs_error(computed: float, exact) -> float:
    """``|computed - exact|`` evaluated exactly, then rounded to a double."""
    if isinstance(exact, BigScalar):
        exact = exact.value
    if not math.isfinite(computed):
        return math.inf
    return float(abs(Fraction(computed) - exact))


# --- exact 3x3 arithmetic --------------------------------------------------------


def to_exact(a) -> ExactMatrix:
    a = np.asarray(a)
    if a.dtype != object and not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    return [[Fraction(a[i][j]) for j in range(3)] for i in range(3)]


def _tr(m: ExactMatrix) -> Fraction:
    return m[0][0] + m[1][1] + m[2][2]


def _dev(m: ExactMatrix) -> ExactMatrix:
    mean = _tr(m) / 3
    return [[m[i][j] - (mean if i == j else 0) for j in range(3)] for i in range(3)]


def _mul(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    return [[sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3)] for i in range(3)]


def _transpose(m: ExactMatrix) -> ExactMatrix:
    return [[m[j][i] for j in range(3)] for i in range(3)]


def _cof(m: ExactMatrix) -> ExactMatrix:
    c = [[Fraction(0)] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            r = [k for k in range(3) if k != i]
            s = [k for k in range(3) if k != j]
            minor = m[r[0]][s[0]] * m[r[1]][s[1]] - m[r[0]][s[1]] * m[r[1]][s[0]]
            c[i][j] = minor if (i + j) % 2 == 0 else -minor
    return c


def _det(m: ExactMatrix) -> Fraction:
    c = _cof(m)
    return m[0][0] * c[0][0] + m[0][1] * c[0][1] + m[0][2] * c[0][2]


def _frob2(m: ExactMatrix) -> Fraction:
    return sum(x * x for row in m for x in row)


def exact_inverse(m: ExactMatrix) -> ExactMatrix:
    d = _det(m)
    if d == 0:
        raise SingularMatrix("matrix is exactly singular")
    c = _cof(m)
    return [[c[j][i] / d for j in range(3)] for i in range(3)]


def exact_matmul(a, b) -> ExactMatrix:
    return _mul(a, b)


def exact_dev(a) -> ExactMatrix:
    return _dev(a)


def exact_cofactor(a) -> ExactMatrix:
    return _cof(a)


def exact_frobenius2(a) -> Fraction:
    return _frob2(a)


class ExactInvariants(NamedTuple):
    i1: Fraction
    j2: Fraction
    j3: Fraction
    disc: Fraction


def _as_exact(a) -> ExactMatrix:
    if isinstance(a, list) and isinstance(a[0][0], Fraction):
        return a
    return to_exact(a)


def invariants_exact(a) -> ExactInvariants:
    """``(I1, J2, J3, disc)`` of the matrix as exact rationals."""
    m = _as_exact(a)
    s = _dev(m)
    j2 = _tr(_mul(s, s)) / 2
    j3 = _det(s)
    return ExactInvariants(_tr(m), j2, j3, 4 * j2**3 - 27 * j3**2)


def char_poly(a) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Coefficients ``(c0, c1, c2, c3)`` of ``det(lambda I - A)``, lowest first."""
    m = _as_exact(a)
    i1 = _tr(m)
    i2 = (
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
        + m[0][0] * m[2][2] - m[0][2] * m[2][0]
        + m[1][1] * m[2][2] - m[1][2] * m[2][1]
    )
    i3 = _det(m)
    return (-i3, i2, -i1, Fraction(1))


# --- polynomial helpers ------------------------------------------------------------


def _poly_eval(c: Sequence[Fraction], x: Fraction) -> Fraction:
    r = Fraction(0)
    for coef in reversed(c):
        r = r * x + coef
    return r


def _poly_trim(c: list[Fraction]) -> list[Fraction]:
    while len(c) > 1 and c[-1] == 0:
        c = c[:-1]
    return c


def _poly_rem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = list(a)
    while len(a) >= len(b):
        q = a[-1] / b[-1]
        off = len(a) - len(b)
        for i, coef in enumerate(b):
            a[off + i] -= q * coef
        a.pop()
    return _poly_trim(a) if a else [Fraction(0)]


def poly_gcd(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    """Monic gcd of two polynomials (coefficients lowest first)."""
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while any(b):
        a, b = b, _poly_rem(a, b)
    return [coef / a[-1] for coef in a]


class _IntPoly:
    """Integer-coefficient multiple of a rational cubic, for fast sign tests."""

    def __init__(self, c: Sequence[Fraction]):
        lcm = 1
        for coef in c:
            lcm = lcm * coef.denominator // math.gcd(lcm, coef.denominator)
        self.c = [int(coef * lcm) for coef in c]

    def sign(self, x: Fraction) -> int:
        # sign of sum c_i n^i d^(deg-i), Horner in n
        n, d = x.numerator, x.denominator
        r, dk = self.c[-1], 1
        for coef in reversed(self.c[:-1]):
            dk *= d
            r = r * n + coef * dk
        return (r > 0) - (r < 0)


def _bisect(p: _IntPoly, lo: Fraction, hi: Fraction, tol: Fraction) -> Fraction:
    slo = p.sign(lo)
    if slo == 0:
        return lo
    shi = p.sign(hi)
    if shi == 0:
        return hi
    if slo == shi:
        raise ArithmeticError("bracket does not contain a sign change")
    while hi - lo > tol:
        mid = (lo + hi) / 2
        s = p.sign(mid)
        if s == 0:
            return mid
        if s == slo:
            lo = mid
        else:
            hi = mid
    mid = (lo + hi) / 2
    # a rational root p/q has q dividing the leading coefficient; if the
    # bracket is narrow enough it is the best approximation with that bound
    cand = mid.limit_denominator(p.c[-1])
    if lo <= cand <= hi and p.sign(cand) == 0:
        return cand
    return mid


def _cauchy_bound(c: Sequence[Fraction]) -> Fraction:
    b = 1 + max(abs(coef / c[-1]) for coef in c[:-1])
    # round up to a power of two to keep bracket endpoints dyadic
    return Fraction(1 << max(0, math.ceil(math.log2(float(b))) + 1))


def _real_roots_of_cubic(c: Sequence[Fraction], j2: Fraction, disc: Fraction,
                         abs_tol: Fraction) -> list[Fraction]:
    """Ascending real roots of a monic cubic with ``disc >= 0``."""
    i1 = -c[2]
    if disc == 0:
        if j2 == 0:
            return [i1 / 3] * 3
        # double root r: gcd(p, p') = lambda - r
        dp = [c[1], 2 * c[2], 3 * c[3]]
        g = poly_gcd(c, dp)
        r = -g[0]
        return sorted([r, r, i1 - 2 * r])
    p = _IntPoly(c)
    bound = _cauchy_bound(c)
    # critical points i1/3 -+ sqrt(j2/3) separate the three roots
    prec = 128
    while True:
        w = sqrt_fraction(j2 / 3, prec)
        lo_c, hi_c = i1 / 3 - w, i1 / 3 + w
        s_lo, s_hi = p.sign(lo_c), p.sign(hi_c)
        if s_lo > 0 and s_hi < 0:
            break
        if s_lo == 0 or s_hi == 0:
            break
        prec *= 2
        if prec > 1 << 16:
            raise ArithmeticError("failed to separate roots")
    return [
        _bisect(p, -bound, lo_c, abs_tol),
        _bisect(p, lo_c, hi_c, abs_tol),
        _bisect(p, hi_c, bound, abs_tol),
    ]


def eig_reference(a, abs_tol: float = DEFAULT_ABS_TOL,
                  prec: int = DEFAULT_PREC) -> tuple[BigScalar, BigScalar, BigScalar]:
    """Ascending eigenvalues of the exact matrix, each within ``abs_tol``.

    Raises :class:`ComplexSpectrum` if the exact discriminant is negative.
    Repeated roots are exact rationals (recovered from ``gcd(p, p')``).
    """
    if abs_tol < 1e-60:
        raise ValueError("abs_tol must be >= 1e-60")
    m = _as_exact(a)
    inv = invariants_exact(m)
    if inv.disc < 0:
        raise ComplexSpectrum("characteristic polynomial has a complex pair")
    roots = _real_roots_of_cubic(char_poly(m), inv.j2, inv.disc, Fraction(abs_tol))
    return tuple(BigScalar.from_fraction(r, prec) for r in roots)


def eig_reference_complex(a, abs_tol: float = DEFAULT_ABS_TOL,
                          prec: int = DEFAULT_PREC) -> list[tuple[Fraction, Fraction]]:
    """Eigenvalues as ``(real, imag)`` pairs, also covering a complex pair.

    Ordered by real part, then imaginary part.  For a real spectrum the
    imaginary parts are zero and the reals agree with :func:`eig_reference`.
    """
    m = _as_exact(a)
    inv = invariants_exact(m)
    c = char_poly(m)
    if inv.disc >= 0:
        roots = _real_roots_of_cubic(c, inv.j2, inv.disc, Fraction(abs_tol))
        return [(round_to_bits(r, prec), Fraction(0)) for r in roots]
    p = _IntPoly(c)
    bound = _cauchy_bound(c)
    # a cubic with negative discriminant has one real root; tighter tolerance
    # because the pair below is derived from it
    r = _bisect(p, -bound, bound, Fraction(abs_tol) / 1024)
    re = (inv.i1 - r) / 2
    # product of the pair: I3 / r, or from I2 when r is at/near 0
    i2 = c[1]
    prod = i2 - r * (inv.i1 - r)
    im2 = prod - re * re
    im = sqrt_fraction(max(im2, Fraction(0)), prec)
    out = [(round_to_bits(r, prec), Fraction(0)), (round_to_bits(re, prec), -im),
           (round_to_bits(re, prec), im)]
    return sorted(out)


# --- bounds and conditioning -----------------------------------------------------


class BoundSet(NamedTuple):
    bound_j2: float
    bound_j3: float
    bound_disc: float
    bound_eig: float


def _sqrt_to_float(q: Fraction, prec: int = DEFAULT_PREC) -> float:
    return float(sqrt_fraction(q, prec))


def bounds(a, kappa2: float) -> BoundSet:
    """Lowest-order forward error bounds, without the moderate constant.

    ``bound_j2 = |dev A|^2 eps``, ``bound_j3 = |dev cof dev A| |dev A| eps``,
    ``bound_disc = |dev(12 J2^2 A^T - 54 J3 cof dev A)| |dev A| eps`` and
    ``bound_eig = kappa2 |A| eps``, all Frobenius norms computed exactly.
    """
    if kappa2 < 1:
        raise ValueError("kappa2 must be >= 1")
    m = _as_exact(a)
    eps = Fraction(EPS)
    s = _dev(m)
    cs = _cof(s)
    n_dev2 = _frob2(s)
    inv = invariants_exact(m)
    mt = _transpose(m)
    jd = _dev([[12 * inv.j2**2 * mt[i][j] - 54 * inv.j3 * cs[i][j] for j in range(3)]
               for i in range(3)])
    return BoundSet(
        bound_j2=float(n_dev2 * eps),
        bound_j3=_sqrt_to_float(_frob2(_dev(cs)) * n_dev2 * eps * eps),
        bound_disc=_sqrt_to_float(_frob2(jd) * n_dev2 * eps * eps),
        bound_eig=float(Fraction(kappa2) * sqrt_fraction(_frob2(m)) * eps),
    )


def kappa2(u) -> float:
    """Spectral condition number from the extreme eigenvalues of ``U^T U``."""
    m = _as_exact(u)
    g = _mul(_transpose(m), m)
    if _det(g) == 0:
        raise SingularMatrix("transformation is exactly singular")
    lo, _, hi = eig_reference(g, abs_tol=1e-60)
    return _sqrt_to_float(hi.value / lo.value)

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from eig3 import EPS
from eig3.bench import PathKind, TransformKind, generate_case, make_transform
from eig3.mat3 import SingularMatrix, diag
from eig3.oracle import (
    BigScalar,
    ComplexSpectrum,
    abs_error,
    bounds,
    char_poly,
    eig_reference,
    eig_reference_complex,
    exact_inverse,
    exact_matmul,
    invariants_exact,
    kappa2,
    poly_gcd,
    round_to_bits,
    sqrt_fraction,
    to_decimal_string,
    to_exact,
)

small_rationals = st.fractions(min_value=-20, max_value=20, max_denominator=16)


def exact_diag(x, y, z):
    return [[x, Fraction(0), Fraction(0)], [Fraction(0), y, Fraction(0)],
            [Fraction(0), Fraction(0), z]]


def test_reference_invariants():
    assert invariants_exact(diag(-1.0, 1.0, 2.0)) == (2, Fraction(7, 3), Fraction(-20, 27), 36)


@given(st.floats(-1e100, 1e100))
def test_scaled_identity_invariants(alpha):
    inv = invariants_exact(alpha * np.eye(3))
    assert inv == (3 * Fraction(alpha), 0, 0, 0)


def test_identity_plus_tiny_entry():
    e = Fraction(1, 2**53)
    m = exact_diag(1 + e, Fraction(1), Fraction(1))
    assert invariants_exact(m).j2 == e * e / 3


@given(small_rationals, small_rationals, small_rationals, small_rationals)
def test_shift_invariance(x, y, z, beta):
    a = exact_diag(x, y, z)
    a[0][1] = Fraction(3, 7)
    a[2][0] = Fraction(-5, 3)
    shifted = [[a[i][j] + (beta if i == j else 0) for j in range(3)] for i in range(3)]
    base, sh = invariants_exact(a), invariants_exact(shifted)
    assert base[1:] == sh[1:]
    assert sh.i1 == base.i1 + 3 * beta


@given(small_rationals, small_rationals, small_rationals)
def test_similarity_invariance_and_disc_identity(x, y, z):
    d = exact_diag(x, y, z)
    u = to_exact(make_transform(TransformKind.U2, 1e-3))
    a = exact_matmul(exact_matmul(u, d), exact_inverse(u))
    assert invariants_exact(a) == invariants_exact(d)
    assert invariants_exact(d).disc == ((x - y) * (x - z) * (y - z)) ** 2


def test_eig_reference_diagonal_exact():
    lam = eig_reference(diag(3.0, 1.0, 2.0))
    assert [r.value for r in lam] == [1, 2, 3]
    assert all(isinstance(r, BigScalar) and r.prec >= 256 for r in lam)


def test_eig_reference_multiple_roots():
    assert [r.value for r in eig_reference(diag(2.0, 5.0, 2.0))] == [2, 2, 5]
    assert [r.value for r in eig_reference(diag(-1.0, -1.0, -1.0))] == [-1, -1, -1]


def test_eig_reference_performance_matrix():
    a = generate_case(PathKind.D2, TransformKind.U1, 1e-14).matrix
    lam = eig_reference(a)
    inv = invariants_exact(a)
    assert abs(sum(r.value for r in lam) - inv.i1) <= Fraction(3 * 1e-40)
    gap = lam[2].value - lam[1].value
    assert 0.5e-14 < gap < 2e-14
    assert lam[0].value < -0.9


def test_eig_reference_residual():
    a = generate_case(PathKind.D1, TransformKind.U1, 1e-3).matrix
    c = char_poly(a)
    tol = Fraction(1e-40)
    for r in eig_reference(a):
        x = r.value
        p = sum(ck * x**k for k, ck in enumerate(c))
        dp = sum(k * ck * x ** (k - 1) for k, ck in enumerate(c) if k)
        assert abs(p) <= 10 * tol * max(abs(dp), 1)


def test_eig_reference_reproduces_coefficients():
    a = generate_case(PathKind.D1, TransformKind.SYMM, 1e-6).matrix
    l1, l2, l3 = (r.value for r in eig_reference(a))
    c = char_poly(a)
    tol = 10 * Fraction(1e-40)
    assert abs(l1 + l2 + l3 + c[2]) <= tol
    assert abs(l1 * l2 + l1 * l3 + l2 * l3 - c[1]) <= tol * 10
    assert abs(l1 * l2 * l3 + c[0]) <= tol * 10


def test_eig_reference_rejects_complex_and_tiny_tol():
    rot = [[0.0, 1.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 0.0, 1.0]]
    with pytest.raises(ComplexSpectrum):
        eig_reference(rot)
    with pytest.raises(ValueError):
        eig_reference(np.eye(3), abs_tol=1e-70)


def test_eig_reference_complex():
    rot = [[0.0, 1.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 0.0, 2.0]]
    roots = eig_reference_complex(rot)
    re = [float(r) for r, _ in roots]
    im = [float(i) for _, i in roots]
    assert re == pytest.approx([0.0, 0.0, 2.0], abs=1e-30)
    assert im == pytest.approx([-1.0, 1.0, 0.0], abs=1e-30)
    real = eig_reference_complex(diag(1.0, 2.0, 3.0))
    assert real == [(1, 0), (2, 0), (3, 0)]


def test_bounds_examples():
    b = bounds(np.eye(3), 1.0)
    assert b.bound_j2 == b.bound_j3 == b.bound_disc == 0.0
    assert b.bound_eig == math.sqrt(3) * EPS
    assert bounds(diag(-1.0, 1.0, 2.0), 1.0).bound_j2 == float(Fraction(42, 9) * Fraction(EPS))
    m = generate_case(PathKind.D2, TransformKind.U1, 1e-6).matrix
    assert all(0 < x < math.inf for x in bounds(m, 2.0))
    with pytest.raises(ValueError):
        bounds(np.eye(3), 0.5)


def test_bounds_homogeneity():
    m = generate_case(PathKind.D2, TransformKind.U1, 1e-3).matrix
    b1, b2 = bounds(m, 2.0), bounds(2 * m, 2.0)
    assert b2.bound_j2 == 4 * b1.bound_j2
    # |dev cof dev A| |dev A| is cubic in A
    assert b2.bound_j3 == 8 * b1.bound_j3
    assert b2.bound_disc == 64 * b1.bound_disc
    assert b2.bound_eig == 2 * b1.bound_eig


def test_kappa2_of_transforms():
    assert kappa2(make_transform(TransformKind.SYMM)) == pytest.approx(1.0, abs=1e-15)
    assert kappa2(make_transform(TransformKind.U1)) == pytest.approx(2.0, abs=1e-15)
    k = kappa2(make_transform(TransformKind.U2, 1e-3))
    assert 8.5e3 < k < 9.5e3
    with pytest.raises(SingularMatrix):
        kappa2([[1.0, 2.0, 3.0], [2.0, 4.0, 6.0], [0.0, 0.0, 1.0]])


def test_sqrt_and_rounding():
    assert sqrt_fraction(Fraction(4)) == 2
    r = sqrt_fraction(Fraction(2), 256)
    assert abs(r * r - 2) < Fraction(1, 2**250)
    assert round_to_bits(Fraction(1, 3), 8) == Fraction(171, 512)
    assert to_decimal_string(Fraction(1, 3), 45).count("3") >= 45


def test_poly_gcd_double_root():
    # (x - 1)^2 (x - 3)
    c = [Fraction(-3), Fraction(7), Fraction(-5), Fraction(1)]
    dc = [c[1], 2 * c[2], 3 * c[3]]
    assert poly_gcd(c, dc) == [-1, 1]


def test_abs_error():
    assert abs_error(0.5, Fraction(1, 3)) == float(Fraction(1, 6))
    assert abs_error(math.nan, Fraction(0)) == math.inf

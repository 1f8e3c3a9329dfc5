import numpy as np
import pytest
from hypothesis import given, strategies as st

from gpgcd.polynomial import (UniPoly, add, derivative, evaluate, mul, norm2_sq,
                              perturbation, relative_error, sub)

from conftest import conv_oracle

# exact zeros or magnitudes safely away from underflow
coef = st.floats(-10, 10, allow_nan=False).filter(lambda c: c == 0 or abs(c) > 1e-3)
polys = st.lists(coef, min_size=1, max_size=8).map(UniPoly)


def test_zero_polynomial_canonical_form():
    z = UniPoly([0.0, 0.0, 0.0])
    assert z.is_zero() and z.degree == 0 and z.coeffs.tolist() == [0.0]


def test_leading_zeros_trimmed_exactly():
    p = UniPoly([0.0, 1e-300, 2.0])
    assert p.degree == 1 and p.lc == 1e-300


def test_real_field_rejects_imaginary_parts():
    with pytest.raises(ValueError):
        UniPoly([1 + 1j, 2], 'real')
    assert UniPoly([1 + 0j, 2], 'real').field == 'real'


def test_field_mismatch_rejected():
    with pytest.raises(ValueError):
        add(UniPoly([1.0]), UniPoly([1j]))


def test_norm2_sq_examples():
    assert norm2_sq(UniPoly([0.0])) == 0
    assert norm2_sq(UniPoly([1, -6, 5])) == 62
    assert norm2_sq(UniPoly([1 + 1j, 2])) == 6


def test_mul_examples():
    assert mul(UniPoly([1, -1]), UniPoly([1, -5])) == UniPoly([1, -6, 5])
    p = UniPoly([3, 0, -2])
    assert mul(p, UniPoly([1])) == p
    assert mul(UniPoly([1, 1]), UniPoly([1, -1])) == UniPoly([1, 0, -1])


def test_ring_operation_examples():
    assert derivative(UniPoly([1, -6, 5])) == UniPoly([2, -6])
    assert derivative(UniPoly([7.0])).is_zero()
    assert evaluate(UniPoly([1, -6, 5]), 5) == 0
    s = add(UniPoly([1, 0, 1]), UniPoly([-1, 0, 0]))
    assert s.degree == 0 and s.coeffs.tolist() == [1.0]
    assert sub(UniPoly([1, 2]), UniPoly([1, 2])).is_zero()


def test_perturbation_examples():
    f, g = UniPoly([1, -6, 5]), UniPoly([1, -6.3, 5.72])
    assert perturbation(f, f, g, g) == 0
    assert perturbation(f + 0.1, f, g, g) == pytest.approx(0.1, rel=1e-12)


def test_perturbation_aligns_degrees():
    # a lower-degree Ft is compared with zero padding
    assert perturbation(UniPoly([2.0]), UniPoly([1.0, 2.0]), UniPoly([1.0]), UniPoly([1.0])) == 1.0


def test_relative_error_examples():
    u = UniPoly([1.0, 0.0, 0.0])
    assert relative_error(u, u) == 0
    assert relative_error(u * 2.0, u) == 0
    assert relative_error(u + 1e-3, u, normalize=False) == pytest.approx(1e-3, rel=1e-12)
    with pytest.raises(ValueError):
        relative_error(u, UniPoly([0.0]))


def test_from_roots_and_monic():
    p = UniPoly.from_roots([1, 5])
    assert p == UniPoly([1, -6, 5])
    assert (p * 3.0).monic() == p


@given(polys, polys)
def test_mul_matches_oracle_and_commutes(p, q):
    np.testing.assert_allclose(mul(p, q).padded(p.degree + q.degree + 1),
                               conv_oracle(p.coeffs, q.coeffs), atol=1e-9)
    np.testing.assert_allclose(mul(p, q).coeffs, mul(q, p).coeffs, rtol=1e-14, atol=1e-12)


@given(polys, polys)
def test_degree_of_product(p, q):
    if not (p.is_zero() or q.is_zero()):
        assert mul(p, q).degree == p.degree + q.degree


@given(polys, polys, polys)
def test_distributive(p, q, r):
    lhs = mul(p, add(q, r))
    rhs = add(mul(p, q), mul(p, r))
    n = max(len(lhs), len(rhs))
    np.testing.assert_allclose(lhs.padded(n), rhs.padded(n), atol=1e-9)


@given(polys)
def test_norm_invariant_under_complex_promotion(p):
    assert norm2_sq(p) == pytest.approx(norm2_sq(p.to_complex()), rel=1e-15, abs=0)


@given(polys, polys, st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False))
def test_evaluation_is_multiplicative(p, q, z):
    lhs = evaluate(mul(p, q), z)
    rhs = evaluate(p, z) * evaluate(q, z)
    scale = max(1.0, np.sum(np.abs(conv_oracle(np.abs(p.coeffs), np.abs(q.coeffs)))) * max(1, abs(z)) ** len(mul(p, q)))
    assert abs(lhs - rhs) <= 1e-12 * scale

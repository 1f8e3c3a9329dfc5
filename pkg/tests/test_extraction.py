import numpy as np
import pytest

from gpgcd import encodings as enc
from gpgcd.extraction import FROM_A_SIDE, extract, gpgcd, least_squares_division, roots
from gpgcd.optimizer import SolverConfig
from gpgcd.polynomial import UniPoly, mul, norm2_sq, sub
from gpgcd.testgen import RandomGcdSpec, random_suite

from conftest import conv_oracle


def test_division_examples():
    h = least_squares_division(UniPoly([1, -5]), UniPoly([1, -6, 5]), 1)
    np.testing.assert_allclose(h.coeffs, [1, -1], atol=1e-14)
    t = UniPoly([2, 3, 4])
    np.testing.assert_allclose(least_squares_division(t, t, 0).coeffs, [1.0], atol=1e-14)
    with pytest.raises(ValueError):
        least_squares_division(UniPoly([0.0]), t, 1)


def test_division_perturbed_against_normal_equations():
    target = UniPoly([1, -6, 5 + 1e-8])
    cof = np.array([1.0, -5.0])
    h = least_squares_division(UniPoly(cof), target, 1)
    np.testing.assert_allclose(h.coeffs, [1, -1], atol=1e-7)
    C = np.column_stack([conv_oracle(cof, e) for e in np.eye(2)])
    ref = np.linalg.solve(C.T @ C, C.T @ target.coeffs)
    np.testing.assert_allclose(h.coeffs, ref, atol=1e-12)


def test_division_complex():
    H = UniPoly([1, 2 - 1j], 'complex')
    B = UniPoly([1j, 3, -1], 'complex')
    h = least_squares_division(B, H * B, 1)
    np.testing.assert_allclose(h.coeffs, H.coeffs, atol=1e-13)


def test_division_pads_low_degree_cofactor():
    # cofactor stored with fewer coefficients than deg(target) - d + 1
    H = UniPoly([1.0, 2.0])
    h = least_squares_division(UniPoly([3.0]), H * 3.0 * UniPoly([1.0, 0.0]), 2)
    np.testing.assert_allclose(h.coeffs, [1, 2, 0], atol=1e-14)


def test_extract_exact_roundtrip():
    rng = np.random.default_rng(0)
    for _ in range(20):
        H = UniPoly(rng.uniform(-2, 2, 4))
        A, B = UniPoly(rng.uniform(-2, 2, 3)), UniPoly(rng.uniform(-2, 2, 4))
        out = extract(H * B, H * A, A, B, 3)
        np.testing.assert_allclose(out['h'].coeffs, H.coeffs, atol=1e-12)
        assert max(out['residues']) <= 1e-20 * max(1.0, norm2_sq(H * B))


def test_extract_tie_prefers_a_side():
    H, A = UniPoly([1.0, 2.0]), UniPoly([1.0, -3.0])
    out = extract(H * A, H * A, A, A, 1)
    assert out['residues'][0] == out['residues'][1]
    assert out['chosen_candidate'] == FROM_A_SIDE


def test_extract_rejects_zero_cofactors():
    with pytest.raises(ValueError):
        extract(UniPoly([1, 1]), UniPoly([1, 1]), UniPoly([0.0]), UniPoly([0.0]), 1)


def test_quadratic_pair_real():
    r = gpgcd(UniPoly([1, -6, 5]), UniPoly([1, -6.3, 5.72]), 1)
    assert r.perturbation == pytest.approx(0.0215941, rel=1e-4)
    assert r.common_zeros()[0].real == pytest.approx(5.09890419203, abs=1e-5)
    assert r.iterations <= 10 and r.converged and r.kkt[1] <= 1e-10


def test_quadratic_pair_monic():
    r = gpgcd(UniPoly([1, -6, 5]), UniPoly([1, -6.3, 5.72]), 1, kind=enc.REAL_MONIC)
    assert r.perturbation == pytest.approx(0.110164, rel=1e-4)
    assert r.common_zeros()[0].real == pytest.approx(5.0969464650, abs=1e-5)
    assert r.f_tilde.lc == pytest.approx(1.0, abs=1e-14)
    assert r.g_tilde.lc == pytest.approx(1.0, abs=1e-14)


def test_small_leading_coefficient_gcd():
    C = UniPoly([0.001, 1, 1])
    F, G = mul(UniPoly([1, 0, 1, 1, 1]), C), mul(UniPoly([1, 1, 1, 1]), C)
    r = gpgcd(F, G, 2)
    assert r.perturbation <= 1e-10
    np.testing.assert_allclose(r.h.coeffs, [0.001, 0.9999999936, 0.9999999936], atol=1e-6)


@pytest.mark.parametrize('kind', [enc.COMPLEX, enc.COMPLEX_MONIC, enc.REAL_MONIC])
def test_other_kinds_on_real_example(kind):
    r = gpgcd(UniPoly([1, -6, 5]), UniPoly([1, -6.3, 5.72]), 1, kind=kind)
    assert r.converged
    expect = 0.110164 if kind.monic else 0.0215941
    assert r.perturbation == pytest.approx(expect, rel=1e-4)


def test_complex_input_inferred():
    H = UniPoly([1, 1j], 'complex')
    F = H * UniPoly([1, 2 + 1j, -1], 'complex')
    G = H * UniPoly([1, -3j], 'complex')
    r = gpgcd(F, G, 1)
    assert r.converged and r.perturbation <= 1e-10
    assert r.h.field == 'complex'
    np.testing.assert_allclose(r.h.monic().coeffs, H.coeffs, atol=1e-10)


def test_swapped_degrees():
    F, G = UniPoly.from_roots([1, 2]), UniPoly.from_roots([1, 3, 4])
    r = gpgcd(F, G, 1)
    assert r.f_tilde.degree == 2 and r.g_tilde.degree == 3
    assert r.perturbation <= 1e-10
    assert sub(r.f_tilde, r.h * r.b).is_zero()
    assert sub(r.g_tilde, r.h * r.a).is_zero()


def test_preconditions():
    F, G = UniPoly([1, -6, 5]), UniPoly([1, -6.3, 5.72])
    for d in (0, 3):
        with pytest.raises(ValueError):
            gpgcd(F, G, d)
    with pytest.raises(ValueError):
        gpgcd(F * 2.0, G, 1, kind=enc.REAL_MONIC)
    with pytest.raises(ValueError):
        gpgcd(F.to_complex(), G, 1, kind=enc.REAL)


def _noisy_suite(count, seed=5, field='real'):
    return random_suite(RandomGcdSpec(8, 7, 3, seed=seed, field=field), count)


def test_post_extraction_exactness_and_residue_choice():
    for F, G, _ in _noisy_suite(10) + _noisy_suite(5, field='complex'):
        r = gpgcd(F, G, 3)
        assert np.all(sub(r.f_tilde, r.h * r.b).coeffs == 0)
        assert np.all(sub(r.g_tilde, r.h * r.a).coeffs == 0)
        i = 0 if r.chosen_candidate == FROM_A_SIDE else 1
        assert r.residues[i] <= r.residues[1 - i]
        assert r.h.degree == 3 and r.a.degree <= 4 and r.b.degree <= 5


def test_sign_flip_of_initial_vector():
    for F, G, _ in _noisy_suite(5, seed=6):
        x0, L, _ = enc.initialize(F, G, 3, enc.REAL)
        flipped = x0.copy()
        flipped[L.fg_size:] *= -1
        r1, r2 = gpgcd(F, G, 3, x0=x0), gpgcd(F, G, 3, x0=flipped)
        assert r2.perturbation == pytest.approx(r1.perturbation, rel=1e-8)


def test_exact_gcd_fixed_point_50_seeds():
    cases = random_suite(RandomGcdSpec(8, 7, 3, noise_f=0, noise_g=0, seed=7), 50)
    for F, G, H in cases:
        r = gpgcd(F, G, 3)
        scale = np.sqrt(norm2_sq(F)) + np.sqrt(norm2_sq(G))
        assert r.converged and r.iterations <= 3
        assert r.perturbation <= 1e-10 * scale


def test_non_converged_run_still_reports():
    F, G = UniPoly([1, -6, 5]), UniPoly([1, -6.3, 5.72])
    r = gpgcd(F, G, 1, cfg=SolverConfig(max_iterations=1))
    assert not r.converged and r.termination == 'max_iter'
    assert np.isfinite(r.perturbation) and r.h.degree == 1


def test_roots_of_companion():
    np.testing.assert_allclose(np.sort(roots(UniPoly.from_roots([3, -1, 2])).real), [-1, 2, 3])
    assert roots(UniPoly([2.0])).size == 0


def test_gradient_projection_method_end_to_end():
    r = gpgcd(UniPoly([1, -6, 5]), UniPoly([1, -6.3, 5.72]), 1,
              cfg=SolverConfig(method='gradient_projection'))
    assert r.converged and r.perturbation == pytest.approx(0.0215941, rel=1e-4)

"""Symmetric-function calculus: sigma_k, H_k, partials, gaps, K1, calibration."""

import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from starpinch.errors import HypothesisError
from starpinch import symfun
from starpinch.symfun import (Calibration, K1, K1_prime, calibrate,
                              curvature_profile, elementary_symmetric,
                              maclaurin_gaps, mean_curvatures, newton_gap,
                              normalized_mean_curvatures, partial_H,
                              partial_H_extremes, read_calibration,
                              sharpened_newton_gap, umbilicity_defect_sq,
                              write_calibration)

SQRT_11_3 = 1.9148542155126762
CBRT_6 = 1.8171205928321397


def brute_sigma(kappa):
    n = len(kappa)
    out = [1.0]
    for k in range(1, n + 1):
        out.append(float(sum(math.prod(c) for c in itertools.combinations(kappa, k))))
    return out


class TestElementarySymmetric:
    def test_hand_expansion(self):
        assert np.allclose(elementary_symmetric([1.0, 2.0, 3.0]), [1, 6, 11, 6])

    def test_umbilic_binomial(self):
        for n in (2, 4, 6):
            c = 0.7
            sig = elementary_symmetric([c] * n)
            expect = [math.comb(n, k) * c**k for k in range(n + 1)]
            assert np.allclose(sig, expect, rtol=1e-14)

    def test_zeros(self):
        sig = elementary_symmetric([0.0] * 5)
        assert np.allclose(sig, [1, 0, 0, 0, 0, 0])

    def test_matches_subset_enumeration_exactly(self):
        rng = np.random.Generator(np.random.Philox(3))
        for n in range(2, 9):
            for _ in range(20):
                kappa = rng.integers(-4, 5, size=n).astype(float)
                assert elementary_symmetric(kappa).tolist() == brute_sigma(kappa)


class TestMeanCurvatures:
    def test_binomial_division(self):
        H = normalized_mean_curvatures([1.0, 6.0, 11.0, 6.0], 3)
        assert np.allclose(H, [1.0, 2.0, 11.0 / 3.0, 6.0], rtol=1e-15)

    def test_umbilic_powers(self):
        H = mean_curvatures([0.5] * 4)
        assert np.allclose(H, [0.5**k for k in range(5)], rtol=1e-14)

    def test_two_dims(self):
        H = mean_curvatures([0.0, 2.0])
        assert H[1] == 1.0 and H[2] == 0.0

    @given(st.lists(st.floats(-3, 3), min_size=2, max_size=6))
    @settings(max_examples=300, deadline=None)
    def test_tau_identity(self, kappa):
        # sum (kappa_i - H_1)^2 = n(n-1)(H_1^2 - H_2) for every real vector
        kappa = np.asarray(kappa)
        n = len(kappa)
        H = mean_curvatures(kappa)
        lhs = float(umbilicity_defect_sq(kappa))
        rhs = float(n * (n - 1) * (H[1] ** 2 - H[2]))
        assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-12)


class TestPartialH:
    def test_l2_is_dimensional_constant(self):
        rng = np.random.Generator(np.random.Philox(4))
        for n in (2, 3, 5):
            for _ in range(5):
                kappa = rng.normal(size=n)
                p = partial_H(2, n, 1, kappa)
                assert p.value == pytest.approx(1.0 / math.comb(n, 2), rel=1e-15)

    def test_single_admissible_index(self):
        p = partial_H(3, 3, 1, [1.0, 2.0, 3.0])
        assert p.value == pytest.approx(2.0, rel=1e-15)

    def test_two_index_sum(self):
        p = partial_H(3, 4, 1, [1.0, 2.0, 3.0, 4.0])
        assert p.value == pytest.approx(5.0 / 4.0, rel=1e-15)

    def test_positive_for_positive_kappa(self):
        rng = np.random.Generator(np.random.Philox(5))
        kappa = np.sort(rng.uniform(0.1, 3.0, size=5))
        for l in range(2, 6):
            assert partial_H(l, 5, 1, kappa).value > 0.0

    def test_rejects_equal_indices(self):
        with pytest.raises(ValueError):
            partial_H(2, 1, 1, [1.0, 2.0])

    def test_extremes_batch_matches_scalar(self):
        rng = np.random.Generator(np.random.Philox(6))
        kappa = np.sort(rng.uniform(0.1, 2.0, size=(40, 4)), axis=1)
        batch = partial_H_extremes(3, kappa)
        for i in range(40):
            assert batch[i] == pytest.approx(partial_H(3, 4, 1, kappa[i]).value, rel=1e-14)


class TestGaps:
    def test_newton_examples(self):
        assert newton_gap(curvature_profile([1.0, 2.0, 3.0]), 1) == pytest.approx(1.0 / 3.0, rel=1e-14)
        assert newton_gap(curvature_profile([0.0, 2.0]), 1) == pytest.approx(1.0, rel=1e-15)
        assert newton_gap(curvature_profile([0.7] * 4), 2) == pytest.approx(0.0, abs=1e-15)

    def test_newton_nonnegative_mixed_signs(self):
        rng = np.random.Generator(np.random.Philox(7))
        for n in range(2, 7):
            kappa = rng.uniform(-2.0, 2.0, size=(100_000, n))
            H = mean_curvatures(kappa)
            for k in range(1, n):
                gap = H[:, k] ** 2 - H[:, k + 1] * H[:, k - 1]
                assert float(np.min(gap)) >= -1e-12

    def test_maclaurin_examples(self):
        prof = curvature_profile([1.0, 2.0, 3.0])
        gaps = maclaurin_gaps(prof, 2)
        assert gaps[0] == pytest.approx(2.0 - SQRT_11_3, abs=1e-13)
        assert gaps[1] == pytest.approx(SQRT_11_3 - CBRT_6, abs=1e-13)
        assert np.allclose(maclaurin_gaps(curvature_profile([0.9] * 4), 3), 0.0, atol=1e-14)

    def test_maclaurin_second_order_in_perturbation(self):
        for t in (1e-2, 5e-3):
            g_t = maclaurin_gaps(curvature_profile([1.0, 1.0, 1.0 + t]), 2)
            g_half = maclaurin_gaps(curvature_profile([1.0, 1.0, 1.0 + t / 2]), 2)
            ratio = g_t / g_half
            assert np.all(ratio > 3.5) and np.all(ratio < 4.5)

    def test_maclaurin_requires_positive_hypothesis(self):
        with pytest.raises(HypothesisError):
            maclaurin_gaps(curvature_profile([-1.0, -2.0, 0.5]), 2)

    def test_sharpened_umbilic_is_zero(self):
        prof = curvature_profile([1.3] * 3)
        assert sharpened_newton_gap(prof, 1, 0.37) == pytest.approx(0.0, abs=1e-14)

    def test_sharpened_degenerate_constant_equals_newton(self):
        prof = curvature_profile([0.2, 1.1, 2.5])
        assert sharpened_newton_gap(prof, 2, 0.0) == pytest.approx(newton_gap(prof, 2), rel=1e-15)

    def test_sharpened_two_dims_exact(self):
        # n=2: gap = newton - c * tau^2 * 1 = 1 - 2c for kappa = (0, 2)
        prof = curvature_profile([0.0, 2.0])
        assert sharpened_newton_gap(prof, 1, 0.25) == pytest.approx(0.5, rel=1e-14)


class TestK1:
    def test_r1_is_dimensional(self):
        assert K1(2, 1, 1.0, 1.0, 1.0, 0.45) == 2.0
        assert K1(5, 1, 1.0, 1.0, 1.0, 0.45) == 20.0

    def test_unit_inputs(self):
        # all inputs one, unit b-constants: the product is (1/2)*2 = 1
        assert K1(3, 2, 1.0, 1.0, 1.0, 1.0, (1.0, 1.0)) == pytest.approx(1.0, rel=1e-15)

    def test_monotone_in_h(self):
        # weaker pinching information (smaller h) gives a larger multiplier
        vals = [K1(3, 2, 0.8, h, 1.5, 0.15, None) for h in (0.25, 0.5, 1.0, 2.0)]
        assert all(a > b for a, b in zip(vals, vals[1:]))

    def test_r1_exactness(self):
        # tau^2 = K1 (H H_1 - H_2) exactly at r = 1
        rng = np.random.Generator(np.random.Philox(8))
        for n in (2, 3, 5):
            kappa = rng.uniform(0.1, 2.0, size=n)
            prof = curvature_profile(kappa)
            k1 = K1(n, 1, 1.0, 1.0, 1.0, 0.45)
            assert prof.tau_sq == pytest.approx(
                k1 * float(prof.H[1] * prof.H[1] - prof.H[2]), rel=1e-11, abs=1e-13
            )

    def test_prime_coincides_when_factors_match(self):
        n, r = 3, 2
        args = dict(minH_partial=0.7, B_sup=1.4, c_n=0.15, b_consts=(1.0, 1.0))
        h = 0.9
        k1 = K1(n, r, h=h, **args)
        k1p = K1_prime(n, r, minH_rplus1=(h / 2.0) ** ((r + 1) / r), **args)
        assert k1p == pytest.approx(k1, rel=1e-14)

    def test_prime_r1_uses_square_root(self):
        # the replacement factor is minH_2^(1/2) at r = 1
        v = K1_prime(2, 1, 1.0, 0.49, 1.0, 0.5)
        assert v == pytest.approx(1.0 / (0.5 * 0.7), rel=1e-13)

    def test_errors(self):
        with pytest.raises(ValueError):
            K1(3, 2, 1.0, -1.0, 1.0, 0.15)
        with pytest.raises(HypothesisError):
            K1(3, 2, -0.1, 1.0, 1.0, 0.15)
        with pytest.raises(HypothesisError):
            K1_prime(3, 2, 1.0, 0.0, 1.0, 0.15)


class TestCalibration:
    def test_deterministic(self):
        a = calibrate(3, 2, samples=20_000, seed=9)
        b = calibrate(3, 2, samples=20_000, seed=9)
        assert a == b

    def test_n2_matches_exact_identity(self):
        # the ratio is identically 1/2 for n=2, so the raw infimum is 0.5
        cal = calibrate(2, 1, samples=30_000, seed=10)
        assert cal.raw_c_inf == pytest.approx(0.5, abs=1e-6)
        assert cal.c_n == pytest.approx(0.45, abs=1e-6)

    def test_margin_zero_records_raw_infimum(self):
        cal = calibrate(2, 1, samples=20_000, seed=10, margin=0.0)
        assert cal.c_n == cal.raw_c_inf

    def test_held_out_sharpened_gap(self):
        # calibrated c_n must keep the gap nonnegative on fresh samples
        for n in (2, 3, 4):
            cal = calibrate(n, n - 1, samples=40_000, seed=11)
            kappa = symfun.sample_positive_curvatures(n, 10_000, seed=999)
            H = mean_curvatures(kappa)
            tau_sq = umbilicity_defect_sq(kappa)
            for k in range(1, n):
                hp = partial_H_extremes(k + 1, kappa)
                gap = H[:, k] ** 2 - H[:, k + 1] * H[:, k - 1] - cal.c_n * tau_sq * hp**2
                assert float(np.min(gap)) >= -1e-10

    def test_lemma_bound_on_held_out_samples(self):
        # tau^2 <= K1 (H H_r - H_{r+1}) with set-level constants
        for n, r in ((3, 2), (4, 3)):
            cal = calibrate(n, r, samples=40_000, seed=12)
            kappa = symfun.sample_positive_curvatures(n, 10_000, seed=777)
            H = mean_curvatures(kappa)
            tau_sq = umbilicity_defect_sq(kappa)
            B_sup = float(np.max(np.abs(kappa)))
            h = 2.0 * float(np.min(H[:, r]))
            minH_partial = float(np.min(partial_H_extremes(r + 1, kappa)))
            k1 = K1(n, r, minH_partial, h, B_sup, cal.c_n, cal.b_consts)
            gap = k1 * (H[:, 1] * H[:, r] - H[:, r + 1]) - tau_sq
            assert float(np.min(gap)) >= -1e-10

    def test_roundtrip_file(self, tmp_path):
        cal = calibrate(3, 2, samples=20_000, seed=13)
        path = tmp_path / "cal.txt"
        write_calibration(cal, path)
        back = read_calibration(path)
        assert back == cal
        assert isinstance(back, Calibration)

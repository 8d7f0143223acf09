import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad

from kshurst.fracgen import (
    FbmPath,
    FgnPath,
    circulant_eigenvalues,
    ess,
    fbm_from_fgn,
    gen_fgn,
    increments,
    sample_acf,
    spectral_density,
    spectral_tail_bound,
    theoretical_acf,
)

from oracles import direct_acov, fgn_ess_closed


class TestTheoreticalAcf:
    def test_lag1_h075(self):
        # (2**1.5 - 2) / 2
        assert theoretical_acf(0.75, 1, 1.0, 1) == pytest.approx(0.41421356237309515, rel=1e-14)

    def test_brownian_uncorrelated(self):
        assert theoretical_acf(0.5, 1, 1.0, 3) == 0.0

    @pytest.mark.parametrize("h", [0.1, 0.3, 0.5, 0.8, 1.0])
    @pytest.mark.parametrize("a", [1, 5, 20])
    def test_variance(self, h, a):
        assert theoretical_acf(h, a, 1.7, 0) == pytest.approx(1.7**2 * a ** (2 * h))

    def test_array_lags(self):
        out = theoretical_acf(0.3, 1, 1.0, np.arange(4))
        assert out.shape == (4,)
        assert out[1] < 0  # antipersistent

    def test_rejects_bad_hurst(self):
        with pytest.raises(ValueError):
            theoretical_acf(0.0, 1, 1.0, 1)
        with pytest.raises(ValueError):
            theoretical_acf(1.2, 1, 1.0, 1)


class TestGenerator:
    def test_deterministic(self):
        a = gen_fgn(1000, 0.7, 1.0, 42)
        b = gen_fgn(1000, 0.7, 1.0, 42)
        assert np.array_equal(a.samples, b.samples)
        assert not np.array_equal(a.samples, gen_fgn(1000, 0.7, 1.0, 43).samples)

    def test_path_is_immutable(self):
        p = gen_fgn(16, 0.6, 1.0, 0)
        with pytest.raises(ValueError):
            p.samples[0] = 1.0

    def test_embedding_reproduces_covariance_exactly(self):
        # inverse DFT of the eigenvalues is the circulant first row
        n, h = 64, 0.83
        lam = circulant_eigenvalues(n, h)
        row = np.fft.irfft(lam, 2 * n)
        assert np.allclose(row[: n + 1], theoretical_acf(h, 1, 1.0, np.arange(n + 1)), atol=1e-12)

    @pytest.mark.parametrize("n", [2, 3, 100, 4096, 2**17])
    @pytest.mark.parametrize("h", [0.05, 0.25, 0.5, 0.75, 0.95])
    def test_eigenvalues_nonnegative(self, n, h):
        assert circulant_eigenvalues(n, h).min() >= 0.0

    def test_negative_eigenvalue_is_an_error(self, monkeypatch):
        import kshurst.fracgen as fg

        def bad_acf(h, a, c, lag):
            lag = np.asarray(lag, dtype=float)
            return np.where(lag == 0, 1.0, np.where(lag == 1, 0.9, 0.0)) * 1.0

        fg._eigenvalues.cache_clear()
        monkeypatch.setattr(fg, "theoretical_acf", bad_acf)
        with pytest.raises(ValueError, match=r"H=0\.61.*n=8"):
            fg.gen_fgn(8, 0.61, 1.0, 0)
        fg._eigenvalues.cache_clear()

    def test_brownian_is_white(self):
        z = gen_fgn(4096, 0.5, 1.0, 3).samples
        rho = sample_acf(z, 1)[1]
        assert abs(rho) < 4 / np.sqrt(4096)

    def test_ensemble_covariance(self):
        # 4000 short paths: empirical covariance vs the exact ACF
        z = np.stack([gen_fgn(32, 0.75, 2.0, s).samples for s in range(4000)])
        cov = z.T @ z / z.shape[0]
        expected = theoretical_acf(0.75, 1, 2.0, np.arange(4))
        for lag in range(4):
            vals = np.diagonal(cov, offset=lag)
            assert vals.mean() == pytest.approx(expected[lag], abs=0.15)

    def test_lag1_h075_large_sample(self):
        z = gen_fgn(2**20, 0.75, 1.0, 11).samples
        assert direct_acov(z, 1) == pytest.approx(0.41421356237309515, abs=0.02)

    def test_scale(self):
        a = gen_fgn(256, 0.4, 1.0, 5).samples
        b = gen_fgn(256, 0.4, 3.0, 5).samples
        assert np.allclose(b, 3.0 * a)

    def test_small_n_rejected(self):
        with pytest.raises(ValueError):
            gen_fgn(1, 0.5)


class TestFbm:
    def test_cumsum(self):
        f = fbm_from_fgn(FgnPath(np.array([1.0, -1.0, 2.0]), 0.5))
        assert f.samples.tolist() == [0.0, 1.0, 0.0, 2.0]

    def test_zero(self):
        f = fbm_from_fgn(FgnPath(np.zeros(5), 0.5))
        assert not f.samples.any()

    def test_increments_roundtrip_exact_on_dyadic_data(self):
        z = np.array([0.5, -1.25, 3.0, 0.125, -2.0])
        f = fbm_from_fgn(FgnPath(z, 0.3))
        assert np.array_equal(increments(f, 1).values, z)

    def test_increments_roundtrip_float(self):
        z = gen_fgn(4096, 0.7, 1.0, 9)
        back = increments(fbm_from_fgn(z), 1).values
        scale = np.abs(fbm_from_fgn(z).samples).max()
        assert np.allclose(back, z.samples, rtol=0, atol=4 * np.finfo(float).eps * scale)

    def test_increments_example(self):
        f = FbmPath(np.array([0.0, 1.0, 0.0, 2.0]), 0.5)
        inc = increments(f, 2)
        assert inc.values.tolist() == [0.0, 1.0]
        assert inc.timescale_a == 2

    @pytest.mark.parametrize("a", [1, 5, 100])
    def test_increments_length(self, a):
        f = fbm_from_fgn(gen_fgn(500, 0.5, 1.0, 0))
        assert len(increments(f, a)) == 500 - a + 1

    def test_increments_too_wide(self):
        f = FbmPath(np.array([0.0, 1.0, 0.0, 2.0]), 0.5)
        with pytest.raises(ValueError):
            increments(f, 4)

    def test_fbm_must_start_at_zero(self):
        with pytest.raises(ValueError):
            FbmPath(np.array([1.0, 2.0]), 0.5)


class TestSpectralDensity:
    def test_even(self):
        w = np.linspace(0.01, np.pi, 7)
        assert np.allclose(spectral_density(0.7, 1.0, w), spectral_density(0.7, 1.0, -w))

    def test_zero_frequency(self):
        assert spectral_density(0.3, 1.0, 0.0) == 0.0
        assert spectral_density(0.8, 1.0, 0.0) == 0.0

    def test_brownian_flat(self):
        # sum_j (w + 2 pi j)^-2 = 1 / (4 sin^2(w/2)): S = 1 / (2 pi) exactly
        w = np.linspace(0.1, 3.0, 5)
        s = spectral_density(0.5, 1.0, w, trunc_j=1000, tail_correction=True)
        assert np.allclose(s, 1 / (2 * np.pi), rtol=1e-7)

    @pytest.mark.parametrize("h", [0.2, 0.35, 0.5, 0.65, 0.8])
    @pytest.mark.parametrize("lag", range(6))
    def test_fourier_pair(self, h, lag):
        def integrand(w):
            return 2 * np.cos(lag * w) * spectral_density(h, 1.0, w, tail_correction=True)

        value, _ = quad(integrand, 0.0, np.pi, limit=400)
        assert value == pytest.approx(theoretical_acf(h, 1, 1.0, lag), abs=1e-4)

    @pytest.mark.parametrize("h", [0.2, 0.5, 0.8])
    def test_truncation_within_bound(self, h):
        w = np.linspace(-np.pi, np.pi, 41)
        ref = spectral_density(h, 1.0, w, trunc_j=200_000, tail_correction=True)
        for j in (10, 100, 1000):
            err = np.abs(spectral_density(h, 1.0, w, trunc_j=j) - ref)
            assert err.max() <= spectral_tail_bound(h, 1.0, j)

    def test_unit_variance_brownian(self):
        value, _ = quad(lambda w: 2 * spectral_density(0.5, 1.0, w), 0, np.pi)
        assert value == pytest.approx(1.0, abs=2e-4)


class TestEss:
    def test_white(self):
        assert ess(np.r_[1.0, np.zeros(99)], 100) == pytest.approx(100.0)

    @pytest.mark.parametrize("n", [1, 7, 100])
    def test_fully_correlated(self, n):
        assert ess(np.ones(n), n) == pytest.approx(1.0)

    @pytest.mark.parametrize("h", [0.25, 0.5, 0.75, 0.9])
    def test_fgn_closed_form(self, h):
        n = 1024
        rho = theoretical_acf(h, 1, 1.0, np.arange(n))
        assert ess(rho, n) == pytest.approx(fgn_ess_closed(n, h), rel=1e-9)

    def test_persistent_shrinks_antipersistent_inflates(self):
        n = 1024
        assert ess(theoretical_acf(0.75, 1, 1.0, np.arange(n)), n) < n
        assert ess(theoretical_acf(0.25, 1, 1.0, np.arange(n)), n) > n

    def test_scale_free(self):
        z = gen_fgn(2048, 0.7, 1.0, 1).samples
        r1 = sample_acf(z, 2047)
        r2 = sample_acf(5.0 * z, 2047)
        assert ess(r1) == pytest.approx(ess(r2), rel=1e-10)

    def test_pathological(self):
        with pytest.raises(ValueError):
            ess(np.array([1.0, -0.9, 0.0]), 3)

    def test_requires_unit_lag0(self):
        with pytest.raises(ValueError):
            ess(np.array([2.0, 0.0]))


class TestSampleAcf:
    def test_lag0(self):
        assert sample_acf(np.random.default_rng(0).normal(size=50), 5)[0] == pytest.approx(1.0)

    def test_matches_direct_biased_formula(self):
        x = np.random.default_rng(1).normal(size=37)
        xc = x - x.mean()
        direct = [np.dot(xc[: 37 - k], xc[k:]) / np.dot(xc, xc) for k in range(10)]
        assert np.allclose(sample_acf(x, 9), direct)

    @settings(max_examples=50, deadline=None)
    @given(st.lists(st.floats(-1e3, 1e3), min_size=3, max_size=60).filter(lambda v: np.ptp(v) > 1e-3))
    def test_time_reversal(self, values):
        x = np.array(values)
        k = len(values) - 1
        assert np.allclose(sample_acf(x, k), sample_acf(x[::-1], k), atol=1e-9)

    def test_constant_series(self):
        with pytest.raises(ValueError):
            sample_acf(np.ones(10), 2)

    def test_max_lag_too_large(self):
        with pytest.raises(ValueError):
            sample_acf(np.arange(5.0), 5)

    def test_whiteness_bound_iid(self):
        # i.i.d. N(0,1): per-lag coverage of +-1.96/sqrt(n) is the nominal 95%
        n, hits, total = 4096, 0, 0
        for seed in range(500):
            rho = sample_acf(np.random.default_rng(seed).standard_normal(n), 50)[1:]
            hits += np.sum(np.abs(rho) <= 1.96 / np.sqrt(n))
            total += rho.size
        assert hits / total == pytest.approx(0.95, abs=0.01)

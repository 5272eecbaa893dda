import numpy as np
import pytest

import roughpath as rp


class TestBrownian:
    def test_starts_at_zero(self):
        for seed in (0, 7, 123):
            assert rp.gen_brownian(6, seed).samples[0] == 0.0

    def test_deterministic_and_nested(self):
        a = rp.gen_brownian(8, 42)
        b = rp.gen_brownian(8, 42)
        assert np.array_equal(a.samples, b.samples)
        coarse = rp.gen_brownian(6, 42)
        assert np.array_equal(coarse.samples, a.samples[::4])

    def test_terminal_variance(self):
        # sample-variance oracle over 10^4 seeds; 3 SE of Var estimate ~ 0.042
        n = 10_000
        g1 = np.empty(n)
        gh = np.empty(n)
        for s in range(n):
            samples = rp.gen_brownian(1, s).samples
            gh[s], g1[s] = samples[1], samples[2]
        assert abs(g1.var(ddof=1) - 1.0) < 0.043
        assert abs(gh.var(ddof=1) - 0.5) < 0.022

    def test_disjoint_increments_uncorrelated(self):
        n = 10_000
        inc = np.empty((n, 2))
        for s in range(n):
            p = rp.gen_brownian(2, s).samples
            inc[s] = (p[1] - p[0], p[3] - p[2])
        rho = np.corrcoef(inc[:, 0], inc[:, 1])[0, 1]
        assert abs(rho) < 3.0 / np.sqrt(n)

    def test_seed_validation(self):
        with pytest.raises(ValueError):
            rp.gen_brownian(4, -1)
        with pytest.raises(rp.ResolutionTooCoarse):
            rp.gen_brownian(0, 1)


class TestOscillatory:
    def test_tent_count_first_packet(self):
        # A=0, m_max=1: packet on [1/2, 1] holds 2**n_1 tents
        alpha = beta = 0.45
        n1 = rp.oscillation_levels(alpha, 0.0, 1)[0]
        path = rp.gen_oscillatory(alpha, beta, 0.0, 1, n1 + 1 + 4)
        s = path.samples
        interior = s[1:-1]
        peaks = np.sum((interior > s[:-2] + 1e-15) & (interior > s[2:] + 1e-15))
        assert peaks == 1 << n1

    def test_zero_outside_support(self):
        path = rp.gen_oscillatory(0.45, 0.45, 0.0, 2, 12)
        grid = path.grid
        below = grid < 0.25 - 1e-12  # support is [2**-m_max, 1]
        assert np.all(path.samples[below] == 0.0)
        assert path.samples[-1] == 0.0

    def test_bad_exponents(self):
        with pytest.raises(rp.BadExponents):
            rp.gen_oscillatory(0.6, 0.6, 0.0, 1, 12)

    def test_resolution_guard(self):
        n1 = rp.oscillation_levels(0.45, 4.0, 1)[0]
        with pytest.raises(rp.ResolutionTooCoarse):
            rp.gen_oscillatory(0.45, 0.45, 4.0, 1, n1 + 1 + 1)

    def test_holder_flat_while_norm_grows(self):
        alpha = beta = 0.45
        gamma = alpha * beta / (1.0 - alpha)
        values = []
        holders = []
        for A in (0.0, 2.0):
            K = rp.oscillation_levels(alpha, A, 2)[-1] + 2 + 10
            path = rp.gen_oscillatory(alpha, beta, A, 2, K)
            values.append(rp.scaling_norm(path.pyramid(), beta, gamma, scan_depth=3).value)
            holders.append(rp.holder_seminorm(path, alpha).seminorm_lower_bound)
        assert holders[0] == pytest.approx(holders[1], rel=1e-9)
        growth = np.log2(values[1] / values[0]) / 2.0
        target = (1.0 - alpha - beta) / (1.0 - alpha)
        assert growth == pytest.approx(target, rel=0.35)


class TestCounterexample:
    def test_bad_exponents(self):
        with pytest.raises(rp.BadExponents):
            rp.gen_counterexample(0.7, 0.5, 16)

    def test_resolution_guard(self):
        with pytest.raises(rp.ResolutionTooCoarse):
            rp.gen_counterexample(0.3, 0.3, 8)

    def test_partial_sums_strictly_increase(self):
        path = rp.gen_counterexample(0.3, 0.3, 16)
        report = rp.existence_report(path.pyramid(), 0.3)
        tail = report.partial_sums[-5:]
        assert np.all(np.diff(tail) > 0)

    def test_holder_stays_bounded_in_K(self):
        h14 = rp.holder_seminorm(rp.gen_counterexample(0.3, 0.3, 14), 0.3)
        h18 = rp.holder_seminorm(rp.gen_counterexample(0.3, 0.3, 18), 0.3)
        assert h18.seminorm_lower_bound < 2.0 * h14.seminorm_lower_bound


class TestAnalytic:
    def test_linear_samples(self):
        path = rp.gen_analytic("linear", 5)
        assert np.array_equal(path.samples, np.arange(33) / 32)

    def test_square_grid_value(self):
        assert rp.gen_analytic("square", 4).eval(0.75) == pytest.approx(9.0 / 16.0, abs=1e-15)

    def test_sine_endpoint(self):
        assert rp.gen_analytic("sine", 8).eval(1.0) == pytest.approx(0.8414709848078965)

    def test_custom_callable(self):
        path = rp.gen_analytic(lambda t: 2.0 * t, 4)
        assert path.eval(0.5) == 1.0

    def test_rejects_non_finite(self):
        with np.errstate(divide="ignore"), pytest.raises(rp.NonFinite):
            rp.gen_analytic(lambda t: 1.0 / t, 4)

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            rp.gen_analytic("zigzag", 4)

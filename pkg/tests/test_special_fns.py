from contextlib import nullcontext

import numpy as np
import pytest
from scipy import integrate, stats

from bvalue import errors
from bvalue.special_fns import RefDist, cdf, critical_values, pdf, quantile, sf

T18 = RefDist.student_t(18)
NORMAL = RefDist.normal()

distributions = [RefDist.student_t(dof) for dof in (1, 5, 18, 100)] + [NORMAL]


class TestRefDist:
    @pytest.mark.parametrize('dof, expectation', [
        (18, nullcontext()),
        (0.5, nullcontext()),
        (0, pytest.raises(errors.DomainError)),
        (-3, pytest.raises(errors.DomainError)),
        (float('inf'), pytest.raises(errors.DomainError)),
        (None, pytest.raises(errors.DomainError)),
    ])
    def test_student_t_dof(self, dof, expectation):
        with expectation:
            RefDist(kind='StudentT', dof=dof)

    def test_normal_ignores_dof(self):
        assert RefDist(kind='Normal', dof=12).dof is None

    @pytest.mark.parametrize('mode, is_normal', [('t', False), ('z', True)])
    def test_for_mode(self, mode, is_normal):
        assert RefDist.for_mode(mode, 18).is_normal is is_normal


class TestCdf:
    def test_center(self):
        assert cdf(T18, 0.0) == 0.5

    def test_known_values(self):
        assert cdf(T18, 2.1009) == pytest.approx(0.975, abs=1e-4)
        assert cdf(NORMAL, 1.959964) == pytest.approx(0.975, abs=1e-6)
        assert cdf(RefDist.student_t(1), 1.0) == pytest.approx(0.75, abs=1e-14)

    @pytest.mark.parametrize('dist', distributions)
    def test_matches_scipy(self, dist):
        x = np.linspace(-50, 50, 2001)
        expected = stats.norm.cdf(x) if dist.is_normal else stats.t.cdf(x, dist.dof)
        np.testing.assert_allclose(cdf(dist, x), expected, rtol=0, atol=1e-12)

    @pytest.mark.parametrize('dist', distributions)
    def test_symmetry(self, dist):
        x = np.linspace(-20, 20, 401)
        np.testing.assert_allclose(cdf(dist, x) + cdf(dist, -x), 1.0, rtol=0, atol=1e-12)

    @pytest.mark.parametrize('dist', distributions)
    def test_strictly_increasing(self, dist):
        assert np.all(np.diff(cdf(dist, np.linspace(-6, 6, 601))) > 0)

    def test_sf_keeps_upper_tail(self):
        x = 40.0
        assert sf(T18, x) == pytest.approx(stats.t.sf(x, 18), rel=1e-9)
        assert sf(T18, x) > 0

    def test_scalar_in_scalar_out(self):
        assert isinstance(cdf(T18, 1.0), float)
        assert cdf(T18, np.array([1.0, 2.0])).shape == (2,)

    def test_converges_to_normal(self):
        x = np.linspace(-5, 5, 201)
        gap = np.max(np.abs(cdf(RefDist.student_t(1e6), x) - cdf(NORMAL, x)))
        assert gap < 1e-4

    @pytest.mark.parametrize('x', [float('nan'), float('inf'), -float('inf')])
    def test_non_finite(self, x):
        with pytest.raises(errors.DomainError):
            cdf(T18, x)


class TestPdf:
    def test_normal_peak(self):
        assert pdf(NORMAL, 0.0) == pytest.approx(0.3989423, abs=1e-6)

    def test_symmetry(self):
        x = np.linspace(0.1, 10, 50)
        np.testing.assert_allclose(pdf(T18, x), pdf(T18, -x), rtol=1e-14)

    @pytest.mark.parametrize('dist', distributions)
    @pytest.mark.parametrize('x', [-3.0, -1.0, 0.0, 1.0, 2.5])
    def test_derivative_of_cdf(self, dist, x):
        h = 1e-5
        numeric = (cdf(dist, x + h) - cdf(dist, x - h)) / (2 * h)
        assert pdf(dist, x) == pytest.approx(numeric, abs=1e-6)

    @pytest.mark.parametrize('dist', [T18, NORMAL, RefDist.student_t(3)])
    def test_integrates_to_one(self, dist):
        total, _ = integrate.quad(lambda x: pdf(dist, x), -np.inf, np.inf)
        assert total == pytest.approx(1.0, abs=1e-8)


class TestQuantile:
    def test_known_values(self):
        assert quantile(T18, 0.5) == pytest.approx(0.0, abs=1e-14)
        assert quantile(T18, 0.95) == pytest.approx(1.7341, abs=1e-3)
        assert quantile(T18, 0.975) == pytest.approx(2.1009, abs=1e-3)

    @pytest.mark.parametrize('dist', distributions)
    def test_roundtrip(self, dist):
        p = np.concatenate([np.logspace(-6, -1, 30), np.linspace(0.1, 0.9, 33), 1 - np.logspace(-1, -6, 30)])
        np.testing.assert_allclose(cdf(dist, quantile(dist, p)), p, rtol=0, atol=1e-9)

    @pytest.mark.parametrize('dist', distributions)
    def test_inverse_of_cdf(self, dist):
        x = np.linspace(-4, 4, 81)
        np.testing.assert_allclose(quantile(dist, cdf(dist, x)), x, rtol=0, atol=1e-9)

    def test_monotone(self):
        assert np.all(np.diff(quantile(T18, np.linspace(0.001, 0.999, 999))) > 0)

    @pytest.mark.parametrize('p', [0.0, 1.0, -0.1, 1.5, float('nan')])
    def test_out_of_range(self, p):
        with pytest.raises(errors.DomainError):
            quantile(T18, p)


class TestCriticalValues:
    def test_t18(self):
        q, h = critical_values(T18, 0.05)
        assert q == pytest.approx(1.734064, abs=1e-6)
        assert h == pytest.approx(2.100922, abs=1e-6)

    def test_normal(self):
        q, h = critical_values(NORMAL, 0.05)
        assert q == pytest.approx(1.644854, abs=1e-6)
        assert h == pytest.approx(1.959964, abs=1e-6)

    @pytest.mark.parametrize('alpha', [0.0, 1.0])
    def test_alpha_range(self, alpha):
        with pytest.raises(errors.DomainError):
            critical_values(T18, alpha)

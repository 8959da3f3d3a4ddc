import itertools
from contextlib import nullcontext

import numpy as np
import pytest

from bvalue import constants, defaults, errors
from bvalue.b_dist import BDistParams, cdf_b, support_lower, support_upper
from bvalue.eeb import EebQuery, eeb, eeb_bisect, eeb_closed, eeb_curve, minimum_beta
from bvalue.two_sample import analyze

TRT1_SE = 0.3114
TRT2_SE = 0.2313

CONDITIONS = list(constants.Condition)
BETAS = list(np.linspace(0.05, 0.97, 20))


def make_params(se=1.0, dof=18, alpha=0.05, condition='marginal', delta=0.0):
    return BDistParams(delta=delta, se=se, dof=dof, alpha=alpha, condition=condition)


def bound(params, beta, solver='auto'):
    return eeb(EebQuery(params=params, beta=beta, solver=solver)).bound


class TestQuery:
    @pytest.mark.parametrize('beta, expectation', [
        (0.5, nullcontext()),
        (0.0, pytest.raises(errors.DomainError)),
        (1.0, pytest.raises(errors.DomainError)),
    ])
    def test_beta_range(self, beta, expectation):
        with expectation:
            EebQuery(params=make_params(), beta=beta)

    def test_closed_form_needs_null(self):
        with pytest.raises(errors.DomainError):
            EebQuery(params=make_params(delta=0.5), beta=0.5, solver='closed_form')

    def test_closed_form_rejects_shifted_params(self):
        query = EebQuery(params=make_params(delta=0.5), beta=0.5, solver='bisection')
        with pytest.raises(errors.DomainError):
            eeb_closed(query)


class TestClosedForm:
    def test_trt1_accept(self):
        assert bound(make_params(se=TRT1_SE, condition='accept'), 0.792) == pytest.approx(0.911, abs=5e-3)

    def test_trt1_marginal(self):
        assert bound(make_params(se=TRT1_SE), 0.752) == pytest.approx(0.911, abs=5e-3)

    def test_trt1_accept_procedure_level(self):
        assert bound(make_params(se=TRT1_SE, condition='accept'), 0.85) == pytest.approx(0.9617, abs=2e-3)

    def test_trt2_reject(self):
        assert bound(make_params(se=TRT2_SE, condition='reject'), 0.5) == pytest.approx(0.967, abs=5e-3)

    def test_small_beta_approaches_support(self):
        p = make_params(se=TRT1_SE, condition='accept')
        assert bound(p, 1e-9) == pytest.approx(support_lower(p), abs=1e-6)

    def test_accept_capped_at_support(self):
        p = make_params(se=TRT1_SE, condition='accept')
        assert bound(p, 1 - 1e-12) <= support_upper(p)

    @pytest.mark.parametrize('condition', CONDITIONS)
    def test_exact_inversion(self, condition):
        p = make_params(se=0.4, condition=condition)
        for beta in (0.1, 0.5, 0.9):
            result = eeb_closed(EebQuery(params=p, beta=beta))
            assert result.achieved_cdf == pytest.approx(beta, abs=1e-9)
            assert result.solver_used == constants.Solver.CLOSED_FORM
            assert result.iterations == 0
            assert (result.interval.lower, result.interval.upper) == (-result.bound, result.bound)


class TestBisection:
    @pytest.mark.parametrize('condition', CONDITIONS)
    def test_invariants(self, condition):
        p = make_params(se=0.3, condition=condition)
        tolerance = 1e-9
        for beta in (0.05, 0.5, 0.95):
            result = eeb_bisect(EebQuery(params=p, beta=beta))
            assert result.achieved_cdf >= beta
            assert cdf_b(p, result.bound - tolerance) < beta
            assert result.solver_used == constants.Solver.BISECTION
            assert result.iterations > 0

    def test_agrees_with_closed_form(self):
        rng = np.random.default_rng(20190603)
        for _ in range(100):
            p = make_params(
                    se=float(rng.uniform(0.1, 3.0)),
                    dof=float(rng.uniform(2, 100)),
                    alpha=float(rng.uniform(0.01, 0.2)),
                    condition=CONDITIONS[int(rng.integers(0, 3))],
            )
            beta = float(rng.uniform(0.01, 0.99))
            closed = bound(p, beta, solver='closed_form')
            bisected = bound(p, beta, solver='bisection')
            assert bisected == pytest.approx(closed, abs=1e-7)

    def test_trt2_reject(self):
        assert bound(make_params(se=TRT2_SE, condition='reject'), 0.5, solver='bisection') == pytest.approx(0.967, abs=5e-3)

    @pytest.mark.parametrize('condition', CONDITIONS)
    def test_high_level_is_finite(self, condition):
        p = make_params(condition=condition)
        high = bound(p, 0.999, solver='bisection')
        assert np.isfinite(high)
        assert high >= bound(p, 0.5, solver='bisection')

    def test_shifted_params_use_bisection(self, caplog):
        p = make_params(delta=0.5, condition='accept')
        result = eeb(EebQuery(params=p, beta=0.8))
        assert result.solver_used == constants.Solver.BISECTION
        assert result.achieved_cdf >= 0.8
        assert 'experimental' in caplog.text

    def test_unreachable_level(self, monkeypatch):
        monkeypatch.setitem(defaults.config, 'bracket_limit', 2.0)
        with pytest.raises(errors.ConvergenceError):
            eeb_bisect(EebQuery(params=make_params(dof=1, condition='reject'), beta=0.999))


class TestProperties:
    grid = list(itertools.product((0.01, 0.025, 0.05, 0.1), (10, 18, 50)))

    @pytest.mark.parametrize('alpha, dof', grid)
    def test_nondecreasing_in_beta(self, alpha, dof):
        for condition in CONDITIONS:
            curve = eeb_curve(make_params(dof=dof, alpha=alpha, condition=condition), BETAS)
            bounds = [b for _, b in curve]
            assert all(a <= b for a, b in zip(bounds, bounds[1:]))

    @pytest.mark.parametrize('dof', [10, 18, 50])
    def test_nonincreasing_in_alpha(self, dof):
        alphas = (0.01, 0.025, 0.05, 0.1)
        for condition, beta in itertools.product(CONDITIONS, BETAS):
            bounds = [bound(make_params(dof=dof, alpha=alpha, condition=condition), beta) for alpha in alphas]
            assert all(a >= b - 1e-12 for a, b in zip(bounds, bounds[1:]))

    @pytest.mark.parametrize('alpha, dof', grid)
    def test_condition_ordering(self, alpha, dof):
        for beta in BETAS:
            accept = bound(make_params(dof=dof, alpha=alpha, condition='accept'), beta)
            marginal = bound(make_params(dof=dof, alpha=alpha), beta)
            reject = bound(make_params(dof=dof, alpha=alpha, condition='reject'), beta)
            assert accept <= marginal <= reject


class TestCurve:
    def test_sorted_and_nondecreasing(self):
        curve = eeb_curve(make_params(condition='accept'), [0.75, 0.25, 0.5])
        assert [beta for beta, _ in curve] == [0.25, 0.5, 0.75]
        assert curve[0][1] <= curve[1][1] <= curve[2][1]

    def test_clamped(self):
        curve = eeb_curve(make_params(), [0.0, 1.0])
        assert curve[0][0] == pytest.approx(1e-6)
        assert curve[1][0] == pytest.approx(1 - 1e-6)
        assert all(np.isfinite(b) for _, b in curve)

    def test_trt2_reject_covers_b(self):
        curve = eeb_curve(make_params(se=TRT2_SE, condition='reject'), [0.5])
        assert curve[0][1] >= 0.895


class TestMinimumBeta:
    def test_trt1(self, trt1, ctrl):
        r = analyze(trt1, ctrl)
        accept = BDistParams.from_result(r)
        marginal = accept.with_condition(constants.Condition.MARGINAL)
        assert minimum_beta(accept, r.b_value) == pytest.approx(0.79, abs=0.01)
        assert minimum_beta(marginal, r.b_value) == pytest.approx(0.75, abs=0.01)

    def test_trt2(self, trt2, ctrl):
        r = analyze(trt2, ctrl)
        reject = BDistParams.from_result(r)
        marginal = reject.with_condition(constants.Condition.MARGINAL)
        assert minimum_beta(reject, r.b_value) < 0.5
        assert minimum_beta(marginal, r.b_value) == pytest.approx(0.953, abs=0.005)

    @pytest.mark.parametrize('condition', CONDITIONS)
    def test_equals_cdf_under_null(self, condition):
        p = make_params(se=0.5, condition=condition)
        b = support_lower(p) + 0.4
        assert minimum_beta(p, b) == pytest.approx(cdf_b(p, b), abs=1e-8)

    def test_extremes(self):
        p = make_params(condition='accept')
        assert minimum_beta(p, 0.1) == 0.0
        assert minimum_beta(p, 100.0) == 1.0

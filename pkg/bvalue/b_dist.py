"""
==============================
B-value distribution module
==============================

Marginal and stage-1 conditional distributions of the B-value for any true difference
``delta``. With ``T = (delta_hat - delta) / S`` following the reference distribution,
``B = |delta_hat| + q S`` where ``q = q_{1-alpha}``, so ``B <= b`` is the event
``q - (b + delta)/S <= T <= (b - delta)/S - q``. Stage-1 acceptance is the event
``-h - delta/S <= T <= h - delta/S`` with ``h = q_{1-alpha/2}``.
"""
from __future__ import annotations

import logging
from typing import Optional, Tuple

import numpy as np
from pydantic.v1 import validator

from bvalue import constants, errors
from bvalue.dto import DTOMixin
from bvalue.special_fns import RefDist, cdf, critical_values, pdf, sf
from bvalue.two_sample import TwoSampleResult, stage1_verdict
from bvalue.types import ArrayLike

logger = logging.getLogger(__name__)

_NULL_AGREEMENT = 1e-9


class BDistParams(DTOMixin):
    """
    Parameters of a distribution of the B-value.

    Attributes:
        delta: True difference of means.
        se: Standard error ``S``.
        dof: Degrees of freedom.
        alpha: Significance level in (0, 0.5).
        condition: ``marginal``, ``accept`` or ``reject``.
        dist_mode: ``t`` or ``z``.
    """
    delta: float = 0.0
    se: float
    dof: float
    alpha: float
    condition: constants.Condition = constants.Condition.MARGINAL
    dist_mode: constants.DistMode = constants.DistMode.T

    @validator('delta')
    def _check_delta(cls, delta):
        if not np.isfinite(delta):
            raise errors.DomainError(f'delta must be finite, got {delta}.')
        return delta

    @validator('se')
    def _check_se(cls, se):
        if not np.isfinite(se) or se <= 0:
            raise errors.DomainError(f'Standard error must be positive, got {se}.')
        return se

    @validator('alpha')
    def _check_alpha(cls, alpha):
        if not 0.0 < alpha < 0.5:
            raise errors.DomainError(f'alpha must lie in (0, 0.5), got {alpha}.')
        return alpha

    @property
    def dist(self) -> RefDist:
        return RefDist.for_mode(self.dist_mode, self.dof)

    @property
    def quantiles(self) -> Tuple[float, float]:
        """ ``(q_{1-alpha}, q_{1-alpha/2})`` """
        return critical_values(self.dist, self.alpha)

    def with_condition(self, condition: constants.Condition) -> BDistParams:
        return self.copy(update={'condition': constants.Condition(condition).value})

    @classmethod
    def from_result(
            cls,
            result: TwoSampleResult,
            condition: Optional[constants.Condition] = None,
            delta: float = 0.0,
    ) -> BDistParams:
        """
        Null-distribution parameters implied by an observed comparison.

        Args:
            result: Observed two-sample result, supplies ``S``, ``dof``, ``alpha`` and the test mode.
            condition: Conditioning event, defaults to the realized stage-1 verdict.
            delta: True difference, zero for the null distribution.
        """
        if condition is None:
            condition = verdict_condition(stage1_verdict(result))
        return cls(
                delta=delta,
                se=result.se,
                dof=result.dof,
                alpha=result.alpha,
                condition=condition,
                dist_mode=result.dist_mode,
        )


def verdict_condition(verdict: constants.Stage1Verdict) -> constants.Condition:
    """ The conditioning event matching a realized stage-1 verdict. """
    if verdict == constants.Stage1Verdict.ACCEPT:
        return constants.Condition.ACCEPT
    return constants.Condition.REJECT


def support_lower(p: BDistParams) -> float:
    """
    Lower end of the support: ``S q_{1-alpha}``, or ``S (q_{1-alpha} + q_{1-alpha/2})`` under rejection.
    """
    q, h = p.quantiles
    if p.condition == constants.Condition.REJECT:
        return p.se * (q + h)
    return p.se * q


def support_upper(p: BDistParams) -> float:
    """
    Upper end of the support, finite only under acceptance.
    """
    if p.condition == constants.Condition.ACCEPT:
        q, h = p.quantiles
        return p.se * (q + h)
    return float('inf')


def stage1_probability(p: BDistParams) -> float:
    """
    Probability of the conditioning event when the true difference is ``p.delta``.
    """
    if p.condition == constants.Condition.MARGINAL:
        return 1.0
    _, h = p.quantiles
    shift = p.delta / p.se
    accept = float(cdf(p.dist, h - shift)) - float(cdf(p.dist, -h - shift))
    if p.condition == constants.Condition.ACCEPT:
        return accept
    return float(sf(p.dist, h - shift)) + float(cdf(p.dist, -h - shift))


def _as_array(b: ArrayLike) -> Tuple[np.ndarray, bool]:
    arr = np.asarray(b, dtype=float)
    if np.any(np.isnan(arr)):
        raise errors.DomainError('b must not be NaN.')
    return arr, arr.ndim == 0


def _general_cdf(p: BDistParams, b: np.ndarray) -> np.ndarray:
    dist = p.dist
    q, h = p.quantiles
    shift = p.delta / p.se
    # inf-safe: evaluate only on finite b, patch the rest afterwards
    finite_b = np.where(np.isfinite(b), b, 0.0)
    upper = (finite_b - p.delta) / p.se - q
    lower = q - (finite_b + p.delta) / p.se

    if p.condition == constants.Condition.MARGINAL:
        value = np.asarray(cdf(dist, upper)) - np.asarray(cdf(dist, lower))
    elif p.condition == constants.Condition.ACCEPT:
        hi = np.minimum(upper, h - shift)
        lo = np.maximum(lower, -h - shift)
        joint = np.clip(np.asarray(cdf(dist, hi)) - np.asarray(cdf(dist, lo)), 0.0, None)
        value = np.where(finite_b >= support_upper(p), 1.0, joint / stage1_probability(p))
    else:
        positive_tail = np.clip(float(sf(dist, h - shift)) - np.asarray(sf(dist, upper)), 0.0, None)
        negative_tail = np.clip(float(cdf(dist, -h - shift)) - np.asarray(cdf(dist, lower)), 0.0, None)
        value = (positive_tail + negative_tail) / stage1_probability(p)

    value = np.where(finite_b < support_lower(p), 0.0, value)
    value = np.where(b == np.inf, 1.0, value)
    value = np.where(b == -np.inf, 0.0, value)
    return np.clip(value, 0.0, 1.0)


def _null_cdf(p: BDistParams, b: np.ndarray) -> np.ndarray:
    """ Closed forms at ``delta = 0``. """
    dist = p.dist
    q, _ = p.quantiles
    finite_b = np.where(np.isfinite(b), b, 0.0)
    f = np.asarray(cdf(dist, finite_b / p.se - q))

    if p.condition == constants.Condition.MARGINAL:
        value = 2 * f - 1
    elif p.condition == constants.Condition.ACCEPT:
        value = np.where(finite_b >= support_upper(p), 1.0, (2 * f - 1) / (1 - p.alpha))
    else:
        value = (f - (1 - p.alpha / 2)) / (p.alpha / 2)

    value = np.where(finite_b < support_lower(p), 0.0, value)
    value = np.where(b == np.inf, 1.0, value)
    value = np.where(b == -np.inf, 0.0, value)
    return np.clip(value, 0.0, 1.0)


def cdf_b(p: BDistParams, b: ArrayLike) -> ArrayLike:
    """
    Cumulative distribution function of the B-value under ``p``.

    The general-delta expression is always evaluated. At ``delta = 0`` the closed forms are
    evaluated as well and, unless Python runs with ``-O``, both are asserted to agree.

    Args:
        p: Distribution parameters.
        b: Scalar or array of evaluation points.
    Returns:
        P(B <= b | condition), same shape as ``b``.
    """
    arr, scalar = _as_array(b)
    value = _general_cdf(p, arr)

    if __debug__ and p.delta == 0:
        null_value = _null_cdf(p, arr)
        assert np.allclose(value, null_value, rtol=0, atol=_NULL_AGREEMENT), \
            'general and delta=0 forms of the B-value CDF disagree'

    return float(value) if scalar else value


def pdf_b_marginal(p: BDistParams, b: ArrayLike) -> ArrayLike:
    """
    Density of the marginal distribution of the B-value.

    Raises:
        UnsupportedOperationError: If ``p`` is conditioned on a stage-1 verdict.
    """
    if p.condition != constants.Condition.MARGINAL:
        raise errors.UnsupportedOperationError(
                f'Only the marginal density is available, got condition \'{p.condition}\'.',
        )

    arr, scalar = _as_array(b)
    q, _ = p.quantiles
    finite_b = np.where(np.isfinite(arr), arr, 0.0)
    density = (
            np.asarray(pdf(p.dist, (finite_b - p.delta) / p.se - q))
            + np.asarray(pdf(p.dist, q - (finite_b + p.delta) / p.se))
    ) / p.se
    density = np.where((finite_b < support_lower(p)) | ~np.isfinite(arr), 0.0, density)

    return float(density) if scalar else density

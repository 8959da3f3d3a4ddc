"""
=================
Two-sample module
=================

Pooled-variance two-sample comparison: standard error, test statistic, p-value, the
100(1-alpha)% and 100(1-2alpha)% confidence intervals, and the B-value.
"""
from __future__ import annotations

import logging
from typing import Optional, Sequence, Union

import numpy as np
from pydantic.v1 import root_validator, validator

from bvalue import constants, defaults, errors
from bvalue.dto import DTOMixin
from bvalue.special_fns import RefDist, critical_values, sf
from bvalue.types import ArrayLike, Observations

logger = logging.getLogger(__name__)


class Interval(DTOMixin):
    """
    Closed interval ``[lower, upper]``.
    """
    lower: float
    upper: float

    @root_validator(skip_on_failure=True)
    def _check_order(cls, values):
        if not values['lower'] <= values['upper']:
            raise errors.DomainError(f'Interval lower bound {values["lower"]} exceeds upper bound {values["upper"]}.')
        return values

    @classmethod
    def centered(cls, center: float, half_width: float) -> Interval:
        return cls(lower=center - half_width, upper=center + half_width)

    @classmethod
    def symmetric(cls, bound: float) -> Interval:
        """ The interval ``[-bound, bound]``. """
        return cls(lower=-bound, upper=bound)

    @property
    def width(self) -> float:
        return self.upper - self.lower

    @property
    def center(self) -> float:
        return 0.5 * (self.lower + self.upper)

    def contains(self, x: float) -> bool:
        return self.lower <= x <= self.upper

    def covers(self, other: Interval) -> bool:
        """ ``True`` if ``other`` is a subset of this interval. """
        return self.lower <= other.lower and other.upper <= self.upper


class SampleSummary(DTOMixin):
    """
    Sufficient statistics of one group.

    Attributes:
        n: Number of observations, at least 2.
        mean: Sample mean.
        sd: Sample standard deviation with divisor ``n - 1``.
        label: Optional group label.
    """
    n: int
    mean: float
    sd: float
    label: Optional[str] = None

    @validator('n')
    def _check_n(cls, n):
        if n < 2:
            raise errors.DomainError(f'A group needs at least 2 observations, got n={n}.')
        return n

    @validator('mean')
    def _check_mean(cls, mean):
        if not np.isfinite(mean):
            raise errors.DomainError(f'Group mean must be finite, got {mean}.')
        return mean

    @validator('sd')
    def _check_sd(cls, sd):
        if not np.isfinite(sd) or sd < 0:
            raise errors.DomainError(f'Standard deviation must be a nonnegative real, got {sd}.')
        return sd

    @property
    def variance(self) -> float:
        return self.sd ** 2

    @classmethod
    def from_observations(cls, values: Observations, label: Optional[str] = None) -> SampleSummary:
        """
        Reduces raw observations to a summary.

        Args:
            values: Finite observations, at least two.
            label: Optional group label.
        Returns:
            SampleSummary of the observations.
        """
        arr = np.asarray(values, dtype=float)
        if arr.ndim != 1:
            raise errors.DomainError('Observations must be a one-dimensional sequence.')
        if arr.size < 2:
            raise errors.DomainError(f'A group needs at least 2 observations, got {arr.size}.')
        if not np.all(np.isfinite(arr)):
            raise errors.DomainError('Observations must be finite.')

        return cls(
                n=int(arr.size),
                mean=float(np.mean(arr)),
                sd=float(np.std(arr, ddof=1)),
                label=label,
        )


GroupData = Union[SampleSummary, Sequence[float], np.ndarray]


class TwoSampleResult(DTOMixin):
    """
    Outcome of a two-sample comparison of ``g1 - g2``.

    Attributes:
        delta_hat: Difference of the sample means.
        se: Pooled standard error.
        dof: Degrees of freedom ``n1 + n2 - 2``.
        alpha: Significance level.
        dist_mode: ``t`` or ``z``.
        t_stat: Standardized difference ``delta_hat / se``.
        p_value: Two-sided p-value.
        ci_1m_alpha: The 100(1-alpha)% interval ``[L0, U0]``.
        ci_1m_2alpha: The 100(1-2alpha)% interval ``[L, U]``.
        b_value: ``max(|L|, |U|)``.
        dist: Reference distribution used for quantiles and the p-value.
    """
    delta_hat: float
    se: float
    dof: float
    alpha: float
    dist_mode: constants.DistMode
    t_stat: float
    p_value: float
    ci_1m_alpha: Interval
    ci_1m_2alpha: Interval
    b_value: float
    dist: RefDist

    @property
    def half_width(self) -> float:
        """ Half-width of ``[L, U]`` """
        return self.ci_1m_2alpha.upper - self.delta_hat


def _as_summary(group: GroupData, label: str) -> SampleSummary:
    if isinstance(group, SampleSummary):
        return group
    return SampleSummary.from_observations(group, label=label)


def pooled_se_arrays(n1: ArrayLike, n2: ArrayLike, sd1: ArrayLike, sd2: ArrayLike) -> ArrayLike:
    """
    Pooled standard error under a common variance, elementwise over arrays.
    """
    n1 = np.asarray(n1, dtype=float)
    n2 = np.asarray(n2, dtype=float)
    pooled_variance = ((n1 - 1) * np.square(sd1) + (n2 - 1) * np.square(sd2)) / (n1 + n2 - 2)
    return np.sqrt(1 / n1 + 1 / n2) * np.sqrt(pooled_variance)


def pooled_se(g1: SampleSummary, g2: SampleSummary) -> float:
    """
    Pooled standard error of the mean difference.

    Raises:
        DegenerateDataError: If both standard deviations are zero.
    """
    if g1.sd == 0 and g2.sd == 0:
        raise errors.DegenerateDataError('Both groups have zero variance, the standard error is zero.')

    return float(pooled_se_arrays(g1.n, g2.n, g1.sd, g2.sd))


def analyze(
        g1: GroupData,
        g2: GroupData,
        alpha: float = defaults.config['alpha'],
        dist_mode: constants.DistMode = defaults.config['dist_mode'],
) -> TwoSampleResult:
    """
    Compares the means of two groups.

    Args:
        g1: First group, as a :py:class:`SampleSummary` or raw observations.
        g2: Second group, as a :py:class:`SampleSummary` or raw observations.
        alpha: Significance level in (0, 0.5).
        dist_mode: ``'t'`` for Student-t quantiles, ``'z'`` for standard normal quantiles.
    Returns:
        TwoSampleResult for the difference ``g1 - g2``.
    Raises:
        DomainError: If alpha is out of range or a group is invalid.
        DegenerateDataError: If both groups have zero variance.

    Example::

        from bvalue.two_sample import analyze

        result = analyze([4.81, 4.17, 4.41], [4.17, 5.58, 5.18], alpha=0.05)
        print(result.b_value)
    """
    if not 0.0 < alpha < 0.5:
        raise errors.DomainError(f'alpha must lie in (0, 0.5), got {alpha}.')
    dist_mode = constants.DistMode(dist_mode)

    g1 = _as_summary(g1, 'g1')
    g2 = _as_summary(g2, 'g2')
    se = pooled_se(g1, g2)
    dof = float(g1.n + g2.n - 2)
    dist = RefDist.for_mode(dist_mode, dof)

    delta_hat = g1.mean - g2.mean
    t_stat = delta_hat / se
    p_value = min(1.0, 2.0 * float(sf(dist, abs(t_stat))))
    q_one_sided, q_two_sided = critical_values(dist, alpha)

    ci_1m_alpha = Interval.centered(delta_hat, q_two_sided * se)
    ci_1m_2alpha = Interval.centered(delta_hat, q_one_sided * se)

    logger.debug('analyze: delta_hat=%.6g se=%.6g dof=%g t=%.6g p=%.6g', delta_hat, se, dof, t_stat, p_value)

    return TwoSampleResult(
            delta_hat=delta_hat,
            se=se,
            dof=dof,
            alpha=alpha,
            dist_mode=dist_mode,
            t_stat=t_stat,
            p_value=p_value,
            ci_1m_alpha=ci_1m_alpha,
            ci_1m_2alpha=ci_1m_2alpha,
            b_value=max(abs(ci_1m_2alpha.lower), abs(ci_1m_2alpha.upper)),
            dist=dist,
    )


def b_value(r: TwoSampleResult) -> float:
    """
    The B-value ``max(|L|, |U|)``, the smallest symmetric bound at which
    an equivalence test on ``[L, U]`` concludes equivalence.
    """
    return max(abs(r.ci_1m_2alpha.lower), abs(r.ci_1m_2alpha.upper))


def stage1_verdict(r: TwoSampleResult) -> constants.Stage1Verdict:
    """
    ``Accept`` if zero lies in the closed interval ``[L0, U0]``, otherwise ``Reject``.
    """
    if r.ci_1m_alpha.contains(0.0):
        return constants.Stage1Verdict.ACCEPT
    return constants.Stage1Verdict.REJECT

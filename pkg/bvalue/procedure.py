"""
================
Procedure module
================

Two-stage comparison of two means. Stage 1 is the classic two-sided test on ``[L0, U0]``;
stage 2 compares ``[L, U]`` with the empirical equivalence interval ``[-Delta, Delta]``,
where ``Delta`` is the EEB conditioned on the stage-1 verdict or a user supplied bound.
"""
from __future__ import annotations

import logging
from typing import Optional

import numpy as np
from pydantic.v1 import validator

from bvalue import constants, defaults, errors
from bvalue.b_dist import BDistParams
from bvalue.dto import DTOMixin
from bvalue.eeb import EebQuery, EebResult, eeb
from bvalue.two_sample import GroupData, Interval, TwoSampleResult, analyze, stage1_verdict

logger = logging.getLogger(__name__)


class ProcedureConfig(DTOMixin):
    """
    Configuration of the two-stage procedure.

    Attributes:
        alpha: Stage-1 significance level in (0, 0.5).
        beta: EEB level in (0, 1).
        dist_mode: ``t`` or ``z``.
        fixed_delta: Optional equivalence bound that replaces the EEB.
    """
    alpha: float = defaults.config['alpha']
    beta: float = defaults.config['beta']
    dist_mode: constants.DistMode = defaults.config['dist_mode']
    fixed_delta: Optional[float] = None

    @validator('alpha')
    def _check_alpha(cls, alpha):
        if not 0.0 < alpha < 0.5:
            raise errors.DomainError(f'alpha must lie in (0, 0.5), got {alpha}.')
        return alpha

    @validator('beta')
    def _check_beta(cls, beta):
        if not 0.0 < beta < 1.0:
            raise errors.DomainError(f'beta must lie in (0, 1), got {beta}.')
        return beta

    @validator('fixed_delta')
    def _check_fixed_delta(cls, fixed_delta):
        if fixed_delta is not None and not fixed_delta > 0:
            raise errors.DomainError(f'An equivalence bound must be positive, got {fixed_delta}.')
        return fixed_delta


class ProcedureOutcome(DTOMixin):
    """
    Result of the two-stage procedure.

    Attributes:
        stage1: ``Accept`` or ``Reject``.
        stage2: ``Equivalence``, ``Inconclusive``, ``DifferenceConfirmed`` or ``FalsePositiveCorrected``.
        geometry: Position of ``[L, U]`` relative to ``[-Delta, Delta]``.
        equivalence_bound: The bound ``Delta`` that was used.
        eeb_used: The EEB behind ``Delta``, absent when a fixed bound was given.
        beta: EEB level, echoed so callers can impose their own threshold on ``DifferenceConfirmed``.
        result: Stage-1 comparison.
    """
    stage1: constants.Stage1Verdict
    stage2: constants.Stage2Verdict
    geometry: constants.Geometry
    equivalence_bound: float
    eeb_used: Optional[EebResult] = None
    beta: float
    result: TwoSampleResult

    @property
    def verdict_line(self) -> str:
        source = 'fixed bound' if self.eeb_used is None else f'EEB at beta={self.beta:g}'
        ci = self.result.ci_1m_2alpha
        return (f'{self.stage2}: stage 1 {self.stage1}, '
                f'[{ci.lower:.6f}, {ci.upper:.6f}] vs [-{self.equivalence_bound:.6f}, '
                f'{self.equivalence_bound:.6f}] ({source})')


def classify_geometry(ci: Interval, eq: Interval) -> constants.Geometry:
    """
    Classifies a confidence interval against an equivalence interval, both closed.

    Touching endpoints count as overlap.
    """
    if eq.covers(ci):
        return constants.Geometry.CONTAINED
    if ci.upper < eq.lower or ci.lower > eq.upper:
        return constants.Geometry.DISJOINT
    return constants.Geometry.OVERLAPPING


def stage2_verdict(stage1: constants.Stage1Verdict, geometry: constants.Geometry) -> constants.Stage2Verdict:
    if geometry == constants.Geometry.CONTAINED:
        if stage1 == constants.Stage1Verdict.ACCEPT:
            return constants.Stage2Verdict.EQUIVALENCE
        return constants.Stage2Verdict.FALSE_POSITIVE_CORRECTED
    if geometry == constants.Geometry.DISJOINT and stage1 == constants.Stage1Verdict.REJECT:
        return constants.Stage2Verdict.DIFFERENCE_CONFIRMED
    return constants.Stage2Verdict.INCONCLUSIVE


def stage2_codes(reject: np.ndarray, contained: np.ndarray, disjoint: np.ndarray) -> np.ndarray:
    """
    Vectorized :py:func:`stage2_verdict`, returns indices into ``list(Stage2Verdict)``.
    """
    order = list(constants.Stage2Verdict)
    codes = np.full(reject.shape, order.index(constants.Stage2Verdict.INCONCLUSIVE), dtype=np.int64)
    codes[contained & ~reject] = order.index(constants.Stage2Verdict.EQUIVALENCE)
    codes[contained & reject] = order.index(constants.Stage2Verdict.FALSE_POSITIVE_CORRECTED)
    codes[disjoint & reject] = order.index(constants.Stage2Verdict.DIFFERENCE_CONFIRMED)
    return codes


def run_two_stage(g1: GroupData, g2: GroupData, cfg: ProcedureConfig = ProcedureConfig()) -> ProcedureOutcome:
    """
    Runs the two-stage procedure on ``g1 - g2``.

    Args:
        g1: First group, summary or observations.
        g2: Second group, summary or observations.
        cfg: Procedure configuration.
    Returns:
        ProcedureOutcome with both verdicts.

    Example::

        from bvalue.procedure import ProcedureConfig, run_two_stage

        outcome = run_two_stage(trt1, ctrl, ProcedureConfig(alpha=0.05, beta=0.85))
        print(outcome.verdict_line)
    """
    result = analyze(g1, g2, alpha=cfg.alpha, dist_mode=cfg.dist_mode)
    stage1 = stage1_verdict(result)

    eeb_used: Optional[EebResult] = None
    if cfg.fixed_delta is not None:
        bound = cfg.fixed_delta
    else:
        eeb_used = eeb(EebQuery(params=BDistParams.from_result(result), beta=cfg.beta))
        bound = eeb_used.bound

    geometry = classify_geometry(result.ci_1m_2alpha, Interval.symmetric(bound))
    stage2 = stage2_verdict(stage1, geometry)
    logger.info('two-stage: stage1=%s B=%.6g Delta=%.6g stage2=%s', stage1.value, result.b_value, bound, stage2.value)

    return ProcedureOutcome(
            stage1=stage1,
            stage2=stage2,
            geometry=geometry,
            equivalence_bound=bound,
            eeb_used=eeb_used,
            beta=cfg.beta,
            result=result,
    )


def run_classic_equivalence(
        g1: GroupData,
        g2: GroupData,
        alpha: float,
        delta: float,
        dist_mode: constants.DistMode = defaults.config['dist_mode'],
) -> constants.ClassicVerdict:
    """
    Fixed-bound equivalence test: equivalence iff ``[L, U]`` lies within ``[-delta, delta]``.

    Raises:
        DomainError: If ``delta`` is not positive or alpha is out of range.
    """
    if not delta > 0:
        raise errors.DomainError(f'An equivalence bound must be positive, got {delta}.')

    result = analyze(g1, g2, alpha=alpha, dist_mode=dist_mode)
    if classify_geometry(result.ci_1m_2alpha, Interval.symmetric(delta)) == constants.Geometry.CONTAINED:
        return constants.ClassicVerdict.EQUIVALENCE
    return constants.ClassicVerdict.NOT_ESTABLISHED

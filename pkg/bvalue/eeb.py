"""
=================================
Empirical Equivalence Bound module
=================================

The EEB at level ``beta`` is the ``beta``-quantile of the (conditional) null distribution
of the B-value, ``inf{b : F_B(b | C) >= beta}``. Closed forms exist at ``delta = 0`` for
every condition, any other parameterization is solved by bisection on the CDF.
"""
from __future__ import annotations

import logging
from typing import Iterable, List

import numpy as np
from pydantic.v1 import validator
from scipy import optimize

from bvalue import constants, defaults, errors
from bvalue.b_dist import BDistParams, cdf_b, support_lower, support_upper
from bvalue.dto import DTOMixin
from bvalue.special_fns import quantile
from bvalue.two_sample import Interval
from bvalue.types import CurvePoint

logger = logging.getLogger(__name__)


def _check_beta(beta: float) -> float:
    if not 0.0 < beta < 1.0:
        raise errors.DomainError(f'beta must lie in (0, 1), got {beta}.')
    return beta


class EebQuery(DTOMixin):
    """
    Request for an Empirical Equivalence Bound.

    Attributes:
        params: Distribution of the B-value, ``delta`` is zero except for experimental bisection queries.
        beta: Level in (0, 1).
        solver: ``closed_form``, ``bisection`` or ``auto``.
    """
    params: BDistParams
    beta: float
    solver: constants.Solver = constants.Solver.AUTO

    @validator('beta')
    def _check_beta(cls, beta):
        return _check_beta(beta)

    @validator('solver')
    def _check_solver(cls, solver, values):
        params = values.get('params')
        if params is not None and params.delta != 0 and solver == constants.Solver.CLOSED_FORM:
            raise errors.DomainError('Closed-form EEBs exist only for delta = 0.')
        return solver


class EebResult(DTOMixin):
    """
    An Empirical Equivalence Bound.

    Attributes:
        bound: The bound ``Delta``.
        interval: Empirical equivalence interval ``[-bound, bound]``.
        achieved_cdf: ``F_B(bound | C)``.
        solver_used: Solver that produced the bound.
        iterations: Bisection iterations, zero for closed forms.
        beta: Requested level.
        condition: Conditioning event.
    """
    bound: float
    interval: Interval
    achieved_cdf: float
    solver_used: constants.Solver
    iterations: int = 0
    beta: float
    condition: constants.Condition


def _result(query: EebQuery, bound: float, solver: constants.Solver, iterations: int = 0) -> EebResult:
    return EebResult(
            bound=bound,
            interval=Interval.symmetric(bound),
            achieved_cdf=float(cdf_b(query.params, bound)),
            solver_used=solver,
            iterations=iterations,
            beta=query.beta,
            condition=query.params.condition,
    )


def eeb_closed(q: EebQuery) -> EebResult:
    """
    Closed-form EEB at ``delta = 0``.

    * marginal: ``S {F^-1((1 + beta)/2) + q_{1-alpha}}``
    * accept: ``S {F^-1((beta (1 - alpha) + 1)/2) + q_{1-alpha}}``
    * reject: ``S {F^-1(1 - alpha (1 - beta)/2) + q_{1-alpha}}``

    Raises:
        DomainError: If ``delta`` is not zero.
    """
    params = q.params
    if params.delta != 0:
        raise errors.DomainError('Closed-form EEBs exist only for delta = 0.')

    if params.condition == constants.Condition.ACCEPT:
        level = (q.beta * (1 - params.alpha) + 1) / 2
    elif params.condition == constants.Condition.REJECT:
        level = 1 - params.alpha * (1 - q.beta) / 2
    else:
        level = (1 + q.beta) / 2

    q_one_sided, _ = params.quantiles
    bound = params.se * (float(quantile(params.dist, level)) + q_one_sided)
    # the accept law is supported on a bounded interval
    bound = min(bound, support_upper(params))

    return _result(q, bound, constants.Solver.CLOSED_FORM)


def eeb_bisect(q: EebQuery) -> EebResult:
    """
    EEB by bisection on the nondecreasing CDF of the B-value.

    The lower bracket is the support's lower end; the upper bracket starts one standard
    error above it and doubles its distance until the CDF reaches ``beta``.
    The returned bound always satisfies ``F_B(bound) >= beta``.

    Raises:
        ConvergenceError: If the upper bracket would exceed ``bracket_limit`` standard errors.
    """
    params = q.params
    if params.delta != 0:
        logger.warning('Solving the EEB at delta=%g, non-null EEBs are experimental.', params.delta)

    tolerance = defaults.config['bisection_tolerance']
    limit = defaults.config['bracket_limit'] * params.se

    lower = support_lower(params)
    width = params.se
    upper = lower + width
    while cdf_b(params, upper) < q.beta:
        width *= 2
        if width > limit:
            raise errors.ConvergenceError(
                    f'No upper bracket below {limit:g} for beta={q.beta}, check the distribution parameters.',
            )
        upper = lower + width

    def excess(b: float) -> float:
        return float(cdf_b(params, b)) - q.beta

    if excess(upper) == 0:
        root, iterations = upper, 0
    else:
        # half tolerance, so the upward correction stays within one tolerance of the root
        step = tolerance / 2
        root, report = optimize.bisect(excess, lower, upper, xtol=step, full_output=True)
        iterations = report.iterations
        while excess(root) < 0 and root < upper:
            root = min(root + step, upper)

    logger.debug('eeb_bisect: condition=%s beta=%g bound=%.12g iterations=%d',
                 params.condition, q.beta, root, iterations)

    return _result(q, root, constants.Solver.BISECTION, iterations)


def eeb(q: EebQuery) -> EebResult:
    """
    EEB with the solver chosen by the query, ``auto`` uses the closed form at ``delta = 0``.
    """
    if q.solver == constants.Solver.BISECTION:
        return eeb_bisect(q)
    if q.solver == constants.Solver.CLOSED_FORM:
        return eeb_closed(q)
    if q.params.delta == 0:
        return eeb_closed(q)
    return eeb_bisect(q)


def eeb_curve(
        params: BDistParams,
        betas: Iterable[float],
        solver: constants.Solver = constants.Solver.AUTO,
) -> List[CurvePoint]:
    """
    EEB at several levels.

    Requested levels are clamped into ``(beta_clamp, 1 - beta_clamp)``.

    Returns:
        ``(beta, bound)`` pairs sorted by beta.

    Example::

        params = BDistParams(se=0.3114, dof=18, alpha=0.05, condition='accept')
        for beta, bound in eeb_curve(params, [0.25, 0.5, 0.75]):
            print(beta, bound)
    """
    clamp = defaults.config['beta_clamp']
    levels = sorted(float(np.clip(beta, clamp, 1 - clamp)) for beta in betas)

    return [
        (beta, eeb(EebQuery(params=params, beta=beta, solver=solver)).bound)
        for beta in levels
    ]


def minimum_beta(params: BDistParams, b: float) -> float:
    """
    Smallest level whose EEB covers ``b``, found by root-finding on the EEB curve.

    A B-value at or below the support yields ``0.0``, a B-value beyond every attainable EEB yields ``1.0``.
    """
    clamp = defaults.config['beta_clamp'] ** 2

    def gap(beta: float) -> float:
        return eeb(EebQuery(params=params, beta=beta)).bound - b

    if gap(clamp) >= 0:
        return 0.0
    if gap(1 - clamp) < 0:
        return 1.0

    return float(optimize.brentq(gap, clamp, 1 - clamp, xtol=1e-12))

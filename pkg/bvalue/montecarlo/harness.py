"""
Monte Carlo harness.

Every replicate goes through the same arithmetic as :py:func:`bvalue.two_sample.analyze`
and :py:func:`bvalue.procedure.run_two_stage`, vectorized over a block of replicates.
Comparisons with the analytic laws use the standardized B-value ``B / S``. In summary mode
``S`` is fixed and ``B / S`` follows :py:func:`bvalue.b_dist.cdf_b` with unit standard error.
In raw mode ``S`` is estimated, so ``B / S = |T| + q`` where ``T = delta_hat / S`` is
noncentral t on ``n1 + n2 - 2`` degrees of freedom with noncentrality ``delta / SE``.
"""
from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import stats

from bvalue import constants, defaults, errors
from bvalue.b_dist import BDistParams, cdf_b, stage1_probability
from bvalue.dto import DTOMixin
from bvalue.eeb import EebQuery, eeb
from bvalue.montecarlo.scenario import SimScenario
from bvalue.montecarlo.streams import block_generator, blocks, open_uniforms
from bvalue.procedure import stage2_codes
from bvalue.special_fns import RefDist, cdf, critical_values, quantile, sf
from bvalue.two_sample import Interval, TwoSampleResult, pooled_se_arrays
from bvalue.types import ArrayLike

logger = logging.getLogger(__name__)

_STAGE2_ORDER = list(constants.Stage2Verdict)

UnitLaw = Callable[[constants.Condition, ArrayLike], np.ndarray]


@dataclass
class ReplicateDraws:
    """
    Per-replicate statistics of one scenario, one array entry per replicate.
    """
    scenario: SimScenario
    delta_hat: np.ndarray
    se: np.ndarray
    lower0: np.ndarray
    upper0: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    b_value: np.ndarray
    reject: np.ndarray
    bound: np.ndarray
    stage2: np.ndarray

    def __len__(self) -> int:
        return int(self.delta_hat.size)

    @property
    def standardized(self) -> np.ndarray:
        """ ``B / S`` """
        return self.b_value / self.se

    def stage1(self, i: int) -> constants.Stage1Verdict:
        return constants.Stage1Verdict.REJECT if self.reject[i] else constants.Stage1Verdict.ACCEPT

    def outcome(self, i: int) -> constants.Stage2Verdict:
        return _STAGE2_ORDER[int(self.stage2[i])]

    def result(self, i: int) -> TwoSampleResult:
        """
        Rebuilds the :py:class:`~bvalue.two_sample.TwoSampleResult` of replicate ``i``.
        """
        s = self.scenario
        dist = RefDist.for_mode(s.dist_mode, s.dof)
        t_stat = float(self.delta_hat[i] / self.se[i])
        return TwoSampleResult(
                delta_hat=float(self.delta_hat[i]),
                se=float(self.se[i]),
                dof=s.dof,
                alpha=s.alpha,
                dist_mode=s.dist_mode,
                t_stat=t_stat,
                p_value=min(1.0, 2.0 * float(sf(dist, abs(t_stat)))),
                ci_1m_alpha=Interval(lower=float(self.lower0[i]), upper=float(self.upper0[i])),
                ci_1m_2alpha=Interval(lower=float(self.lower[i]), upper=float(self.upper[i])),
                b_value=float(self.b_value[i]),
                dist=dist,
        )


class SimReport(DTOMixin):
    """
    Aggregated outcome of a scenario.

    Attributes:
        scenario: Echo of the scenario.
        reps: Number of replicates.
        condition_counts: Replicates per stage-1 verdict.
        outcome_counts: Replicates per stage-2 verdict.
        accept_fraction: Observed stage-1 acceptance frequency.
        analytic_accept_probability: Acceptance probability from the analytic law.
        empirical_cdf_points: Per condition, ``(b, fraction of replicates with B <= b)``.
        ks_distance: Per condition, sup distance between the empirical and analytic CDF of ``B / S``.
        dkw_band: Per condition, DKW half-width at ``dkw_confidence``.
        calibration: Per condition, observed ``P(B <= EEB(beta | C) | C)``.
        equivalence_given_accept: Frequency of ``Equivalence`` among accepted replicates.
    """
    scenario: SimScenario
    reps: int
    condition_counts: Dict[str, int]
    outcome_counts: Dict[str, int]
    accept_fraction: float
    analytic_accept_probability: float
    empirical_cdf_points: Dict[str, List[Tuple[float, float]]]
    ks_distance: Dict[str, Optional[float]]
    dkw_band: Dict[str, Optional[float]]
    calibration: Dict[str, Optional[float]]
    equivalence_given_accept: Optional[float] = None


def _draw_block(s: SimScenario, dist: RefDist, index: int, count: int) -> Tuple[np.ndarray, np.ndarray]:
    rng = block_generator(s.seed, index)

    if s.mode == constants.GenerationMode.SUMMARY:
        se = np.full(count, s.population_se)
        delta_hat = s.delta + se * np.asarray(quantile(dist, open_uniforms(rng, (count,))))
        return delta_hat, se

    z = np.asarray(quantile(RefDist.normal(), open_uniforms(rng, (count, s.n1 + s.n2))))
    x1 = s.mu1 + s.sigma * z[:, :s.n1]
    x2 = s.mu2 + s.sigma * z[:, s.n1:]
    se = pooled_se_arrays(s.n1, s.n2, x1.std(axis=1, ddof=1), x2.std(axis=1, ddof=1))
    return x1.mean(axis=1) - x2.mean(axis=1), se


def unit_params(s: SimScenario, condition: constants.Condition, delta: Optional[float] = None) -> BDistParams:
    """
    Distribution of ``B / S`` for the scenario, ``delta`` in population standard-error units.
    """
    return BDistParams(
            delta=s.delta / s.population_se if delta is None else delta,
            se=1.0,
            dof=s.dof,
            alpha=s.alpha,
            condition=condition,
            dist_mode=s.dist_mode,
    )


def _unit_bound(s: SimScenario, condition: constants.Condition) -> float:
    return eeb(EebQuery(params=unit_params(s, condition, delta=0.0), beta=s.beta)).bound


def _studentized_cdf(s: SimScenario) -> Callable[[np.ndarray], np.ndarray]:
    """ CDF of ``delta_hat / S`` for raw normal observations. """
    noncentrality = s.delta / s.population_se
    if noncentrality == 0.0:
        central = RefDist.student_t(s.dof)
        return lambda x: np.asarray(cdf(central, x))
    return stats.nct(s.dof, noncentrality).cdf


def raw_unit_law(s: SimScenario) -> Tuple[UnitLaw, float]:
    """
    Exact law of ``B / S`` when replicates are drawn from raw observations.

    Returns:
        ``(law, accept_probability)`` where ``law(condition, x)`` is ``P(B / S <= x | condition)``
        and ``accept_probability`` is ``P(|T| <= h)``.
    """
    q, h = critical_values(RefDist.for_mode(s.dist_mode, s.dof), s.alpha)
    studentized = _studentized_cdf(s)

    def within(radius: np.ndarray) -> np.ndarray:
        radius = np.maximum(radius, 0.0)
        return studentized(radius) - studentized(-radius)

    accept = float(within(np.asarray(h)))

    def law(condition: constants.Condition, x: ArrayLike) -> np.ndarray:
        radius = np.asarray(x, dtype=float) - q
        if condition == constants.Condition.MARGINAL:
            value = within(radius)
        elif condition == constants.Condition.ACCEPT:
            value = within(np.minimum(radius, h)) / accept
        else:
            value = np.maximum(within(radius) - accept, 0.0) / (1 - accept)
        return np.clip(value, 0.0, 1.0)

    return law, accept


def unit_law(s: SimScenario) -> Tuple[UnitLaw, float]:
    """
    Law of ``B / S`` for the scenario's generation mode, with the stage-1 acceptance probability.
    """
    if s.mode == constants.GenerationMode.RAW:
        return raw_unit_law(s)

    def law(condition: constants.Condition, x: ArrayLike) -> np.ndarray:
        return np.asarray(cdf_b(unit_params(s, condition), x))

    return law, stage1_probability(unit_params(s, constants.Condition.ACCEPT))


def draw_replicates(s: SimScenario, workers: int = 1) -> ReplicateDraws:
    """
    Simulates every replicate of a scenario.

    Args:
        s: Scenario.
        workers: Threads used to draw blocks; results do not depend on it.
    Returns:
        ReplicateDraws with one entry per replicate.
    """
    dist = RefDist.for_mode(s.dist_mode, s.dof)
    block_list = list(blocks(s.reps, defaults.config['block_size']))

    def draw(block: Tuple[int, int]) -> Tuple[np.ndarray, np.ndarray]:
        index, count = block
        logger.debug('drawing block %d (%d replicates)', index, count)
        return _draw_block(s, dist, index, count)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            drawn = list(pool.map(draw, block_list))
    else:
        drawn = [draw(block) for block in block_list]

    delta_hat = np.concatenate([d for d, _ in drawn])
    se = np.concatenate([e for _, e in drawn])

    q, h = critical_values(dist, s.alpha)
    lower0, upper0 = delta_hat - h * se, delta_hat + h * se
    lower, upper = delta_hat - q * se, delta_hat + q * se
    b_value = np.maximum(np.abs(lower), np.abs(upper))
    reject = ~((lower0 <= 0) & (0 <= upper0))

    bound = se * np.where(
            reject,
            _unit_bound(s, constants.Condition.REJECT),
            _unit_bound(s, constants.Condition.ACCEPT),
    )
    contained = (-bound <= lower) & (upper <= bound)
    disjoint = (upper < -bound) | (lower > bound)

    return ReplicateDraws(
            scenario=s,
            delta_hat=delta_hat,
            se=se,
            lower0=lower0,
            upper0=upper0,
            lower=lower,
            upper=upper,
            b_value=b_value,
            reject=reject,
            bound=bound,
            stage2=stage2_codes(reject, contained, disjoint),
    )


def dkw_half_width(n: int, confidence: float) -> float:
    """ Dvoretzky-Kiefer-Wolfowitz band half-width for ``n`` samples. """
    return math.sqrt(math.log(2 / (1 - confidence)) / (2 * n))


def simulate(s: SimScenario, workers: int = 1) -> SimReport:
    """
    Runs a scenario and aggregates the replicates.

    The report is fully determined by the scenario, in particular by its seed.
    """
    draws = draw_replicates(s, workers)
    standardized = draws.standardized
    masks = {
        constants.Condition.MARGINAL: np.ones(len(draws), dtype=bool),
        constants.Condition.ACCEPT: ~draws.reject,
        constants.Condition.REJECT: draws.reject,
    }

    law, accept_probability = unit_law(s)

    grid = np.linspace(standardized.min(), standardized.max(), defaults.config['ecdf_points'])
    confidence = defaults.config['dkw_confidence']

    ecdf_points: Dict[str, List[Tuple[float, float]]] = {}
    ks_distance: Dict[str, Optional[float]] = {}
    dkw_band: Dict[str, Optional[float]] = {}
    calibration: Dict[str, Optional[float]] = {}
    for condition, mask in masks.items():
        sample = np.sort(standardized[mask])
        n = int(sample.size)
        if n == 0:
            ecdf_points[condition.value] = []
            ks_distance[condition.value] = dkw_band[condition.value] = calibration[condition.value] = None
            continue

        fractions = np.searchsorted(sample, grid, side='right') / n
        ecdf_points[condition.value] = [
            (float(b * s.population_se), float(f)) for b, f in zip(grid, fractions)
        ]
        ks_distance[condition.value] = float(stats.kstest(sample, lambda x: law(condition, x)).statistic)
        dkw_band[condition.value] = dkw_half_width(n, confidence)
        calibration[condition.value] = float(np.mean(sample <= _unit_bound(s, condition)))

    accepted = int(np.count_nonzero(~draws.reject))
    outcome_counts = {
        verdict.value: int(np.count_nonzero(draws.stage2 == code))
        for code, verdict in enumerate(_STAGE2_ORDER)
    }
    equivalence = outcome_counts[constants.Stage2Verdict.EQUIVALENCE.value]

    logger.info('simulated %d replicates (seed=%d): %d accepted', s.reps, s.seed, accepted)

    return SimReport(
            scenario=s,
            reps=s.reps,
            condition_counts={
                constants.Stage1Verdict.ACCEPT.value: accepted,
                constants.Stage1Verdict.REJECT.value: s.reps - accepted,
            },
            outcome_counts=outcome_counts,
            accept_fraction=accepted / s.reps,
            analytic_accept_probability=accept_probability,
            empirical_cdf_points=ecdf_points,
            ks_distance=ks_distance,
            dkw_band=dkw_band,
            calibration=calibration,
            equivalence_given_accept=equivalence / accepted if accepted else None,
    )


def sweep(scenarios: Sequence[SimScenario], workers: int = 1) -> List[SimReport]:
    """
    Runs several scenarios independently, preserving their order.

    Raises:
        DomainError: If ``scenarios`` is empty.
    """
    if not scenarios:
        raise errors.DomainError('A sweep needs at least one scenario.')
    return [simulate(s, workers) for s in scenarios]

"""
Report rendering for the command-line interface.

JSON reports carry full precision; text reports use ``display_decimals`` decimals.
"""
from __future__ import annotations

import io
import json
from typing import Any, Dict, List, Optional

import pandas as pd

from bvalue import defaults
from bvalue.dto import DTOMixin
from bvalue.eeb import EebResult
from bvalue.montecarlo import SimReport
from bvalue.procedure import ProcedureOutcome
from bvalue.two_sample import Interval, TwoSampleResult
from bvalue.types import CurvePoint, DistributionPoint


class ReportEnvelope(DTOMixin):
    """
    Self-describing report of one CLI invocation.

    Attributes:
        schema_version: Version of the report schema.
        tool: Tool name.
        version: Tool version.
        command: Subcommand.
        config: Effective options of the invocation.
        groups: Compared groups, ``g1 - g2``.
        result: Two-sample comparison.
        eeb: Empirical equivalence bound.
        minimum_beta: Smallest level whose EEB covers the observed B-value.
        curve: ``(beta, bound)`` pairs.
        distribution: ``(b, condition, cdf, pdf)`` rows of the analytic B-value laws, ``pdf`` for the marginal law only.
        procedure: Two-stage outcome.
        classic: Fixed-bound equivalence verdict.
        simulations: Monte Carlo reports, one per scenario.
    """
    schema_version: str = defaults.config['schema_version']
    tool: str
    version: str
    command: str
    config: Dict[str, Any]
    groups: Optional[List[str]] = None
    result: Optional[TwoSampleResult] = None
    eeb: Optional[EebResult] = None
    minimum_beta: Optional[float] = None
    curve: Optional[List[CurvePoint]] = None
    distribution: Optional[List[DistributionPoint]] = None
    procedure: Optional[ProcedureOutcome] = None
    classic: Optional[str] = None
    simulations: Optional[List[SimReport]] = None


def to_json(envelope: ReportEnvelope) -> str:
    return json.dumps(envelope.dto(), indent=2, sort_keys=True) + '\n'


def _frame_csv(frame: pd.DataFrame) -> str:
    buffer = io.StringIO()
    frame.to_csv(buffer, index=False)
    return buffer.getvalue()


def curve_csv(curve: List[CurvePoint]) -> str:
    """ Two columns, header ``beta,eeb``. """
    return _frame_csv(pd.DataFrame(curve, columns=['beta', 'eeb']))


def distribution_csv(rows: List[DistributionPoint]) -> str:
    """ Columns ``b,condition,cdf,pdf``, the density left empty for the conditional laws. """
    return _frame_csv(pd.DataFrame(rows, columns=['b', 'condition', 'cdf', 'pdf']))


def ecdf_csv(reports: List[SimReport]) -> str:
    """ Empirical CDF points of every report, columns ``scenario,condition,b,fraction``. """
    rows = [
        (i if report.scenario.label is None else report.scenario.label, condition, b, fraction)
        for i, report in enumerate(reports)
        for condition, points in report.empirical_cdf_points.items()
        for b, fraction in points
    ]
    return _frame_csv(pd.DataFrame(rows, columns=['scenario', 'condition', 'b', 'fraction']))


def _flat_row(envelope: ReportEnvelope) -> Dict[str, Any]:
    row: Dict[str, Any] = {'command': envelope.command}
    if envelope.groups:
        row['groups'] = ' - '.join(envelope.groups)
    if envelope.result is not None:
        r = envelope.result
        row.update(
                estimate=r.delta_hat,
                se=r.se,
                dof=r.dof,
                t=r.t_stat,
                p_value=r.p_value,
                ci_1m_alpha_lower=r.ci_1m_alpha.lower,
                ci_1m_alpha_upper=r.ci_1m_alpha.upper,
                ci_1m_2alpha_lower=r.ci_1m_2alpha.lower,
                ci_1m_2alpha_upper=r.ci_1m_2alpha.upper,
                b_value=r.b_value,
        )
    if envelope.eeb is not None:
        row.update(
                condition=envelope.eeb.condition,
                beta=envelope.eeb.beta,
                eeb=envelope.eeb.bound,
                achieved_cdf=envelope.eeb.achieved_cdf,
                solver=envelope.eeb.solver_used,
        )
    if envelope.minimum_beta is not None:
        row['minimum_beta'] = envelope.minimum_beta
    if envelope.procedure is not None:
        row.update(
                stage1=envelope.procedure.stage1,
                stage2=envelope.procedure.stage2,
                geometry=envelope.procedure.geometry,
                equivalence_bound=envelope.procedure.equivalence_bound,
        )
    if envelope.classic is not None:
        row['classic'] = envelope.classic
    return row


def to_csv(envelope: ReportEnvelope) -> str:
    """
    One-row CSV of the scalar fields, or the report's table when it holds one.
    """
    if envelope.curve is not None:
        return curve_csv(envelope.curve)
    if envelope.distribution is not None:
        return distribution_csv(envelope.distribution)
    if envelope.simulations is not None:
        return ecdf_csv(envelope.simulations)
    return _frame_csv(pd.DataFrame([_flat_row(envelope)]))


def _fmt(x: float) -> str:
    return f'{x:.{defaults.config["display_decimals"]}f}'


def _interval(ci: Interval) -> str:
    return f'[{_fmt(ci.lower)}, {_fmt(ci.upper)}]'


def _level(coverage: float) -> str:
    return f'{100 * coverage:g}% CI'


def _result_lines(r: TwoSampleResult) -> List[str]:
    return [
        f'{"estimate":<16}{_fmt(r.delta_hat)}',
        f'{"se":<16}{_fmt(r.se)}',
        f'{"dof":<16}{r.dof:g}',
        f'{r.dist_mode + "-statistic":<16}{_fmt(r.t_stat)}',
        f'{"p-value":<16}{_fmt(r.p_value)}',
        f'{_level(1 - r.alpha):<16}{_interval(r.ci_1m_alpha)}',
        f'{_level(1 - 2 * r.alpha):<16}{_interval(r.ci_1m_2alpha)}',
        f'{"B-value":<16}{_fmt(r.b_value)}',
    ]


def _eeb_lines(e: EebResult) -> List[str]:
    return [
        f'{"condition":<16}{e.condition}',
        f'{"beta":<16}{e.beta:g}',
        f'{"EEB":<16}{_fmt(e.bound)}',
        f'{"interval":<16}{_interval(e.interval)}',
        f'{"achieved cdf":<16}{_fmt(e.achieved_cdf)}',
        f'{"solver":<16}{e.solver_used}',
    ]


def _simulation_lines(report: SimReport) -> List[str]:
    s = report.scenario
    lines = [
        f'scenario {s.label or ""}'.rstrip(),
        f'{"groups":<16}n1={s.n1} n2={s.n2} mu1={s.mu1:g} mu2={s.mu2:g} sigma={s.sigma:g}',
        f'{"replicates":<16}{report.reps} (seed {s.seed}, {s.mode})',
        f'{"accept":<16}{_fmt(report.accept_fraction)} (analytic {_fmt(report.analytic_accept_probability)})',
    ]
    for verdict, count in report.outcome_counts.items():
        lines.append(f'{verdict:<24}{count}')
    for condition, ks in report.ks_distance.items():
        if ks is None:
            continue
        lines.append(
                f'{condition:<10}KS {_fmt(ks)}  DKW {_fmt(report.dkw_band[condition])}  '
                f'P(B <= EEB) {_fmt(report.calibration[condition])}',
        )
    return lines


def to_text(envelope: ReportEnvelope) -> str:
    """ Human readable report. """
    lines: List[str] = []
    if envelope.groups:
        lines.append(f'{envelope.groups[0]} - {envelope.groups[1]}')
    if envelope.result is not None:
        lines.extend(_result_lines(envelope.result))
    if envelope.curve is not None:
        return curve_csv(envelope.curve)
    if envelope.distribution is not None:
        return distribution_csv(envelope.distribution)
    if envelope.eeb is not None:
        lines.extend(_eeb_lines(envelope.eeb))
    if envelope.minimum_beta is not None:
        lines.append(f'{"minimum beta":<16}{_fmt(envelope.minimum_beta)}')
    if envelope.procedure is not None:
        lines.append(envelope.procedure.verdict_line)
    if envelope.classic is not None:
        lines.append(f'{"classic test":<16}{envelope.classic}')
    for report in envelope.simulations or []:
        lines.extend(_simulation_lines(report))
    return '\n'.join(lines) + '\n'

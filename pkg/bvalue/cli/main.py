"""
Entry point of the ``bvalue`` command.

Reports go to standard output or ``--output``, diagnostics to standard error.
"""
from __future__ import annotations

import argparse
import logging
import sys
from functools import wraps
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic.v1 import ValidationError

from bvalue import __version__, constants, defaults, errors
from bvalue.b_dist import BDistParams, cdf_b, pdf_b_marginal
from bvalue.cli import report
from bvalue.cli.dataset import group_values, load_dataset
from bvalue.cli.manpage import render_manpage
from bvalue.cli.parser import PROG, build_parser
from bvalue.eeb import EebQuery, eeb, eeb_curve, minimum_beta
from bvalue.logs import LIBRARY_LOGGER, get_logger
from bvalue.montecarlo import SimScenario, load_scenario, sweep
from bvalue.procedure import ProcedureConfig, run_classic_equivalence, run_two_stage
from bvalue.two_sample import SampleSummary, TwoSampleResult, analyze
from bvalue.types import DistributionPoint

logger = logging.getLogger(__name__)

_HIDDEN_OPTIONS = {'format', 'output', 'log_level', 'log_dir', 'ecdf_csv'}


def cli_error_handler(func) -> Callable:
    """
    Decorator that turns exceptions into exit codes.

    User errors print a one-line message on standard error and exit with 2,
    anything else logs the traceback and exits with 1.
    """

    @wraps(func)
    def error_handling_wrapper(*args, **kwargs) -> int:
        try:
            return func(*args, **kwargs)
        except (errors.BValueError, ValidationError, OSError) as e:
            print(f'{PROG}: error: {e}', file=sys.stderr)
            return constants.ExitCode.USER_ERROR
        except Exception:
            logger.exception('Internal error')
            return constants.ExitCode.INTERNAL_ERROR

    return error_handling_wrapper


def _parse_range(text: str, kind: str) -> Tuple[float, float, float]:
    try:
        start, stop, step = (float(part) for part in text.split(':'))
    except ValueError as e:
        raise errors.DomainError(f'A {kind} is given as START:STOP:STEP, got \'{text}\'.') from e
    return start, stop, step


def _inclusive(start: float, stop: float, step: float) -> np.ndarray:
    count = int(np.floor((stop - start) / step + 1e-9)) + 1
    return np.round(start + step * np.arange(count), 12)


def parse_curve(text: str) -> List[float]:
    """
    Levels of a ``START:STOP:STEP`` argument, both ends included.

    Raises:
        DomainError: If the argument is malformed or leaves (0, 1).
    """
    start, stop, step = _parse_range(text, 'curve')
    if not (0.0 < start <= stop < 1.0 and step > 0):
        raise errors.DomainError(f'Curve levels must satisfy 0 < START <= STOP < 1 and STEP > 0, got \'{text}\'.')
    return [float(level) for level in _inclusive(start, stop, step)]


def parse_grid(text: str) -> np.ndarray:
    """
    Evaluation points of a ``START:STOP:STEP`` argument, both ends included.

    Raises:
        DomainError: If the argument is malformed, not increasing or too fine.
    """
    start, stop, step = _parse_range(text, 'grid')
    if not (np.isfinite(start) and np.isfinite(stop) and start <= stop and step > 0):
        raise errors.DomainError(f'A grid must satisfy START <= STOP and STEP > 0, got \'{text}\'.')
    limit = defaults.config['max_grid_points']
    if (stop - start) / step >= limit:
        raise errors.DomainError(f'A grid has at most {limit} points, got \'{text}\'.')
    return _inclusive(start, stop, step)


def _config(args: argparse.Namespace) -> Dict[str, object]:
    return {key: value for key, value in sorted(vars(args).items()) if key not in _HIDDEN_OPTIONS}


def _envelope(args: argparse.Namespace, **fields) -> report.ReportEnvelope:
    return report.ReportEnvelope(
            tool=PROG,
            version=__version__,
            command=args.command,
            config=_config(args),
            **fields,
    )


def _summaries(args: argparse.Namespace) -> Tuple[SampleSummary, SampleSummary]:
    frame = load_dataset(args.data)
    first, second = args.groups
    return (
        SampleSummary.from_observations(group_values(frame, first), label=first),
        SampleSummary.from_observations(group_values(frame, second), label=second),
    )


def cmd_ttest(args: argparse.Namespace) -> report.ReportEnvelope:
    g1, g2 = _summaries(args)
    result = analyze(g1, g2, alpha=args.alpha, dist_mode=args.dist_mode)
    return _envelope(args, groups=list(args.groups), result=result)


def _observed(args: argparse.Namespace) -> TwoSampleResult:
    if args.se is not None or args.dof is not None:
        raise errors.DomainError('--groups cannot be combined with --se or --dof.')
    g1, g2 = _summaries(args)
    return analyze(g1, g2, alpha=args.alpha, dist_mode=args.dist_mode)


def _explicit_params(args: argparse.Namespace, **fields) -> BDistParams:
    if args.se is None or args.dof is None:
        raise errors.DomainError('Without --groups both --se and --dof are required.')
    return BDistParams(se=args.se, dof=args.dof, alpha=args.alpha, dist_mode=args.dist_mode, **fields)


def cmd_eeb(args: argparse.Namespace) -> report.ReportEnvelope:
    auto = args.condition == constants.Misc.CONDITION_AUTO.value
    fields: Dict[str, object] = {}

    if args.groups:
        result = _observed(args)
        params = BDistParams.from_result(result, condition=None if auto else constants.Condition(args.condition))
        fields.update(groups=list(args.groups), result=result, minimum_beta=minimum_beta(params, result.b_value))
    else:
        if auto:
            raise errors.DomainError('--condition auto needs the realized stage-1 verdict, pass --groups.')
        params = _explicit_params(args, condition=args.condition)

    if args.curve is not None:
        fields['curve'] = eeb_curve(params, parse_curve(args.curve), solver=args.solver)
    else:
        fields['eeb'] = eeb(EebQuery(params=params, beta=args.beta, solver=args.solver))

    return _envelope(args, **fields)


def cmd_procedure(args: argparse.Namespace) -> report.ReportEnvelope:
    g1, g2 = _summaries(args)
    cfg = ProcedureConfig(alpha=args.alpha, beta=args.beta, dist_mode=args.dist_mode, fixed_delta=args.delta)
    outcome = run_two_stage(g1, g2, cfg)

    classic: Optional[str] = None
    if args.delta is not None:
        classic = run_classic_equivalence(g1, g2, args.alpha, args.delta, args.dist_mode).value

    return _envelope(args, groups=list(args.groups), result=outcome.result, procedure=outcome, classic=classic)


def cmd_dist(args: argparse.Namespace) -> report.ReportEnvelope:
    grid = parse_grid(args.grid)
    fields: Dict[str, object] = {}

    if args.groups:
        result = _observed(args)
        params = BDistParams.from_result(result, condition=constants.Condition.MARGINAL, delta=args.delta)
        fields.update(groups=list(args.groups), result=result)
    else:
        params = _explicit_params(args, delta=args.delta)

    rows: List[DistributionPoint] = []
    for condition in constants.Condition:
        p = params.with_condition(condition)
        cdf_values = np.asarray(cdf_b(p, grid))
        if condition == constants.Condition.MARGINAL:
            densities: List[Optional[float]] = [float(d) for d in np.asarray(pdf_b_marginal(p, grid))]
        else:
            densities = [None] * grid.size
        rows.extend((float(b), condition.value, float(c), d) for b, c, d in zip(grid, cdf_values, densities))

    return _envelope(args, distribution=rows, **fields)


def _with_seed(s: SimScenario, seed: Optional[int]) -> SimScenario:
    if seed is None:
        return s
    return SimScenario(**{**s.dict(), 'seed': seed})


def cmd_simulate(args: argparse.Namespace) -> report.ReportEnvelope:
    if args.workers < 1:
        raise errors.DomainError(f'--workers must be at least 1, got {args.workers}.')

    scenarios = [_with_seed(load_scenario(path), args.seed) for path in args.scenarios]
    reports = sweep(scenarios, workers=args.workers)

    if args.ecdf_csv is not None:
        Path(args.ecdf_csv).write_text(report.ecdf_csv(reports))

    return _envelope(args, simulations=reports)


COMMANDS: Dict[str, Callable[[argparse.Namespace], report.ReportEnvelope]] = {
    'ttest': cmd_ttest,
    'eeb': cmd_eeb,
    'procedure': cmd_procedure,
    'dist': cmd_dist,
    'simulate': cmd_simulate,
}

_RENDERERS = {
    constants.OutputFormat.TEXT.value: report.to_text,
    constants.OutputFormat.JSON.value: report.to_json,
    constants.OutputFormat.CSV.value: report.to_csv,
}


@cli_error_handler
def run(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    if args.command == 'man':
        text = render_manpage(parser)
    else:
        envelope = COMMANDS[args.command](args)
        text = _RENDERERS[args.format](envelope)

    if args.output is not None:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return constants.ExitCode.OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Runs the command line ``argv`` and returns the exit code.
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    get_logger(LIBRARY_LOGGER, getattr(args, 'log_level', 'warning'), getattr(args, 'log_dir', None))
    logger.debug('%s %s', PROG, ' '.join(sys.argv[1:] if argv is None else argv))

    return int(run(args, parser))

"""
Argument parser of the ``bvalue`` command, also the source of the manual page.
"""
import argparse

from bvalue import __version__, constants, defaults

PROG = 'bvalue'
DESCRIPTION = 'B-values, empirical equivalence bounds and the two-stage test for comparing two means.'


def _common() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument(
            '--format',
            choices=[f.value for f in constants.OutputFormat],
            default=constants.OutputFormat.TEXT.value,
            help='Report format (default: text).',
    )
    parent.add_argument('--output', metavar='PATH', help='Write the report to PATH instead of standard output.')
    parent.add_argument(
            '--log-level',
            choices=['debug', 'info', 'warning'],
            default='warning',
            help='Diagnostics written to standard error (default: warning).',
    )
    parent.add_argument('--log-dir', metavar='DIR', help='Also write diagnostics to DIR/bvalue.log.')
    return parent


def _statistics() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument(
            '--alpha',
            type=float,
            default=defaults.config['alpha'],
            help=f'Significance level in (0, 0.5) (default: {defaults.config["alpha"]}).',
    )
    parent.add_argument(
            '--test',
            dest='dist_mode',
            choices=[m.value for m in constants.DistMode],
            default=defaults.config['dist_mode'].value,
            help='Student-t or normal reference distribution (default: t).',
    )
    return parent


def _data(groups_required: bool) -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument(
            '--data',
            metavar='FILE',
            default=constants.Misc.BUNDLED_DATASET.value,
            help='CSV file with the header "group,value", or plant_growth for the bundled dataset (default).',
    )
    parent.add_argument(
            '--groups',
            nargs=2,
            metavar=('G1', 'G2'),
            required=groups_required,
            help='Compare G1 - G2.',
    )
    return parent


def _beta() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument(
            '--beta',
            type=float,
            default=defaults.config['beta'],
            help=f'EEB level in (0, 1) (default: {defaults.config["beta"]}).',
    )
    return parent


def _standard_error() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument('--se', type=float, help='Standard error, instead of --groups.')
    parent.add_argument('--dof', type=float, help='Degrees of freedom, instead of --groups.')
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=PROG, description=DESCRIPTION)
    parser.add_argument('--version', action='version', version=f'{PROG} {__version__}')
    subparsers = parser.add_subparsers(dest='command', metavar='COMMAND', required=True)

    common = _common()
    statistics = _statistics()
    beta = _beta()
    standard_error = _standard_error()

    subparsers.add_parser(
            'ttest',
            parents=[common, statistics, _data(groups_required=True)],
            help='Two-sample test with both confidence intervals and the B-value.',
            description='Pooled-variance two-sample test of G1 - G2 with the 100(1-alpha)% and '
                        '100(1-2alpha)% confidence intervals and the B-value.',
    )

    eeb = subparsers.add_parser(
            'eeb',
            parents=[common, statistics, _data(groups_required=False), standard_error, beta],
            help='Empirical equivalence bound from data or from a standard error.',
            description='Empirical equivalence bound. With --groups the standard error and degrees of freedom '
                        'come from the data and --condition auto uses the realized stage-1 verdict; '
                        'with --se and --dof an explicit condition is required.',
    )
    eeb.add_argument(
            '--condition',
            choices=[constants.Misc.CONDITION_AUTO.value] + [c.value for c in constants.Condition],
            default=constants.Misc.CONDITION_AUTO.value,
            help='Conditioning event of the B-value distribution (default: auto).',
    )
    eeb.add_argument(
            '--solver',
            choices=[s.value for s in constants.Solver],
            default=constants.Solver.AUTO.value,
            help='EEB solver (default: auto).',
    )
    eeb.add_argument(
            '--curve',
            metavar='START:STOP:STEP',
            help='Emit the EEB at every level from START to STOP as CSV with the header "beta,eeb".',
    )

    procedure = subparsers.add_parser(
            'procedure',
            parents=[common, statistics, _data(groups_required=True), beta],
            help='Two-stage test: classic test followed by an equivalence test.',
            description='Two-stage test of G1 - G2. Stage 1 is the classic two-sided test, stage 2 compares the '
                        '100(1-2alpha)% interval with the conditional EEB or with the bound given by --delta.',
    )
    procedure.add_argument(
            '--delta',
            type=float,
            help='Fixed equivalence bound, replaces the EEB and adds the classic equivalence test to the report.',
    )

    dist = subparsers.add_parser(
            'dist',
            parents=[common, statistics, _data(groups_required=False), standard_error],
            help='Analytic distribution of the B-value on a grid.',
            description='Evaluates the marginal, accept and reject CDFs of the B-value, and the marginal density, '
                        'at every point of --grid. The standard error and degrees of freedom come from --groups '
                        'or from --se and --dof. Text and CSV output have the header "b,condition,cdf,pdf".',
    )
    dist.add_argument(
            '--grid',
            metavar='START:STOP:STEP',
            required=True,
            help='Evaluation points from START to STOP, both included.',
    )
    dist.add_argument(
            '--delta',
            type=float,
            default=0.0,
            help='True difference of means the distribution is evaluated at (default: 0).',
    )

    simulate = subparsers.add_parser(
            'simulate',
            parents=[common],
            help='Monte Carlo validation from scenario files.',
            description='Runs every scenario file and reports observed frequencies next to the analytic laws. '
                        'The CSV format emits the empirical CDF points.',
    )
    simulate.add_argument('scenarios', nargs='+', metavar='SCENARIO', help='Scenario file with key = value lines.')
    simulate.add_argument('--seed', type=int, help='Replaces the seed of every scenario.')
    simulate.add_argument('--workers', type=int, default=1, help='Threads drawing replicate blocks (default: 1).')
    simulate.add_argument('--ecdf-csv', metavar='PATH', help='Also write the empirical CDF points to PATH.')

    man = subparsers.add_parser('man', help='Print the manual page in roff format.')
    man.add_argument('--output', metavar='PATH', help='Write the manual page to PATH.')

    return parser

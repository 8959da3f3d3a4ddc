"""
================
Constants module
================

A central repository for the constants used throughout the library.
Can be used by both internal and external users, though external users might prefer to just use strings instead.
"""
from enum import Enum, IntEnum


class DistMode(str, Enum):
    """Reference distribution used for quantiles and p-values"""
    T = 't'
    Z = 'z'


class DistKind(str, Enum):
    """Reference distribution families"""
    STUDENT_T = 'StudentT'
    NORMAL = 'Normal'


class Condition(str, Enum):
    """Stage-1 test status a distribution of B is conditioned on"""
    MARGINAL = 'marginal'
    ACCEPT = 'accept'
    REJECT = 'reject'


class Stage1Verdict(str, Enum):
    """Verdict of the classic two-sided test"""
    ACCEPT = 'Accept'
    REJECT = 'Reject'


class Stage2Verdict(str, Enum):
    """Verdict of the data-driven equivalence stage"""
    EQUIVALENCE = 'Equivalence'
    INCONCLUSIVE = 'Inconclusive'
    DIFFERENCE_CONFIRMED = 'DifferenceConfirmed'
    FALSE_POSITIVE_CORRECTED = 'FalsePositiveCorrected'


class ClassicVerdict(str, Enum):
    """Verdict of the fixed-bound equivalence test"""
    EQUIVALENCE = 'Equivalence'
    NOT_ESTABLISHED = 'NotEstablished'


class Geometry(str, Enum):
    """Position of a confidence interval relative to an equivalence interval"""
    CONTAINED = 'Contained'
    OVERLAPPING = 'Overlapping'
    DISJOINT = 'Disjoint'


class Solver(str, Enum):
    """EEB solvers"""
    CLOSED_FORM = 'closed_form'
    BISECTION = 'bisection'
    AUTO = 'auto'


class GenerationMode(str, Enum):
    """Monte Carlo data generation modes"""
    RAW = 'raw'
    SUMMARY = 'summary'


class OutputFormat(str, Enum):
    """Report formats"""
    TEXT = 'text'
    JSON = 'json'
    CSV = 'csv'


class ExitCode(IntEnum):
    """Process exit codes"""
    OK = 0
    INTERNAL_ERROR = 1
    USER_ERROR = 2


class Misc(str, Enum):
    """Auxiliary constants"""
    BUNDLED_DATASET = 'plant_growth'
    CONDITION_AUTO = 'auto'

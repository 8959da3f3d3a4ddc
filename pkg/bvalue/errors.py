class BValueError(Exception):
    """ Base exception for bvalue exceptions. """


class DomainError(BValueError):
    """ Exception raised when an argument lies outside its mathematical domain. """


class DegenerateDataError(BValueError):
    """ Exception raised when both groups have zero variance. """


class ConvergenceError(BValueError):
    """ Exception raised when a root-finding bracket cannot be established. """


class UnsupportedOperationError(BValueError):
    pass


class DatasetError(BValueError):
    """ Exception raised when a dataset file is malformed or lacks a requested group. """


class ScenarioError(BValueError):
    """ Exception raised when a simulation scenario cannot be parsed or validated. """

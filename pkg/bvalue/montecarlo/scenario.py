"""
Simulation scenarios and their flat ``key = value`` file format.

Example scenario file::

    # null scenario of the worked example
    n1 = 10
    n2 = 10
    mu1 = 0.0
    mu2 = 0.0
    sigma = 1.0
    alpha = 0.05
    beta = 0.8
    reps = 100000
    seed = 20190603
"""
from __future__ import annotations

import configparser
import math
from pathlib import Path
from typing import Optional, Union

from pydantic.v1 import ValidationError, validator

from bvalue import constants, defaults, errors
from bvalue.dto import DTOMixin

_SECTION = 'scenario'


class SimScenario(DTOMixin):
    """
    Monte Carlo scenario.

    Attributes:
        n1: Size of group 1.
        n2: Size of group 2.
        mu1: Mean of group 1.
        mu2: Mean of group 2.
        sigma: Common standard deviation.
        alpha: Stage-1 significance level.
        beta: EEB level.
        reps: Number of replicates.
        seed: 64-bit seed.
        dist_mode: ``t`` or ``z``.
        mode: ``raw`` draws observations, ``summary`` keeps the standard error fixed and draws the estimate.
        label: Optional name echoed in reports.
    """
    n1: int
    n2: int
    mu1: float = 0.0
    mu2: float = 0.0
    sigma: float = 1.0
    alpha: float = defaults.config['alpha']
    beta: float = defaults.config['beta']
    reps: int
    seed: int
    dist_mode: constants.DistMode = defaults.config['dist_mode']
    mode: constants.GenerationMode = constants.GenerationMode.RAW
    label: Optional[str] = None

    @validator('n1', 'n2')
    def _check_n(cls, n):
        if n < 2:
            raise errors.DomainError(f'Group sizes must be at least 2, got {n}.')
        return n

    @validator('mu1', 'mu2')
    def _check_mu(cls, mu):
        if not math.isfinite(mu):
            raise errors.DomainError(f'Group means must be finite, got {mu}.')
        return mu

    @validator('sigma')
    def _check_sigma(cls, sigma):
        if not math.isfinite(sigma) or sigma <= 0:
            raise errors.DomainError(f'sigma must be positive, got {sigma}.')
        return sigma

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

    @validator('reps')
    def _check_reps(cls, reps):
        if reps < 1:
            raise errors.DomainError(f'reps must be at least 1, got {reps}.')
        return reps

    @validator('seed')
    def _check_seed(cls, seed):
        if not 0 <= seed < 2 ** 64:
            raise errors.DomainError(f'seed must be a 64-bit unsigned integer, got {seed}.')
        return seed

    @property
    def delta(self) -> float:
        return self.mu1 - self.mu2

    @property
    def dof(self) -> float:
        return float(self.n1 + self.n2 - 2)

    @property
    def population_se(self) -> float:
        """ ``sigma * sqrt(1/n1 + 1/n2)`` """
        return self.sigma * math.sqrt(1 / self.n1 + 1 / self.n2)


def parse_scenario(text: str) -> SimScenario:
    """
    Parses flat ``key = value`` scenario text.

    Raises:
        ScenarioError: If the text cannot be parsed or the scenario is invalid.
    """
    parser = configparser.ConfigParser(inline_comment_prefixes=('#',))
    try:
        parser.read_string(f'[{_SECTION}]\n{text}')
    except configparser.Error as e:
        raise errors.ScenarioError(f'Malformed scenario file: {e}') from e

    entries = dict(parser[_SECTION])
    unknown = set(entries) - set(SimScenario.__fields__)
    if unknown:
        raise errors.ScenarioError(f'Unknown scenario keys: {", ".join(sorted(unknown))}.')

    try:
        return SimScenario(**entries)
    except (ValidationError, errors.DomainError) as e:
        raise errors.ScenarioError(f'Invalid scenario: {e}') from e


def load_scenario(path: Union[str, Path]) -> SimScenario:
    """
    Reads a scenario file, see :py:func:`parse_scenario`.
    """
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise errors.ScenarioError(f'Cannot read scenario file \'{path}\': {e}') from e
    return parse_scenario(text)

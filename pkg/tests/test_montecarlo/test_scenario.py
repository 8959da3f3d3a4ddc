import math
from contextlib import nullcontext

import pytest

from bvalue import constants, errors
from bvalue.montecarlo import SimScenario, load_scenario, parse_scenario

SCENARIO_TEXT = """
# null scenario
n1 = 10
n2 = 10
mu1 = 0.0   # group one
mu2 = 0.0
sigma = 1.0
alpha = 0.05
beta = 0.8
reps = 100000
seed = 20190603
mode = summary
"""


class TestSimScenario:
    @pytest.mark.parametrize('kwargs, expectation', [
        ({}, nullcontext()),
        ({'n1': 1}, pytest.raises(errors.DomainError)),
        ({'sigma': 0.0}, pytest.raises(errors.DomainError)),
        ({'alpha': 0.6}, pytest.raises(errors.DomainError)),
        ({'beta': 1.0}, pytest.raises(errors.DomainError)),
        ({'reps': 0}, pytest.raises(errors.DomainError)),
        ({'seed': -1}, pytest.raises(errors.DomainError)),
        ({'seed': 2 ** 64}, pytest.raises(errors.DomainError)),
        ({'mu1': float('inf')}, pytest.raises(errors.DomainError)),
    ])
    def test_validation(self, kwargs, expectation):
        with expectation:
            SimScenario(**{'n1': 10, 'n2': 10, 'reps': 10, 'seed': 1, **kwargs})

    def test_derived(self):
        s = SimScenario(n1=5, n2=20, mu1=1.5, mu2=0.5, sigma=2.0, reps=10, seed=1)
        assert s.delta == 1.0
        assert s.dof == 23
        assert s.population_se == pytest.approx(2.0 * math.sqrt(1 / 5 + 1 / 20))


class TestParse:
    def test_parse(self):
        s = parse_scenario(SCENARIO_TEXT)
        assert (s.n1, s.n2, s.reps, s.seed) == (10, 10, 100_000, 20190603)
        assert s.mu1 == 0.0
        assert s.mode == constants.GenerationMode.SUMMARY
        assert s.dist_mode == constants.DistMode.T

    @pytest.mark.parametrize('text', [
        'n1 = 10\nn2 = 10\nreps = 10\nseed = 1\nsamples = 3',
        'n1 = 1\nn2 = 10\nreps = 10\nseed = 1',
        'n1 = ten\nn2 = 10\nreps = 10\nseed = 1',
        'n1 = 10\nn2 = 10\nreps = 10',
        'n1 = 10\nn1 = 12\nn2 = 10\nreps = 10\nseed = 1',
        'this is not a scenario',
    ])
    def test_invalid(self, text):
        with pytest.raises(errors.ScenarioError):
            parse_scenario(text)

    def test_load(self, tmp_path):
        path = tmp_path / 'null.cfg'
        path.write_text(SCENARIO_TEXT)
        assert load_scenario(path) == parse_scenario(SCENARIO_TEXT)

    def test_missing_file(self, tmp_path):
        with pytest.raises(errors.ScenarioError):
            load_scenario(tmp_path / 'missing.cfg')

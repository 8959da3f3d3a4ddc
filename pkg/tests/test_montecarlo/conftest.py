import pytest

from bvalue.montecarlo import SimScenario, draw_replicates, simulate

SEED = 20190603


@pytest.fixture(scope='session')
def null_scenario():
    return SimScenario(n1=10, n2=10, alpha=0.05, beta=0.8, reps=100_000, seed=SEED)


@pytest.fixture(scope='session')
def null_report(null_scenario):
    return simulate(null_scenario, workers=2)


@pytest.fixture(scope='session')
def small_draws():
    return draw_replicates(SimScenario(n1=8, n2=12, mu1=0.4, sigma=1.5, reps=500, seed=SEED))

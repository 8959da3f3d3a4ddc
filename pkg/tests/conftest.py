import logging

import pytest

from bvalue import constants
from bvalue.cli.dataset import group_values, load_dataset
from bvalue.two_sample import SampleSummary

PLANT_GROWTH_GROUPS = ('ctrl', 'trt1', 'trt2')


@pytest.fixture(scope='session')
def plant_growth():
    return load_dataset(constants.Misc.BUNDLED_DATASET.value)


@pytest.fixture
def ctrl(plant_growth):
    return group_values(plant_growth, 'ctrl')


@pytest.fixture
def trt1(plant_growth):
    return group_values(plant_growth, 'trt1')


@pytest.fixture
def trt2(plant_growth):
    return group_values(plant_growth, 'trt2')


@pytest.fixture
def summaries(plant_growth):
    return {
        label: SampleSummary.from_observations(group_values(plant_growth, label), label=label)
        for label in PLANT_GROWTH_GROUPS
    }


@pytest.fixture(autouse=True)
def reset_library_logger():
    yield
    logger = logging.getLogger('bvalue')
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()
    logger.setLevel(logging.NOTSET)
    logger.propagate = True


@pytest.fixture
def simulated_example():
    # the printed intervals are centered near 0.2515, not at the printed estimate
    return {
        'delta_hat': 0.262,
        'se': 0.325,
        'ci_1m_alpha': (-0.431, 0.934),
        'ci_1m_2alpha': (-0.311, 0.815),
    }

"""
Monte Carlo validation of the B-value distributions and of the two-stage procedure.
"""
from bvalue.montecarlo.harness import (
    ReplicateDraws,
    SimReport,
    draw_replicates,
    dkw_half_width,
    raw_unit_law,
    simulate,
    sweep,
    unit_law,
    unit_params,
)
from bvalue.montecarlo.scenario import SimScenario, load_scenario, parse_scenario

__all__ = [
    'ReplicateDraws',
    'SimReport',
    'SimScenario',
    'draw_replicates',
    'dkw_half_width',
    'load_scenario',
    'parse_scenario',
    'raw_unit_law',
    'simulate',
    'sweep',
    'unit_law',
    'unit_params',
]

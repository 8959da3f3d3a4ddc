from bvalue import constants

default_config = {
    'alpha': 0.05,
    'beta': 0.8,
    'dist_mode': constants.DistMode.T,
    'display_decimals': 6,
    # EEB solvers
    'bisection_tolerance': 1e-9,
    'bracket_limit': 1e6,
    'beta_clamp': 1e-6,
    # special functions
    'newton_steps': 4,
    # Monte Carlo harness
    'block_size': 8192,
    'dkw_confidence': 0.99,
    'ecdf_points': 101,
    # reports
    'max_grid_points': 100_000,
    'schema_version': '1',
}

config = default_config

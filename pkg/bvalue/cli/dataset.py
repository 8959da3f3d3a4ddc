"""
Dataset ingestion.

Datasets are comma-separated files with the header ``group,value``, one observation per row.
The name ``plant_growth`` refers to the dataset bundled with the package.
"""
from __future__ import annotations

import logging
from importlib import resources
from pathlib import Path
from typing import Union

import numpy as np
import pandas as pd

from bvalue import constants, errors

logger = logging.getLogger(__name__)

COLUMNS = ['group', 'value']


def _read(source: Union[str, Path]) -> pd.DataFrame:
    if str(source) == constants.Misc.BUNDLED_DATASET.value:
        with resources.files('bvalue.data').joinpath('plant_growth.csv').open('r') as fh:
            return pd.read_csv(fh, dtype={'group': str})
    return pd.read_csv(source, dtype={'group': str})


def load_dataset(source: Union[str, Path]) -> pd.DataFrame:
    """
    Reads and validates a dataset.

    Args:
        source: Path to a CSV file, or ``plant_growth`` for the bundled dataset.
    Returns:
        DataFrame with a string ``group`` column and a float ``value`` column.
    Raises:
        DatasetError: If the file is malformed, has fewer than two groups or non-finite values.
    """
    try:
        frame = _read(source)
    except FileNotFoundError as e:
        raise errors.DatasetError(f'Dataset \'{source}\' does not exist.') from e
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
        raise errors.DatasetError(f'Malformed dataset \'{source}\': {e}') from e

    if list(frame.columns) != COLUMNS:
        raise errors.DatasetError(
                f'Dataset \'{source}\' must have the header \'group,value\', got \'{",".join(map(str, frame.columns))}\'.',
        )

    values = pd.to_numeric(frame['value'], errors='coerce')
    if not np.all(np.isfinite(values.to_numpy(dtype=float))):
        raise errors.DatasetError(f'Dataset \'{source}\' contains missing or non-finite values.')
    if frame['group'].isna().any():
        raise errors.DatasetError(f'Dataset \'{source}\' contains rows without a group label.')

    frame = frame.assign(value=values.astype(float))
    if frame['group'].nunique() < 2:
        raise errors.DatasetError(f'Dataset \'{source}\' needs at least two groups.')

    logger.info('loaded %d rows in %d groups from %s', len(frame), frame['group'].nunique(), source)
    return frame


def group_values(frame: pd.DataFrame, label: str) -> np.ndarray:
    """
    Observations of one group.

    Raises:
        DatasetError: If the group is absent or has fewer than two rows.
    """
    values = frame.loc[frame['group'] == label, 'value'].to_numpy(dtype=float)
    if values.size == 0:
        known = ', '.join(sorted(frame['group'].unique()))
        raise errors.DatasetError(f'Group \'{label}\' not found, available groups: {known}.')
    if values.size < 2:
        raise errors.DatasetError(f'Group \'{label}\' has {values.size} row, at least 2 are needed.')
    return values

"""
Counter-based random streams.

Replicates are processed in fixed-size blocks and every block draws from its own
Philox stream keyed by ``(seed, block index)``, so results depend only on the seed and
never on how blocks are distributed over workers.
"""
from typing import Iterator, Tuple

import numpy as np

# (k + 0.5) / 2**52 is exact for every 52-bit k, keeping uniforms strictly inside (0, 1)
_MANTISSA = 2 ** 52


def block_generator(seed: int, block_index: int) -> np.random.Generator:
    sequence = np.random.SeedSequence(entropy=seed, spawn_key=(block_index,))
    return np.random.Generator(np.random.Philox(sequence))


def open_uniforms(rng: np.random.Generator, shape: Tuple[int, ...]) -> np.ndarray:
    """ Uniform variates on the open interval (0, 1). """
    return (rng.integers(0, _MANTISSA, size=shape, dtype=np.int64) + 0.5) / _MANTISSA


def blocks(reps: int, block_size: int) -> Iterator[Tuple[int, int]]:
    """ Yields ``(block index, replicate count)`` covering ``reps`` replicates. """
    for index, start in enumerate(range(0, reps, block_size)):
        yield index, min(block_size, reps - start)

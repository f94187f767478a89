"""Counter-based random streams for the sampling operations.

Sample vectors are drawn in fixed blocks of ``BLOCK`` rows.  Block ``b`` of a
run comes from its own Philox stream keyed by (seed, b), so draw number j is
a pure function of (seed, j): which worker produces it, and how many samples
the run requests in total, cannot change it.  BLOCK is a frozen constant and
part of the stream definition.
"""

from __future__ import annotations

from typing import Iterator, Tuple

import numpy as np
from numpy.random import Generator, Philox

BLOCK = 4096
_MASK64 = (1 << 64) - 1


def _stream(seed: int, block: int) -> Generator:
    # Each block owns counter range [block << 128, (block + 1) << 128).
    return Generator(Philox(key=seed & _MASK64, counter=block << 128))


def sign_blocks(seed: int, n: int, samples: int) -> Iterator[Tuple[int, np.ndarray]]:
    """Yield (start_index, block) of +-1 rows covering ``samples`` draws."""
    for block in range((samples + BLOCK - 1) // BLOCK):
        bits = _stream(seed, block).integers(0, 2, size=(BLOCK, n))
        signs = 1.0 - 2.0 * bits
        start = block * BLOCK
        yield start, signs[: min(BLOCK, samples - start)]


def phase_blocks(seed: int, n: int, samples: int) -> Iterator[Tuple[int, np.ndarray]]:
    """Yield (start_index, block) of unit-modulus complex rows."""
    for block in range((samples + BLOCK - 1) // BLOCK):
        theta = _stream(seed, block).random(size=(BLOCK, n))
        coords = np.exp(2j * np.pi * theta)
        start = block * BLOCK
        yield start, coords[: min(BLOCK, samples - start)]

"""Deterministic random streams.

Every random draw in the package comes from a Philox counter-based generator
keyed by (seed, stream id). Stream ids partition the key space so that
subsystems can never collide:

  0..3        data-generator roles (x innovations, y innovations, scalings, noise)
  2^32 + b    permutation index b inside a permutation test
  2^33 + r    replication index r inside a null-table build

Given (seed, stream id), the draw sequence is a pure function of the key, so
results are reproducible regardless of thread scheduling or call order.
"""

from __future__ import annotations

import numpy as np

ROLE_X = 0
ROLE_Y = 1
ROLE_SCALE = 2
ROLE_NOISE = 3

PERMUTATION_STREAM_BASE = 1 << 32
NULL_TABLE_STREAM_BASE = 1 << 33


def stream(seed: int, stream_id: int) -> np.random.Generator:
    """Generator for the (seed, stream_id) key."""
    if seed < 0:
        raise ValueError(f"seed must be a nonnegative integer, got {seed}")
    key = np.array([seed, stream_id], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def uniform_open(gen: np.random.Generator, size: int) -> np.ndarray:
    """Uniform draws on the open interval (0, 1).

    Values are (k + 0.5) * 2^-52 for a 52-bit integer k: exactly representable,
    never 0 or 1, so inverse-CDF transforms cannot produce infinities.
    """
    k = gen.integers(0, 1 << 52, size=size, dtype=np.uint64)
    return (k.astype(np.float64) + 0.5) * 2.0**-52


def permutation(n: int, seed: int, stream_id: int) -> np.ndarray:
    """Uniform random permutation of range(n) from the keyed stream."""
    return stream(seed, stream_id).permutation(n)

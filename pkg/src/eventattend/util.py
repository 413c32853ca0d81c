"""Shared numeric helpers: seeded RNG streams and stable logistic functions."""

from __future__ import annotations

import numpy as np


def rng_from(seed: int, *stream: int) -> np.random.Generator:
    """Generator for the stream (seed, *stream), independent of sibling streams.

    Components that run side by side derive their generators from one master
    seed plus distinct stream tags, so adding a component never shifts the
    random numbers another one sees.
    """
    return np.random.default_rng(np.random.SeedSequence((int(seed), *map(int, stream))))


def derive_seed(seed: int, *stream: int) -> int:
    """Stable 32-bit sub-seed for components that take a plain integer seed."""
    return int(np.random.SeedSequence((int(seed), *map(int, stream))).generate_state(1)[0])


def sigmoid(x):
    x = np.clip(np.asarray(x, dtype=np.float64), -60.0, 60.0)
    return 1.0 / (1.0 + np.exp(-x))


def log_sigmoid(x):
    """log(sigmoid(x)), computed without overflow for large negative x."""
    x = np.asarray(x, dtype=np.float64)
    return np.where(x >= 0, 0.0, x) - np.log1p(np.exp(-np.abs(x)))

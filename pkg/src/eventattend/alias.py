"""O(1) sampling from a fixed discrete distribution via Vose's alias method."""

from __future__ import annotations

import numpy as np


class AliasTable:
    """Alias table for a nonnegative weight vector.

    Sampling costs one uniform index draw plus one coin flip. The table is a
    lossless encoding of the normalized weights: `implied_distribution`
    reconstructs them exactly (up to float rounding), which is what the tests
    check instead of sampling.
    """

    __slots__ = ("prob", "alias")

    def __init__(self, weights):
        w = np.asarray(weights, dtype=np.float64)
        if w.ndim != 1 or w.size == 0:
            raise ValueError("weights must be a nonempty 1-D sequence")
        if not np.all(np.isfinite(w)) or np.any(w < 0):
            raise ValueError("weights must be finite and nonnegative")
        total = w.sum()
        if total <= 0:
            raise ValueError("at least one weight must be positive")
        n = w.size
        scaled = w * (n / total)
        prob = np.ones(n, dtype=np.float64)
        alias = np.arange(n, dtype=np.int64)
        small = [i for i in range(n) if scaled[i] < 1.0]
        large = [i for i in range(n) if scaled[i] >= 1.0]
        while small and large:
            s = small.pop()
            g = large.pop()
            prob[s] = scaled[s]
            alias[s] = g
            scaled[g] -= 1.0 - scaled[s]
            (small if scaled[g] < 1.0 else large).append(g)
        # leftovers sit within rounding of 1; they keep themselves as alias
        self.prob = prob
        self.alias = alias

    def __len__(self) -> int:
        return len(self.prob)

    def sample(self, rng: np.random.Generator) -> int:
        i = int(rng.integers(len(self.prob)))
        if rng.random() < self.prob[i]:
            return i
        return int(self.alias[i])

    def sample_array(self, rng: np.random.Generator, size) -> np.ndarray:
        idx = rng.integers(0, len(self.prob), size=size)
        keep = rng.random(size=size) < self.prob[idx]
        return np.where(keep, idx, self.alias[idx])

    def implied_distribution(self) -> np.ndarray:
        """Exact distribution the table samples from, reconstructed analytically."""
        n = len(self.prob)
        dist = self.prob / n
        np.add.at(dist, self.alias, (1.0 - self.prob) / n)
        return dist

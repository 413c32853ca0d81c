"""Skip-gram with negative sampling (SGNS) over random-walk corpora."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .alias import AliasTable
from .util import log_sigmoid, rng_from, sigmoid

# Pairs are consumed in fixed-size blocks with gradients accumulated per block
# (scatter-add), which keeps training vectorized and bit-reproducible.
_BLOCK = 256


@dataclass(frozen=True)
class SgnsConfig:
    dim: int = 128
    window: int = 4
    negatives: int = 5
    epochs: int = 5
    learning_rate: float = 0.025
    min_learning_rate: float = 1e-4
    seed: int = 0

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be >= 1")
        if self.window < 1:
            raise ValueError("window must be >= 1")
        if self.negatives < 1:
            raise ValueError("negatives must be >= 1")
        if self.epochs < 1:
            raise ValueError("epochs must be >= 1")
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be positive")


def extract_pairs(corpus: list[list[int]], window: int) -> tuple[np.ndarray, np.ndarray]:
    """All (center, context) pairs within `window` positions, both directions."""
    centers: list[np.ndarray] = []
    contexts: list[np.ndarray] = []
    for walk in corpus:
        w = np.asarray(walk, dtype=np.int64)
        for off in range(1, min(window, len(w) - 1) + 1):
            left, right = w[:-off], w[off:]
            centers.append(left)
            contexts.append(right)
            centers.append(right)
            contexts.append(left)
    if not centers:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty.copy()
    return np.concatenate(centers), np.concatenate(contexts)


def noise_distribution(corpus: list[list[int]], node_count: int, power: float = 0.75) -> np.ndarray:
    """Unigram corpus frequencies raised to `power`, normalized."""
    counts = np.zeros(node_count, dtype=np.float64)
    for walk in corpus:
        np.add.at(counts, walk, 1.0)
    weights = counts**power
    total = weights.sum()
    if total <= 0:
        raise ValueError("corpus is empty")
    return weights / total


def sgns_objective(
    target: np.ndarray,
    context: np.ndarray,
    center: int,
    ctx: int,
    negatives,
) -> tuple[float, np.ndarray, np.ndarray, np.ndarray]:
    """Loss and exact gradients for one (center, context, negatives) sample.

    loss = -log s(t_center . c_ctx) - sum_n log s(-t_center . c_n)

    Returns (loss, grad wrt target[center], grad wrt context[ctx],
    per-negative grads wrt context[n]). Duplicate negatives each contribute
    their own term.
    """
    negatives = np.asarray(list(negatives), dtype=np.int64)
    phi = target[center]
    psi_pos = context[ctx]
    psi_neg = context[negatives]
    x_pos = float(phi @ psi_pos)
    x_neg = psi_neg @ phi
    loss = -float(log_sigmoid(x_pos)) - float(np.sum(log_sigmoid(-x_neg)))
    g_pos = sigmoid(x_pos) - 1.0
    g_neg = sigmoid(x_neg)
    grad_center = g_pos * psi_pos + g_neg @ psi_neg
    grad_context = g_pos * phi
    grad_negatives = g_neg[:, None] * phi[None, :]
    return loss, grad_center, grad_context, grad_negatives


def train_sgns(
    corpus: list[list[int]],
    config: SgnsConfig,
    node_count: int,
    *,
    initial: np.ndarray | None = None,
    epochs: int | None = None,
    learning_rate: float | None = None,
    seed: int | None = None,
) -> np.ndarray:
    """Train target embeddings on a walk corpus; returns a node_count x dim matrix.

    Target rows start uniform in [-0.5/dim, 0.5/dim] (or at `initial`), context
    rows at zero. Negatives come from the unigram^0.75 corpus distribution;
    draws that collide with the positive context are skipped. The learning rate
    decays linearly to min_learning_rate over all blocks. Nodes that never
    occur as a center keep their initial rows.
    """
    if not corpus:
        raise ValueError("corpus is empty")
    epochs = config.epochs if epochs is None else epochs
    lr0 = config.learning_rate if learning_rate is None else learning_rate
    seed = config.seed if seed is None else seed
    d = config.dim
    hi = max((max(w) for w in corpus if w), default=-1)
    if hi >= node_count:
        raise ValueError(f"corpus node id {hi} >= node_count {node_count}")

    rng = rng_from(seed)
    if initial is not None:
        if initial.shape != (node_count, d):
            raise ValueError(f"initial shape {initial.shape} != {(node_count, d)}")
        target = np.array(initial, dtype=np.float64)
    else:
        target = rng.uniform(-0.5 / d, 0.5 / d, size=(node_count, d))
    context = np.zeros((node_count, d), dtype=np.float64)

    centers, contexts = extract_pairs(corpus, config.window)
    n_pairs = len(centers)
    if n_pairs == 0:
        return target
    noise = AliasTable(noise_distribution(corpus, node_count))

    blocks_per_epoch = (n_pairs + _BLOCK - 1) // _BLOCK
    total_blocks = epochs * blocks_per_epoch
    done = 0
    for _ in range(epochs):
        order = rng.permutation(n_pairs)
        for start in range(0, n_pairs, _BLOCK):
            lr = max(config.min_learning_rate, lr0 * (1.0 - done / total_blocks))
            done += 1
            idx = order[start : start + _BLOCK]
            c = centers[idx]
            o = contexts[idx]
            negs = noise.sample_array(rng, (len(idx), config.negatives))
            live = negs != o[:, None]

            phi = target[c]
            psi_pos = context[o]
            psi_neg = context[negs]
            g_pos = sigmoid(np.einsum("bd,bd->b", phi, psi_pos)) - 1.0
            g_neg = sigmoid(np.einsum("bd,bnd->bn", phi, psi_neg)) * live

            grad_phi = g_pos[:, None] * psi_pos + np.einsum("bn,bnd->bd", g_neg, psi_neg)
            np.add.at(target, c, -lr * grad_phi)
            np.add.at(context, o, -lr * (g_pos[:, None] * phi))
            np.add.at(
                context,
                negs.reshape(-1),
                (-lr * (g_neg[:, :, None] * phi[:, None, :])).reshape(-1, d),
            )
    return target

"""Poincare-ball embeddings trained with Riemannian-rescaled SGD."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph
from .util import rng_from

BALL_EPS = 1e-5
# projection lands strictly inside the 1 - eps shell even after rounding
_PROJECT_MARGIN = 1.0 - 1e-12
# floor for sqrt(gamma^2 - 1); only reached when two points coincide
_GRAD_FLOOR = 1e-15


@dataclass(frozen=True)
class PoincareConfig:
    dim: int = 128
    epochs: int = 50
    learning_rate: float = 0.01
    negatives: int = 10
    burn_in: int = 10
    burn_in_factor: float = 0.1
    ball_eps: float = BALL_EPS
    seed: int = 0

    def __post_init__(self):
        if self.dim < 2:
            raise ValueError("dim must be >= 2")
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be positive")
        if self.negatives < 1:
            raise ValueError("negatives must be >= 1")
        if self.epochs < 1:
            raise ValueError("epochs must be >= 1")
        if self.burn_in < 0:
            raise ValueError("burn_in must be >= 0")
        if not 0 < self.ball_eps < 1:
            raise ValueError("ball_eps must lie in (0, 1)")


def project_ball(x: np.ndarray, ball_eps: float = BALL_EPS) -> np.ndarray:
    """Rescale x onto the 1 - ball_eps shell when it lies on or outside it."""
    x = np.asarray(x, dtype=np.float64)
    norm = float(np.linalg.norm(x))
    limit = 1.0 - ball_eps
    if norm <= limit:
        return x.copy()
    return x * (limit * _PROJECT_MARGIN / norm)


def _check_inside(point: np.ndarray, ball_eps: float, name: str) -> np.ndarray:
    point = np.asarray(point, dtype=np.float64)
    if float(np.linalg.norm(point)) >= 1.0 - ball_eps:
        raise ValueError(f"{name} lies on or outside the ball (norm >= {1.0 - ball_eps})")
    return point


def poincare_distance(u, v, ball_eps: float = BALL_EPS) -> float:
    """arcosh(1 + 2|u-v|^2 / ((1-|u|^2)(1-|v|^2))) for points inside the ball."""
    u = _check_inside(u, ball_eps, "u")
    v = _check_inside(v, ball_eps, "v")
    alpha = 1.0 - float(u @ u)
    beta = 1.0 - float(v @ v)
    diff = u - v
    gamma = 1.0 + 2.0 * float(diff @ diff) / (alpha * beta)
    return float(np.arccosh(gamma))


def riemannian_scale(euclidean_grad: np.ndarray, theta: np.ndarray) -> np.ndarray:
    """Euclidean gradient rescaled by ((1 - |theta|^2)^2) / 4."""
    theta = np.asarray(theta, dtype=np.float64)
    factor = (1.0 - float(theta @ theta)) ** 2 / 4.0
    return np.asarray(euclidean_grad, dtype=np.float64) * factor


def _distance_grad(u: np.ndarray, c: np.ndarray, alpha: float, beta: np.ndarray,
                   gamma: np.ndarray) -> np.ndarray:
    """d(dist)/du for one point u against candidate rows c, all inside the ball."""
    denom = beta * np.sqrt(np.maximum(gamma * gamma - 1.0, 0.0))
    denom = np.maximum(denom, _GRAD_FLOOR)
    sq_c = np.einsum("nd,nd->n", c, c)
    dot = c @ u
    coeff = (sq_c - 2.0 * dot + 1.0) / (alpha * alpha)
    return (4.0 / denom)[:, None] * (coeff[:, None] * u[None, :] - c / alpha)


def poincare_pair_loss(
    vectors: np.ndarray,
    u_idx: int,
    pos_idx: int,
    neg_idx,
) -> tuple[float, np.ndarray, np.ndarray]:
    """Softmax ranking loss for one edge (u, pos) against sampled negatives.

    loss = -log( exp(-d(u, pos)) / sum over {pos} + negatives of exp(-d(u, .)) )

    Returns (loss, euclidean grad wrt vectors[u_idx], euclidean grads wrt the
    candidate rows [pos] + negatives in order). Gradients are the closed-form
    chain rule through the distance, before any Riemannian rescaling.
    """
    cand_idx = np.concatenate(([pos_idx], np.asarray(list(neg_idx), dtype=np.int64)))
    u = vectors[u_idx]
    cands = vectors[cand_idx]
    alpha = 1.0 - float(u @ u)
    beta = 1.0 - np.einsum("nd,nd->n", cands, cands)
    diff = u[None, :] - cands
    sqdist = np.einsum("nd,nd->n", diff, diff)
    gamma = 1.0 + 2.0 * sqdist / (alpha * beta)
    dists = np.arccosh(gamma)

    shifted = -dists + dists.min()
    exps = np.exp(shifted)
    total = exps.sum()
    loss = float(dists[0] + np.log(total) - dists.min())
    coef = -exps / total
    coef[0] += 1.0

    dd_du = _distance_grad(u, cands, alpha, beta, gamma)
    grad_u = coef @ dd_du
    # roles swap for the candidate-side gradient
    dd_dc = np.empty_like(cands)
    for j in range(len(cand_idx)):
        dd_dc[j] = _distance_grad(cands[j], u[None, :], float(beta[j]),
                                  np.array([alpha]), gamma[j : j + 1])[0]
    grad_cands = coef[:, None] * dd_dc
    return loss, grad_u, grad_cands


def train_poincare(graph: Graph, config: PoincareConfig, return_losses: bool = False):
    """Embed graph nodes in the Poincare ball; every row stays strictly inside.

    Each directed edge (u, v) is a positive pair ranked against `negatives`
    uniformly sampled non-neighbors of u. Updates rescale the Euclidean
    gradient by ((1-|x|^2)^2)/4 and project back into the ball; the first
    `burn_in` epochs run at learning_rate * burn_in_factor.
    """
    if graph.node_count == 0:
        raise ValueError("graph is empty")
    n = graph.node_count
    rng = rng_from(config.seed)
    vectors = rng.uniform(-0.001, 0.001, size=(n, config.dim))

    relations: list[tuple[int, int]] = []
    for u, v in graph.edges():
        relations.append((u, v))
        relations.append((v, u))
    all_ids = np.arange(n)
    non_neighbors = []
    for u in range(n):
        blocked = set(graph.neighbors(u)) | {u}
        allowed = np.array([x for x in all_ids if x not in blocked], dtype=np.int64)
        if allowed.size == 0:
            # complete graph around u: fall back to everything but u itself
            allowed = np.array([x for x in all_ids if x != u], dtype=np.int64)
        non_neighbors.append(allowed)

    losses: list[float] = []
    for epoch in range(config.burn_in + config.epochs):
        lr = config.learning_rate * (config.burn_in_factor if epoch < config.burn_in else 1.0)
        total = 0.0
        if not relations:
            break
        for ridx in rng.permutation(len(relations)):
            u, v = relations[ridx]
            pool = non_neighbors[u]
            negs = pool[rng.integers(0, len(pool), size=config.negatives)]
            loss, grad_u, grad_cands = poincare_pair_loss(vectors, u, v, negs)
            total += loss
            vectors[u] = project_ball(vectors[u] - lr * riemannian_scale(grad_u, vectors[u]),
                                      config.ball_eps)
            cand_idx = [v, *negs.tolist()]
            for j, idx in enumerate(cand_idx):
                vectors[idx] = project_ball(
                    vectors[idx] - lr * riemannian_scale(grad_cands[j], vectors[idx]),
                    config.ball_eps,
                )
        losses.append(total / len(relations))
    if return_losses:
        return vectors, losses
    return vectors

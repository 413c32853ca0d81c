"""Second-order biased random walks (return parameter p, in-out parameter q)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .alias import AliasTable
from .graph import Graph
from .util import rng_from


@dataclass(frozen=True)
class WalkConfig:
    p: float = 1.0
    q: float = 1.0
    walk_length: int = 80
    walks_per_node: int = 10
    seed: int = 0

    def __post_init__(self):
        if self.p <= 0 or self.q <= 0:
            raise ValueError("p and q must be positive")
        if self.walk_length < 1:
            raise ValueError("walk_length must be >= 1")
        if self.walks_per_node < 1:
            raise ValueError("walks_per_node must be >= 1")


def transition_weight(graph: Graph, prev: int, cur: int, candidate: int, p: float, q: float) -> float:
    """Unnormalized bias for stepping cur -> candidate after arriving from prev.

    1/p to return to prev, 1 to move to a common neighbor of prev and cur,
    1/q to move further out.
    """
    if not graph.has_edge(cur, candidate):
        raise ValueError(f"{candidate} is not a neighbor of {cur}")
    if candidate == prev:
        return 1.0 / p
    if graph.has_edge(candidate, prev):
        return 1.0
    return 1.0 / q


class BiasedWalker:
    """Walker over a fixed graph with alias tables precomputed per directed edge.

    With p = q = 1 every step is uniform over the current node's neighbors, so
    the per-edge tables are skipped entirely.
    """

    def __init__(self, graph: Graph, p: float = 1.0, q: float = 1.0):
        if p <= 0 or q <= 0:
            raise ValueError("p and q must be positive")
        self.graph = graph
        self.p = p
        self.q = q
        self._edge_tables: dict[tuple[int, int], AliasTable] | None = None
        if not (p == 1.0 and q == 1.0):
            tables = {}
            for t, v in graph.edges():
                tables[(t, v)] = self._build_edge_table(t, v)
                tables[(v, t)] = self._build_edge_table(v, t)
            self._edge_tables = tables

    def _build_edge_table(self, prev: int, cur: int) -> AliasTable:
        weights = [transition_weight(self.graph, prev, cur, x, self.p, self.q)
                   for x in self.graph.neighbors(cur)]
        return AliasTable(weights)

    def step(self, prev: int | None, cur: int, rng: np.random.Generator) -> int | None:
        """Next node after cur given predecessor prev; None when cur is isolated."""
        nbrs = self.graph.neighbors(cur)
        if not nbrs:
            return None
        if prev is None or self._edge_tables is None:
            return nbrs[int(rng.integers(len(nbrs)))]
        return nbrs[self._edge_tables[(prev, cur)].sample(rng)]

    def walk(self, start: int, length: int, rng: np.random.Generator) -> list[int]:
        nodes = [start]
        prev: int | None = None
        while len(nodes) < length:
            nxt = self.step(prev, nodes[-1], rng)
            if nxt is None:
                break
            prev = nodes[-1]
            nodes.append(nxt)
        return nodes


def generate_walks(graph: Graph, config: WalkConfig) -> list[list[int]]:
    """walks_per_node truncated walks from every node, in seeded shuffled order.

    Isolated nodes yield length-1 walks so every node appears in the corpus.
    Identical (graph, config) always produces an identical corpus.
    """
    if graph.node_count == 0:
        raise ValueError("graph is empty")
    walker = BiasedWalker(graph, config.p, config.q)
    rng = rng_from(config.seed)
    walks: list[list[int]] = []
    for _ in range(config.walks_per_node):
        for u in rng.permutation(graph.node_count):
            walks.append(walker.walk(int(u), config.walk_length, rng))
    return walks

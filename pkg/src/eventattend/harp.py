"""Hierarchical embedding: coarsen, embed the coarsest graph, prolongate, refine."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .graph import Graph
from .node2vec import WalkConfig, generate_walks
from .sgns import SgnsConfig, train_sgns
from .util import derive_seed, rng_from


@dataclass(frozen=True)
class CoarseningLevel:
    """A coarse graph plus the map from the previous (finer) level's node ids."""

    graph: Graph
    fine_to_coarse: tuple[int, ...]


@dataclass(frozen=True)
class Hierarchy:
    """Coarsening levels from finest (the input graph) to coarsest."""

    levels: tuple[CoarseningLevel, ...]
    threshold: int

    def describe(self) -> str:
        lines = [
            f"level {i}: {lv.graph.node_count} nodes, {lv.graph.edge_count} edges"
            for i, lv in enumerate(self.levels)
        ]
        return "\n".join(lines)


def _collapse(graph: Graph, partner: dict[int, int]) -> CoarseningLevel:
    """Merge matched pairs into coarse nodes (ids by first fine appearance) and rewire."""
    n = graph.node_count
    mapping = [-1] * n
    nxt = 0
    for u in range(n):
        if mapping[u] >= 0:
            continue
        mapping[u] = nxt
        mate = partner.get(u)
        if mate is not None and mapping[mate] < 0:
            mapping[mate] = nxt
        nxt += 1
    edges = set()
    for u, v in graph.edges():
        cu, cv = mapping[u], mapping[v]
        if cu != cv:
            edges.add((min(cu, cv), max(cu, cv)))
    coarse = Graph.from_edges(nxt, edges)
    return CoarseningLevel(coarse, tuple(mapping))


def star_collapse(graph: Graph, seed: int = 0) -> CoarseningLevel:
    """Merge pairs of yet-unmatched neighbors around hubs, largest degree first.

    Each hub's unmatched neighbors are shuffled (seeded) and paired off
    consecutively; an odd one out stays unmatched. Rewired multi-edges
    collapse and self-loops are dropped.
    """
    rng = rng_from(seed)
    order = sorted(range(graph.node_count), key=lambda u: (-graph.degree(u), u))
    matched = [False] * graph.node_count
    partner: dict[int, int] = {}
    for hub in order:
        free = [v for v in graph.neighbors(hub) if not matched[v]]
        if len(free) < 2:
            continue
        free = [free[i] for i in rng.permutation(len(free))]
        for a, b in zip(free[0::2], free[1::2]):
            partner[a] = b
            partner[b] = a
            matched[a] = matched[b] = True
    return _collapse(graph, partner)


def edge_collapse(graph: Graph, seed: int = 0, *, edge_order: Sequence[int] | None = None) -> CoarseningLevel:
    """Greedy maximal matching over shuffled edges; matched endpoints merge.

    `edge_order` overrides the seeded shuffle with an explicit permutation of
    edge indices (deterministic hand-traceable collapses).
    """
    edges = list(graph.edges())
    if edge_order is None:
        rng = rng_from(seed)
        edge_order = rng.permutation(len(edges))
    matched = [False] * graph.node_count
    partner: dict[int, int] = {}
    for i in edge_order:
        u, v = edges[int(i)]
        if matched[u] or matched[v]:
            continue
        partner[u] = v
        partner[v] = u
        matched[u] = matched[v] = True
    return _collapse(graph, partner)


def default_threshold(node_count: int) -> int:
    return max(100, node_count // 32)


def build_hierarchy(graph: Graph, threshold: int | None = None, seed: int = 0) -> Hierarchy:
    """Alternate star and edge collapses until <= threshold nodes or no progress.

    One round is star_collapse followed by edge_collapse, recorded as a single
    level with the composed fine-to-coarse map. Level node counts strictly
    decrease; a round that fails to shrink the graph ends the hierarchy.
    """
    if threshold is None:
        threshold = default_threshold(graph.node_count)
    if threshold < 1:
        raise ValueError("threshold must be >= 1")
    levels = [CoarseningLevel(graph, tuple(range(graph.node_count)))]
    while levels[-1].graph.node_count > threshold:
        g = levels[-1].graph
        s = star_collapse(g, derive_seed(seed, len(levels), 0))
        e = edge_collapse(s.graph, derive_seed(seed, len(levels), 1))
        if e.graph.node_count >= g.node_count:
            break
        mapping = tuple(e.fine_to_coarse[c] for c in s.fine_to_coarse)
        levels.append(CoarseningLevel(e.graph, mapping))
    return Hierarchy(tuple(levels), threshold)


def prolongate(coarse_embeddings: np.ndarray, fine_to_coarse: Sequence[int]) -> np.ndarray:
    """Copy each fine node's vector from its coarse node (an exact copy, so
    merged siblings start refinement identical)."""
    coarse = np.asarray(coarse_embeddings, dtype=np.float64)
    mapping = np.asarray(fine_to_coarse, dtype=np.int64)
    if mapping.size and (mapping.min() < 0 or mapping.max() >= coarse.shape[0]):
        raise ValueError("fine_to_coarse references a missing coarse node")
    return coarse[mapping].copy()


def harp_embed(
    graph: Graph,
    sgns_config: SgnsConfig,
    walk_config: WalkConfig,
    threshold: int | None = None,
    seed: int = 0,
) -> np.ndarray:
    """Multilevel embedding of `graph`: full training on the coarsest level,
    then per level prolongate and refine with half the epochs at half the rate."""
    if graph.node_count == 0:
        raise ValueError("graph is empty")
    hierarchy = build_hierarchy(graph, threshold, derive_seed(seed, 1))
    levels = hierarchy.levels
    refine_epochs = max(1, sgns_config.epochs // 2)
    refine_lr = sgns_config.learning_rate / 2.0
    emb: np.ndarray | None = None
    for i in range(len(levels) - 1, -1, -1):
        g = levels[i].graph
        corpus = generate_walks(g, replace(walk_config, seed=derive_seed(seed, 2, i)))
        if emb is None:
            emb = train_sgns(corpus, sgns_config, g.node_count, seed=derive_seed(seed, 3, i))
        else:
            emb = train_sgns(
                corpus,
                sgns_config,
                g.node_count,
                initial=emb,
                epochs=refine_epochs,
                learning_rate=refine_lr,
                seed=derive_seed(seed, 3, i),
            )
        if i > 0:
            emb = prolongate(emb, levels[i].fine_to_coarse)
    assert emb is not None
    return emb

"""Undirected social graph: edge-list I/O, artificial friend groups, components."""

from __future__ import annotations

import heapq
from bisect import bisect_left
from dataclasses import dataclass
from typing import IO, Iterable, Iterator, Sequence

import numpy as np

from .util import rng_from


class Graph:
    """Immutable undirected, unweighted graph over dense node ids 0..n-1.

    Adjacency lists are sorted and deduplicated, self-loops are rejected, and
    every node carries a unique external string id. Instances are safe to
    share across threads once constructed.
    """

    __slots__ = ("_adj", "_ext_ids", "_index")

    def __init__(self, adjacency: Sequence[Iterable[int]], ext_ids: Sequence[str] | None = None):
        n = len(adjacency)
        if ext_ids is None:
            ext_ids = [str(i) for i in range(n)]
        if len(ext_ids) != n:
            raise ValueError(f"got {len(ext_ids)} external ids for {n} nodes")
        adj = []
        for u, nbrs in enumerate(adjacency):
            row = sorted({int(v) for v in nbrs})
            if row and (row[0] < 0 or row[-1] >= n):
                raise ValueError(f"node {u}: neighbor id outside 0..{n - 1}")
            if u in set(row):
                raise ValueError(f"node {u}: self-loop")
            adj.append(tuple(row))
        for u in range(n):
            for v in adj[u]:
                back = adj[v]
                i = bisect_left(back, u)
                if i == len(back) or back[i] != u:
                    raise ValueError(f"edge {u}-{v} has no reverse entry")
        self._adj: tuple[tuple[int, ...], ...] = tuple(adj)
        self._ext_ids: tuple[str, ...] = tuple(str(e) for e in ext_ids)
        if len(set(self._ext_ids)) != n:
            raise ValueError("external ids must be unique")
        self._index = {e: i for i, e in enumerate(self._ext_ids)}

    @classmethod
    def from_edges(
        cls,
        node_count: int,
        edges: Iterable[tuple[int, int]],
        ext_ids: Sequence[str] | None = None,
    ) -> "Graph":
        adj: list[set[int]] = [set() for _ in range(node_count)]
        for u, v in edges:
            if not (0 <= u < node_count and 0 <= v < node_count):
                raise ValueError(f"edge ({u}, {v}) outside 0..{node_count - 1}")
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            adj[u].add(v)
            adj[v].add(u)
        return cls(adj, ext_ids)

    @property
    def node_count(self) -> int:
        return len(self._adj)

    @property
    def edge_count(self) -> int:
        return sum(len(row) for row in self._adj) // 2

    @property
    def ext_ids(self) -> tuple[str, ...]:
        return self._ext_ids

    def neighbors(self, u: int) -> tuple[int, ...]:
        """Sorted neighbor ids of u; raises on an out-of-range id."""
        if not 0 <= u < len(self._adj):
            raise ValueError(f"node id {u} out of range (node_count={len(self._adj)})")
        return self._adj[u]

    def degree(self, u: int) -> int:
        return len(self.neighbors(u))

    def has_edge(self, u: int, v: int) -> bool:
        row = self.neighbors(u)
        i = bisect_left(row, v)
        return i < len(row) and row[i] == v

    def edges(self) -> Iterator[tuple[int, int]]:
        """All edges as (u, v) with u < v, in dense-id order."""
        for u, row in enumerate(self._adj):
            for v in row:
                if u < v:
                    yield (u, v)

    def ext_id(self, u: int) -> str:
        if not 0 <= u < len(self._ext_ids):
            raise ValueError(f"node id {u} out of range")
        return self._ext_ids[u]

    def node_id(self, ext: str) -> int:
        try:
            return self._index[ext]
        except KeyError:
            raise KeyError(f"unknown external id {ext!r}") from None

    def __contains__(self, ext: str) -> bool:
        return ext in self._index

    def with_edges(self, extra: Iterable[tuple[int, int]]) -> "Graph":
        """New graph with extra edges added (duplicates collapse)."""
        edges = list(self.edges()) + list(extra)
        return Graph.from_edges(self.node_count, edges, self._ext_ids)

    def with_nodes(self, new_ext_ids: Sequence[str]) -> "Graph":
        """New graph with additional isolated nodes appended."""
        for e in new_ext_ids:
            if e in self._index:
                raise ValueError(f"external id {e!r} already present")
        adj = list(self._adj) + [() for _ in new_ext_ids]
        return Graph(adj, list(self._ext_ids) + list(new_ext_ids))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj and self._ext_ids == other._ext_ids

    def __hash__(self):
        return hash((self._adj, self._ext_ids))

    def __repr__(self) -> str:
        return f"Graph(nodes={self.node_count}, edges={self.edge_count})"


@dataclass(frozen=True)
class GroupAssignment:
    """Partition of lone users into groups plus the edges that link them."""

    groups: tuple[tuple[int, ...], ...]
    added_edges: tuple[tuple[int, int], ...]


def load_edge_list(stream: IO[str]) -> Graph:
    """Parse whitespace-separated edge pairs; `#` lines are comments.

    Dense ids are assigned in first-appearance order; duplicate lines (in
    either orientation) collapse to one edge. Self-loops and malformed lines
    raise with the offending line number.
    """
    ext_ids: list[str] = []
    index: dict[str, int] = {}
    edges: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected two whitespace-separated ids, got {len(parts)}")
        a, b = parts
        if a == b:
            raise ValueError(f"self-loop at line {lineno}: {a!r}")
        for tok in (a, b):
            if tok not in index:
                index[tok] = len(ext_ids)
                ext_ids.append(tok)
        u, v = index[a], index[b]
        edges.add((u, v) if u < v else (v, u))
    return Graph.from_edges(len(ext_ids), edges, ext_ids)


def write_edge_list(graph: Graph, stream: IO[str]) -> None:
    """Emit one `ext_u ext_v` line per edge, u < v in dense-id order."""
    for u, v in graph.edges():
        stream.write(f"{graph.ext_id(u)} {graph.ext_id(v)}\n")


def random_connected_edges(
    members: Sequence[int], rng: np.random.Generator, extra_edge_prob: float = 0.3
) -> list[tuple[int, int]]:
    """Uniform random spanning tree over `members` plus independent extra pairs.

    The tree comes from a uniform Prufer sequence, so every labeled tree is
    equally likely; each non-tree pair is then added with `extra_edge_prob`.
    A single member yields no edges.
    """
    m = len(members)
    if m < 2:
        return []
    if m == 2:
        return [(members[0], members[1])]
    seq = rng.integers(0, m, size=m - 2)
    tree = _prufer_decode(m, seq)
    edges = [(members[a], members[b]) for a, b in tree]
    tree_set = {(min(a, b), max(a, b)) for a, b in tree}
    for i in range(m):
        for j in range(i + 1, m):
            if (i, j) in tree_set:
                continue
            if rng.random() < extra_edge_prob:
                edges.append((members[i], members[j]))
    return edges


def _prufer_decode(n: int, seq: Sequence[int]) -> list[tuple[int, int]]:
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    leaves = [i for i in range(n) if degree[i] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, int(x)))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, int(x))
    u = heapq.heappop(leaves)
    v = heapq.heappop(leaves)
    edges.append((u, v))
    return edges


def make_artificial_groups(
    lone_users: Sequence[int],
    group_count: int = 4,
    seed: int = 0,
    extra_edge_prob: float = 0.3,
) -> GroupAssignment:
    """Partition lone users into near-equal groups and link each group internally.

    Part sizes differ by at most one; any size-1 part is merged into the
    smallest other part (a singleton cannot be linked). Every group gets a
    uniform random spanning tree plus extra intra-group edges, so each member
    ends up with degree >= 1 inside its group whenever the group has >= 2
    members. Deterministic for a fixed seed.
    """
    if group_count < 1:
        raise ValueError("group_count must be >= 1")
    users = [int(u) for u in lone_users]
    if len(set(users)) != len(users):
        raise ValueError("lone_users contains duplicates")
    if not users:
        return GroupAssignment((), ())
    rng = rng_from(seed)
    perm = [users[i] for i in rng.permutation(len(users))]
    k = min(group_count, len(users))
    base, extra = divmod(len(users), k)
    parts: list[list[int]] = []
    pos = 0
    for i in range(k):
        size = base + (1 if i < extra else 0)
        parts.append(perm[pos : pos + size])
        pos += size
    while len(parts) > 1 and any(len(p) == 1 for p in parts):
        i = next(idx for idx, p in enumerate(parts) if len(p) == 1)
        singleton = parts.pop(i)
        j = min(range(len(parts)), key=lambda idx: len(parts[idx]))
        parts[j] = parts[j] + singleton
    added: list[tuple[int, int]] = []
    for part in parts:
        added.extend(random_connected_edges(part, rng, extra_edge_prob))
    groups = tuple(tuple(sorted(p)) for p in parts)
    edges = tuple((min(u, v), max(u, v)) for u, v in added)
    return GroupAssignment(groups, edges)


def connected_components(graph: Graph) -> list[set[int]]:
    """Partition of all nodes into connected components, by smallest member."""
    seen = [False] * graph.node_count
    components: list[set[int]] = []
    for start in range(graph.node_count):
        if seen[start]:
            continue
        comp = {start}
        seen[start] = True
        stack = [start]
        while stack:
            u = stack.pop()
            for v in graph.neighbors(u):
                if not seen[v]:
                    seen[v] = True
                    comp.add(v)
                    stack.append(v)
        components.append(comp)
    return components

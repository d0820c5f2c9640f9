"""Small simple undirected graphs stored as bitset adjacency rows.

Row ``v`` of :attr:`Graph.adj` is an int whose bit ``u`` is set iff the
edge ``{u, v}`` is present.  Graphs are immutable; every editing method
returns a new value.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

MAX_VERTICES = 32


class GraphError(ValueError):
    """Raised for malformed graph construction or editing requests."""


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_VERTICES:
            raise GraphError(f"vertex count {self.n} outside 0..{MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise GraphError("adjacency row count does not match n")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise GraphError(f"row {v} has bits beyond n")
            if row >> v & 1:
                raise GraphError(f"loop at vertex {v}")
            for u in bits(row):
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {u} and {v}")

    # -- construction -------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if not 0 <= n <= MAX_VERTICES:
            raise GraphError(f"vertex count {n} outside 0..{MAX_VERTICES}")
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise GraphError(f"loop edge ({u}, {v})")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def _trusted(cls, n: int, adj: tuple[int, ...]) -> "Graph":
        # skips validation; callers guarantee a symmetric loop-free matrix
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "adj", adj)
        return g

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls.from_edges(n, ())

    # -- queries ------------------------------------------------------

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise GraphError(f"vertex {v} out of range for n={self.n}")

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(u, v)`` with ``u < v``, in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def neighbors(self, v: int) -> list[int]:
        self._check_vertex(v)
        return list(bits(self.adj[v]))

    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def components(self) -> list[int]:
        """Connected components as vertex bitsets, ordered by lowest vertex."""
        seen = 0
        out = []
        for v in range(self.n):
            if seen >> v & 1:
                continue
            comp = reach(self.adj, 1 << v, (1 << self.n) - 1)
            seen |= comp
            out.append(comp)
        return out

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        return reach(self.adj, 1, (1 << self.n) - 1) == (1 << self.n) - 1

    def complement(self) -> "Graph":
        full = (1 << self.n) - 1
        return Graph(self.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(self.adj)))

    def induced(self, vertices: Iterable[int]) -> "Graph":
        """Induced subgraph, relabelled in ascending order of ``vertices``."""
        keep = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(keep)}
        return Graph.from_edges(
            len(keep), [(pos[u], pos[v]) for u, v in self.edges() if u in pos and v in pos]
        )

    def relabel(self, perm: list[int]) -> "Graph":
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise GraphError("relabelling is not a permutation")
        rows = [0] * self.n
        for v, row in enumerate(self.adj):
            r = 0
            for u in bits(row):
                r |= 1 << perm[u]
            rows[perm[v]] = r
        return Graph._trusted(self.n, tuple(rows))

    # -- editing ------------------------------------------------------

    def add_vertex_with_neighbors(self, nbrs: int) -> "Graph":
        if self.n + 1 > MAX_VERTICES:
            raise GraphError("vertex capacity exceeded")
        if nbrs >> self.n:
            raise GraphError("neighbour set references missing vertices")
        x = self.n
        rows = [row | ((nbrs >> v & 1) << x) for v, row in enumerate(self.adj)]
        rows.append(nbrs)
        return Graph._trusted(self.n + 1, tuple(rows))

    def delete_vertex(self, v: int) -> "Graph":
        self._check_vertex(v)
        low = (1 << v) - 1
        rows = []
        for u, row in enumerate(self.adj):
            if u != v:
                rows.append((row & low) | (row >> (v + 1) << v))
        return Graph._trusted(self.n - 1, tuple(rows))

    def add_edge(self, u: int, v: int) -> "Graph":
        if u == v:
            raise GraphError(f"loop edge ({u}, {v})")
        if self.has_edge(u, v):
            raise GraphError(f"edge ({u}, {v}) already present")
        rows = list(self.adj)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        return Graph(self.n, tuple(rows))

    def delete_edge(self, u: int, v: int) -> "Graph":
        if u == v or not self.has_edge(u, v):
            raise GraphError(f"edge ({u}, {v}) not present")
        rows = list(self.adj)
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
        return Graph(self.n, tuple(rows))

    def subdivide_edge(self, u: int, v: int) -> "Graph":
        """Replace edge ``uv`` by a path ``u - x - v`` through a new vertex."""
        return self.delete_edge(u, v).add_vertex_with_neighbors((1 << u) | (1 << v))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def reach(adj: tuple[int, ...] | list[int], start: int, allowed: int) -> int:
    """Vertices reachable from the bitset ``start`` inside ``allowed``."""
    seen = start & allowed
    frontier = seen
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= adj[v]
        frontier = nxt & allowed & ~seen
        seen |= frontier
    return seen


def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    return Graph.from_edges(n, edges)


def all_pairs(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(n), 2))

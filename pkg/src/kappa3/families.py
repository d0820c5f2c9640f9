"""Named graphs, graph operations and brute-force extremal catalogs."""

from __future__ import annotations

import json
import os
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable

from .canon import canonical_form
from .enumerate import GraphClassQuery, enumerate_matching
from .graph import MAX_VERTICES, Graph, GraphError, bits
from .graph6 import encode
from .steiner import kappa_bar_at_least


class FamilyError(ValueError):
    pass


def complete_graph(n: int) -> Graph:
    if n < 1:
        raise FamilyError("complete graph needs n >= 1")
    return Graph.from_edges(n, combinations(range(n), 2))


def empty(n: int) -> Graph:
    if n < 1:
        raise FamilyError("empty graph needs n >= 1")
    return Graph.empty(n)


def path(n: int) -> Graph:
    if n < 1:
        raise FamilyError("path needs n >= 1")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise FamilyError("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def wheel(n: int) -> Graph:
    """Hub 0 joined to the cycle on vertices ``1..n-1``."""
    if n < 4:
        raise FamilyError("wheel needs n >= 4")
    rim = [(1 + i, 1 + (i + 1) % (n - 1)) for i in range(n - 1)]
    return Graph.from_edges(n, rim + [(0, v) for v in range(1, n)])


def disjoint_union(g: Graph, h: Graph) -> Graph:
    if g.n + h.n > MAX_VERTICES:
        raise FamilyError("union exceeds vertex capacity")
    shift = g.n
    return Graph.from_edges(g.n + h.n, g.edges() + [(u + shift, v + shift) for u, v in h.edges()])


def join(g: Graph, h: Graph) -> Graph:
    """``g`` and ``h`` side by side with every cross pair joined; g's vertices first."""
    u = disjoint_union(g, h)
    cross = [(a, g.n + b) for a in range(g.n) for b in range(h.n)]
    return Graph.from_edges(u.n, u.edges() + cross)


def k_copies(g: Graph, k: int) -> Graph:
    if k < 1:
        raise FamilyError("need at least one copy")
    out = g
    for _ in range(k - 1):
        out = disjoint_union(out, g)
    return out


def is_attaching_vertex(g: Graph, u: int) -> bool:
    """Whether ``u`` already carries a pendant K4 (three degree-3 vertices)."""
    cands = [v for v in bits(g.adj[u]) if g.adj[v].bit_count() == 3]
    for a, b, c in combinations(cands, 3):
        if g.adj[a] >> b & 1 and g.adj[a] >> c & 1 and g.adj[b] >> c & 1:
            return True
    return False


def attach_k4(g: Graph, u: int) -> Graph:
    """Glue a K4 onto ``g`` by identifying one of its vertices with ``u``.

    The three new vertices get indices ``n, n+1, n+2``.
    """
    g._check_vertex(u)
    if g.n + 3 > MAX_VERTICES:
        raise FamilyError("attaching a K4 exceeds vertex capacity")
    if is_attaching_vertex(g, u):
        raise FamilyError(f"vertex {u} already carries an attached K4")
    new = [g.n, g.n + 1, g.n + 2]
    extra = [(u, x) for x in new] + list(combinations(new, 2))
    return Graph.from_edges(g.n + 3, g.edges() + extra)


def regular_graph(m: int, d: int) -> Graph:
    """Circulant ``d``-regular graph on ``m`` vertices.

    Offsets ``1..d//2``, plus the antipodal offset ``m/2`` when ``d`` is odd.
    """
    if not 0 <= d < m:
        raise FamilyError(f"degree {d} must satisfy 0 <= d < m={m}")
    if d * m % 2:
        raise FamilyError(f"no {d}-regular graph on {m} vertices (odd degree sum)")
    offsets = list(range(1, d // 2 + 1))
    if d % 2:
        offsets.append(m // 2)
    edges = {(min(i, (i + o) % m), max(i, (i + o) % m)) for i in range(m) for o in offsets}
    return Graph.from_edges(m, edges)


def maximum_matching(g: Graph) -> list[tuple[int, int]]:
    """A maximum matching of ``g`` by exhaustive branching (tiny graphs only).

    Branches on the lowest unmatched vertex, trying partners in ascending
    order before leaving it unmatched; the first optimum found is returned.
    """
    best: list[tuple[int, int]] = []
    limit = g.n // 2

    def go(free: int, chosen: list[tuple[int, int]]) -> bool:
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
            if len(best) == limit:
                return True
        if len(chosen) + free.bit_count() // 2 <= len(best):
            return False
        if not free:
            return False
        v = (free & -free).bit_length() - 1
        rest = free & ~(1 << v)
        for w in bits(g.adj[v] & rest):
            chosen.append((v, w))
            if go(rest & ~(1 << w), chosen):
                return True
            chosen.pop()
        return go(rest, chosen)

    go((1 << g.n) - 1, [])
    return best


def add_maximum_matching(g: Graph) -> Graph:
    """Add a maximum matching of the complement of ``g``."""
    extra = maximum_matching(g.complement())
    return Graph.from_edges(g.n, g.edges() + extra)


def remark_edge_count(n: int, ell: int) -> float:
    if n % 2 and ell % 2:
        return (ell + 2) / 2 * (n - 2) + 0.5
    return (ell + 2) / 2 * (n - 2) + 1


def remark_feasible(n: int, ell: int) -> bool:
    if n < 5 or not 2 <= ell <= n - 2:
        return False
    if n % 2 and ell % 2:
        return (ell - 3) * (n - 2) % 2 == 0
    return (ell - 2) * (n - 2) % 2 == 0


def remark_construction(n: int, ell: int) -> Graph:
    """Dense graph of order ``n`` whose triples carry at most ``ell`` trees.

    A regular graph on ``n - 2`` vertices joined to K2: degree ``ell - 2``
    in general, or degree ``ell - 3`` plus a maximum matching of the
    complement when ``n`` and ``ell`` are both odd.  The K2 is on the last
    two vertices.
    """
    if not remark_feasible(n, ell):
        raise FamilyError(f"no construction for n={n}, ell={ell}")
    if n % 2 and ell % 2:
        base = add_maximum_matching(regular_graph(n - 2, ell - 3))
    else:
        base = regular_graph(n - 2, ell - 2)
    return join(base, complete_graph(2))


# -- extremal catalogs ---------------------------------------------------

CATALOG_MIN_N = 3
CATALOG_MAX_N = 9


@dataclass
class ExtremalCatalog:
    """All connected classes of order ``n`` with the most edges and no triple
    carrying three internally disjoint trees."""

    n: int
    f_value: int
    members: list[str]  # canonical graph6, sorted by canonical key
    scanned: dict[int, int] = field(default_factory=dict)  # edges -> classes checked
    low: dict[int, int] = field(default_factory=dict)  # edges -> classes with value <= 2

    def keys(self) -> set[bytes]:
        return {m.encode("ascii") for m in self.members}

    def __contains__(self, g: Graph) -> bool:
        return g.n == self.n and canonical_form(g) in self.keys()

    def to_json(self) -> dict:
        return {"n": self.n, "f_value": self.f_value, "members": list(self.members)}

    def dump(self, path: str | os.PathLike) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_json(), fh, indent=2)
            fh.write("\n")

    @classmethod
    def from_json(cls, data: dict) -> "ExtremalCatalog":
        return cls(n=data["n"], f_value=data["f_value"], members=sorted(data["members"]))


def _has_three(g: Graph) -> bool:
    return kappa_bar_at_least(g, 3, 3)


def evaluate_many(
    graphs: list[Graph], predicate: Callable[[Graph], bool] | None = None, threads: int | None = None
) -> list[bool]:
    """Apply ``predicate`` (default: some triple carries 3 trees) to each graph.

    Runs in a process pool when ``threads > 1`` and no custom predicate is given.
    """
    if predicate is None and threads is not None and threads > 1 and len(graphs) > 64:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(_has_three, graphs, chunksize=32))
    pred = predicate or _has_three
    return [pred(g) for g in graphs]


def extremal_catalog(
    n: int, predicate: Callable[[Graph], bool] | None = None, threads: int | None = None
) -> ExtremalCatalog:
    """Scan connected classes of order ``n`` from the densest size downward.

    The first size holding a class with no 3-tree triple is the extremal
    size; all larger sizes have been checked to contain none.
    """
    if not CATALOG_MIN_N <= n <= CATALOG_MAX_N:
        raise FamilyError(f"catalog order {n} outside {CATALOG_MIN_N}..{CATALOG_MAX_N}")
    by_size: dict[int, list[Graph]] = defaultdict(list)
    for g in enumerate_matching(GraphClassQuery(n, connected_only=True)):
        by_size[g.edge_count()].append(g)
    cat = ExtremalCatalog(n=n, f_value=-1, members=[])
    for m in sorted(by_size, reverse=True):
        graphs = by_size[m]
        flags = evaluate_many(graphs, predicate, threads)
        lows = [g for g, hit in zip(graphs, flags) if not hit]
        cat.scanned[m] = len(graphs)
        cat.low[m] = len(lows)
        if lows:
            cat.f_value = m
            cat.members = sorted(canonical_form(g).decode("ascii") for g in lows)
            break
    return cat


def graph6_list(graphs: Iterable[Graph]) -> list[str]:
    return [encode(g) for g in graphs]


__all__ = [
    "ExtremalCatalog",
    "FamilyError",
    "GraphError",
    "add_maximum_matching",
    "attach_k4",
    "complete_graph",
    "cycle",
    "disjoint_union",
    "empty",
    "extremal_catalog",
    "is_attaching_vertex",
    "join",
    "k_copies",
    "maximum_matching",
    "path",
    "regular_graph",
    "remark_construction",
    "remark_edge_count",
    "remark_feasible",
    "wheel",
]

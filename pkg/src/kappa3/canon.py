"""Canonical labelling and isomorphism testing.

Individualisation-refinement search: colour refinement produces an
equitable ordered partition, a vertex of the first non-singleton cell is
individualised, and the search recurses until the partition is discrete.
Each discrete partition is a vertex ordering; the canonical form is the
ordering whose upper-triangle adjacency string (graph6 bit order) is
smallest.  Automorphisms discovered when two leaves coincide prune
equivalent branches, which keeps highly symmetric graphs cheap.
"""

from __future__ import annotations

from .graph import Graph
from .graph6 import encode

CanonicalKey = bytes


def _refine(adj: tuple[int, ...], cells: list[list[int]]) -> list[list[int]]:
    while True:
        masks = []
        for c in cells:
            m = 0
            for v in c:
                m |= 1 << v
            masks.append(m)
        out: list[list[int]] = []
        for c in cells:
            if len(c) == 1:
                out.append(c)
                continue
            sig = {v: tuple((adj[v] & m).bit_count() for m in masks) for v in c}
            first = sig[c[0]]
            if all(sig[v] == first for v in c):
                out.append(c)
                continue
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in c:
                groups.setdefault(sig[v], []).append(v)
            for key in sorted(groups):
                out.append(groups[key])
        if len(out) == len(cells):
            return out
        cells = out


def _certificate(adj: tuple[int, ...], order: list[int]) -> int:
    cert = 0
    for j in range(1, len(order)):
        row = adj[order[j]]
        for i in range(j):
            cert = (cert << 1) | (row >> order[i] & 1)
    return cert


class _Search:
    def __init__(self, g: Graph):
        self.adj = g.adj
        self.n = g.n
        self.first_order: list[int] | None = None
        self.first_prefix: list[int] = []
        self.first_cert = -1
        self.best_order: list[int] = []
        self.best_cert = -1
        self.gens: list[list[int]] = []

    def _automorphism(self, src: list[int], dst: list[int]) -> list[int]:
        gamma = [0] * self.n
        for a, b in zip(src, dst):
            gamma[a] = b
        return gamma

    def _orbit_roots(self, prefix: list[int]) -> list[int]:
        parent = list(range(self.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for gamma in self.gens:
            if all(gamma[p] == p for p in prefix):
                for a in range(self.n):
                    ra, rb = find(a), find(gamma[a])
                    if ra != rb:
                        parent[max(ra, rb)] = min(ra, rb)
        return [find(x) for x in range(self.n)]

    def run(self, cells: list[list[int]], prefix: list[int]) -> int | None:
        depth = len(prefix)
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            return self._leaf([c[0] for c in cells], prefix)
        tried: list[int] = []
        seen_gens = -1
        roots: list[int] = []
        for v in sorted(cells[target]):
            if tried:
                if seen_gens != len(self.gens):
                    roots = self._orbit_roots(prefix)
                    seen_gens = len(self.gens)
                if any(roots[v] == roots[t] for t in tried):
                    continue
            tried.append(v)
            rest = [u for u in cells[target] if u != v]
            child = _refine(self.adj, cells[:target] + [[v], rest] + cells[target + 1:])
            jump = self.run(child, prefix + [v])
            if jump is not None and jump < depth:
                return jump
        return None

    def _leaf(self, order: list[int], prefix: list[int]) -> int | None:
        cert = _certificate(self.adj, order)
        if self.first_order is None:
            self.first_order = order
            self.first_prefix = prefix
            self.first_cert = self.best_cert = cert
            self.best_order = order
            return None
        if cert == self.first_cert:
            self.gens.append(self._automorphism(self.first_order, order))
            common = 0
            for a, b in zip(prefix, self.first_prefix):
                if a != b:
                    break
                common += 1
            return common
        if cert == self.best_cert:
            self.gens.append(self._automorphism(self.best_order, order))
        elif cert < self.best_cert:
            self.best_cert = cert
            self.best_order = order
        return None


def canonical_labeling(g: Graph) -> list[int]:
    """Permutation ``perm`` such that ``g.relabel(perm)`` is the canonical graph."""
    if g.n == 0:
        return []
    search = _Search(g)
    search.run(_refine(g.adj, [list(range(g.n))]), [])
    perm = [0] * g.n
    for pos, v in enumerate(search.best_order):
        perm[v] = pos
    return perm


def canonical_graph(g: Graph) -> Graph:
    return g.relabel(canonical_labeling(g))


def canonical_form(g: Graph) -> CanonicalKey:
    return encode(canonical_graph(g)).encode("ascii")


def are_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.edge_count() != h.edge_count():
        return False
    if sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_form(g) == canonical_form(h)

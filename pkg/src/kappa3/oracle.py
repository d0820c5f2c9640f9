"""Brute-force reference for the packing number.

Deliberately naive and independent of :mod:`kappa3.steiner`: every edge
subset of size at most ``n - 1`` is tested for being a tree, the trees
whose leaves all lie in S are kept, and all families of pairwise compatible
trees are explored without pruning.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Iterable

from .graph import Graph

ORACLE_MAX_N = 7


class OracleTooLarge(ValueError):
    pass


@lru_cache(maxsize=256)
def _all_trees(g: Graph) -> tuple[tuple[frozenset, frozenset, frozenset], ...]:
    """(edges, vertices, leaves) for every subtree of ``g`` with at least one edge."""
    edges = g.edges()
    out = []
    for size in range(1, g.n):
        for combo in combinations(edges, size):
            verts = {x for e in combo for x in e}
            if len(verts) != size + 1:
                continue
            # union-find: size+1 vertices, size edges, acyclic -> tree
            parent = {v: v for v in verts}

            def find(x):
                while parent[x] != x:
                    x = parent[x]
                return x

            acyclic = True
            for u, v in combo:
                ru, rv = find(u), find(v)
                if ru == rv:
                    acyclic = False
                    break
                parent[ru] = rv
            if not acyclic:
                continue
            deg: dict[int, int] = {}
            for u, v in combo:
                deg[u] = deg.get(u, 0) + 1
                deg[v] = deg.get(v, 0) + 1
            leaves = frozenset(v for v, d in deg.items() if d == 1)
            out.append((frozenset(combo), frozenset(verts), leaves))
    return tuple(out)


def minimal_trees_oracle(g: Graph, s: Iterable[int]) -> list[tuple[frozenset, frozenset]]:
    if g.n > ORACLE_MAX_N:
        raise OracleTooLarge(f"oracle limited to n <= {ORACLE_MAX_N}")
    terms = frozenset(s)
    return [
        (edges, verts)
        for edges, verts, leaves in _all_trees(g)
        if terms <= verts and leaves <= terms
    ]


def kappa_set_oracle(g: Graph, s: Iterable[int]) -> int:
    terms = frozenset(s)
    trees = minimal_trees_oracle(g, terms)

    def compatible(a, b) -> bool:
        return not (a[0] & b[0]) and a[1] & b[1] == terms

    best = 0

    def extend(start: int, chosen: list) -> None:
        nonlocal best
        best = max(best, len(chosen))
        for i in range(start, len(trees)):
            t = trees[i]
            if all(compatible(t, c) for c in chosen):
                chosen.append(t)
                extend(i + 1, chosen)
                chosen.pop()

    extend(0, [])
    return best

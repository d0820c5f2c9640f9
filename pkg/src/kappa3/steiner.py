"""Exact packing of internally disjoint Steiner trees for 2- and 3-sets.

Two S-trees are internally disjoint when they share no edge and no vertex
outside S.  A tree's footprint is therefore fully described by

* ``U``: the non-terminal vertices it uses, and
* ``F``: the terminal-terminal edges it uses,

since every other edge touches a vertex of ``U`` and so cannot be shared.
A footprint ``(U, F)`` carries a tree iff S is connected in the graph on
``S | U`` whose edges are those with an endpoint in ``U`` plus ``F``.
The solver enumerates the inclusion-minimal footprints (a maximum packing
never needs anything else: prune non-terminal leaves) and then searches for
a largest family of pairwise disjoint footprints.  Certificates are built
from the chosen footprints afterwards.

Only ``|S| in {2, 3}`` is supported; larger sets raise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator

from .graph import Graph, GraphError, bits, mask_of, reach

SUPPORTED_K = (2, 3)


class UnsupportedTerminalSet(ValueError):
    pass


@dataclass(frozen=True)
class SteinerTree:
    """A tree given by its edges (``u < v``, sorted) and vertex bitset."""

    edges: tuple[tuple[int, int], ...]
    vertices: int

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]]) -> "SteinerTree":
        norm = sorted({(min(u, v), max(u, v)) for u, v in edges})
        return cls(tuple(norm), mask_of(x for e in norm for x in e))

    def vertex_list(self) -> list[int]:
        return list(bits(self.vertices))

    def to_json(self) -> list[list[int]]:
        return [list(e) for e in self.edges]


@dataclass
class TreePacking:
    terminals: tuple[int, ...]
    trees: list[SteinerTree] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.trees)

    def to_json(self) -> dict:
        return {"terminals": list(self.terminals), "trees": [t.to_json() for t in self.trees]}


@dataclass(frozen=True)
class Bounds:
    degree_bound: int
    edge_bound: int
    clique_bound: int

    def best(self) -> int:
        return min(self.degree_bound, self.edge_bound, self.clique_bound)


def terminal_tuple(g: Graph, s: Iterable[int]) -> tuple[int, ...]:
    terms = tuple(sorted(set(s)))
    if len(terms) < 2:
        raise UnsupportedTerminalSet("a terminal set needs at least two vertices")
    for v in terms:
        if not 0 <= v < g.n:
            raise GraphError(f"terminal {v} out of range for n={g.n}")
    return terms


def _check_k(k: int) -> None:
    if k not in SUPPORTED_K:
        raise UnsupportedTerminalSet(f"terminal sets of size {k} are not supported (only 2 or 3)")


def bounds(g: Graph, s: Iterable[int]) -> Bounds:
    """Cheap upper bounds on the packing number of ``s``.

    ``edge_bound``: at most one tree lies entirely on terminal edges
    (``k - 1`` edges); every other tree has at least ``k`` edges.
    """
    terms = terminal_tuple(g, s)
    k = len(terms)
    return Bounds(
        degree_bound=min(g.degree(v) for v in terms),
        edge_bound=(g.edge_count() + 1) // k,
        clique_bound=g.n - k + k // 2,
    )


# -- footprints -------------------------------------------------------


@dataclass(frozen=True)
class _Footprint:
    interior: int
    term_edges: int  # bit i set -> i-th terminal edge of the instance


class _Instance:
    """Per-call solver state for one graph and one terminal set."""

    def __init__(self, g: Graph, terms: tuple[int, ...]):
        self.g = g
        self.adj = g.adj
        self.terms = terms
        self.smask = mask_of(terms)
        self.tedges = [(u, v) for u, v in combinations(terms, 2) if g.adj[u] >> v & 1]
        comp = reach(g.adj, 1 << terms[0], (1 << g.n) - 1)
        self.connected = comp & self.smask == self.smask
        self.pool = comp & ~self.smask

    def _groups(self, u: int) -> tuple[list[int], int]:
        """Terminal groups joined through ``u`` and the part of ``u`` they reach."""
        adj = self.adj
        allowed = u | self.smask
        seen_all = 0
        groups = []
        for t in self.terms:
            if seen_all >> t & 1:
                continue
            seen = 1 << t
            frontier = adj[t] & u
            seen |= frontier
            while frontier:
                nxt = 0
                for v in bits(frontier):
                    # terminal-terminal edges belong to F, never to the interior part
                    nxt |= adj[v] if u >> v & 1 else adj[v] & u
                frontier = nxt & allowed & ~seen
                seen |= frontier
            seen_all |= seen
            groups.append(seen & self.smask)
        return groups, seen_all & u

    def _closing_edges(self, groups: list[int]) -> list[int]:
        """Minimal sets of terminal edges that merge ``groups`` into one."""
        if len(groups) == 1:
            return [0]
        idx = {}
        for i, grp in enumerate(groups):
            for t in bits(grp):
                idx[t] = i
        usable = [
            i for i, (a, b) in enumerate(self.tedges) if idx[a] != idx[b]
        ]
        out = []
        need = len(groups) - 1
        for combo in combinations(usable, need):
            parent = list(range(len(groups)))

            def find(x: int) -> int:
                while parent[x] != x:
                    x = parent[x]
                return x

            ok = True
            for i in combo:
                a, b = self.tedges[i]
                ra, rb = find(idx[a]), find(idx[b])
                if ra == rb:
                    ok = False
                    break
                parent[ra] = rb
            if ok:
                out.append(sum(1 << i for i in combo))
        return out

    def footprints(self) -> list[_Footprint]:
        if not self.connected:
            return []
        pool = list(bits(self.pool))
        raw: list[_Footprint] = []

        def visit(u: int) -> bool:
            groups, used = self._groups(u)
            if used != u:
                # some chosen vertex hangs off no terminal; a subset does better
                return False
            for f in self._closing_edges(groups):
                raw.append(_Footprint(u, f))
            return len(groups) == 1

        visit(0)

        def grow(start: int, u: int) -> None:
            for i in range(start, len(pool)):
                w = u | (1 << pool[i])
                if not visit(w):
                    grow(i + 1, w)

        grow(0, 0)
        raw.sort(key=lambda fp: (fp.interior.bit_count(), fp.interior, fp.term_edges))
        minimal: list[_Footprint] = []
        for fp in raw:
            if not any(
                m.interior & ~fp.interior == 0 and m.term_edges & ~fp.term_edges == 0
                for m in minimal
            ):
                minimal.append(fp)
        return minimal

    def tree_for(self, fp: _Footprint) -> SteinerTree:
        """A minimal tree realising footprint ``fp`` (leaves all terminals)."""
        adj = self.adj
        verts = fp.interior | self.smask
        extra = {self.tedges[i] for i in bits(fp.term_edges)}
        nbr: dict[int, set[int]] = {v: set() for v in bits(verts)}
        for v in bits(fp.interior):
            for w in bits(adj[v] & verts):
                nbr[v].add(w)
                nbr[w].add(v)
        for a, b in extra:
            nbr[a].add(b)
            nbr[b].add(a)
        root = self.terms[0]
        seen = {root}
        order = [root]
        edges = []
        for v in order:
            for w in sorted(nbr[v]):
                if w not in seen:
                    seen.add(w)
                    order.append(w)
                    edges.append((v, w))
        tree_adj: dict[int, set[int]] = {v: set() for v in seen}
        for a, b in edges:
            tree_adj[a].add(b)
            tree_adj[b].add(a)
        pruned = True
        while pruned:
            pruned = False
            for v in list(tree_adj):
                if not self.smask >> v & 1 and len(tree_adj[v]) <= 1:
                    for w in tree_adj.pop(v):
                        tree_adj[w].discard(v)
                    pruned = True
        return SteinerTree.from_edges((a, b) for a in tree_adj for b in tree_adj[a] if a < b)

    def search(self, target: int | None) -> list[_Footprint]:
        fps = self.footprints()
        if not fps:
            return []
        adj = self.adj
        terms = self.terms
        tedges = self.tedges
        terminal_edge_bits = [
            sum(1 << i for i, e in enumerate(tedges) if t in e) for t in terms
        ]
        best: list[_Footprint] = []
        stop = False

        def bound(avail_v: int, avail_f: int, usable: list[_Footprint]) -> int:
            cover = 0
            flat = 0
            for fp in usable:
                cover |= fp.interior
                if not fp.interior:
                    flat = 1
            ub = cover.bit_count() + flat
            for t, tb in zip(terms, terminal_edge_bits):
                slots = (adj[t] & avail_v & cover).bit_count() + (avail_f & tb).bit_count()
                if slots < ub:
                    ub = slots
            return ub

        def dfs(avail_v: int, avail_f: int, usable: list[_Footprint], chosen: list[_Footprint]) -> None:
            nonlocal best, stop
            if len(chosen) > len(best):
                best = list(chosen)
                if target is not None and len(best) >= target:
                    stop = True
                    return
            if not usable or len(chosen) + bound(avail_v, avail_f, usable) <= len(best):
                return
            cover = 0
            for fp in usable:
                cover |= fp.interior
            if not cover:
                # only all-terminal trees remain, and at most one of those fits
                chosen.append(usable[0])
                dfs(avail_v, avail_f, [], chosen)
                chosen.pop()
                return
            v = (cover & -cover).bit_length() - 1
            vb = 1 << v
            for fp in usable:
                if not fp.interior & vb:
                    continue
                nv = avail_v & ~fp.interior
                nf = avail_f & ~fp.term_edges
                rest = [
                    q for q in usable
                    if q.interior & ~nv == 0 and q.term_edges & ~nf == 0
                ]
                chosen.append(fp)
                dfs(nv, nf, rest, chosen)
                chosen.pop()
                if stop:
                    return
            dfs(avail_v & ~vb, avail_f, [q for q in usable if not q.interior & vb], chosen)

        dfs(self.pool, (1 << len(tedges)) - 1, fps, [])
        return best


# -- public operations -------------------------------------------------


def max_packing(g: Graph, s: Iterable[int], target: int | None = None) -> tuple[int, TreePacking]:
    """Maximum number of internally disjoint S-trees, with a certificate.

    With ``target`` the search stops as soon as ``target`` trees are packed;
    the returned count is then ``target`` (a lower bound on the maximum).
    """
    terms = terminal_tuple(g, s)
    _check_k(len(terms))
    if target is not None and target <= 0:
        return 0, TreePacking(terms)
    inst = _Instance(g, terms)
    if target is not None and bounds(g, terms).best() < target:
        # cannot reach the target; fall through to the exact value
        target = None
    chosen = inst.search(target)
    return len(chosen), TreePacking(terms, [inst.tree_for(fp) for fp in chosen])


def kappa_set(g: Graph, s: Iterable[int]) -> int:
    return max_packing(g, s)[0]


def has_packing(g: Graph, s: Iterable[int], target: int) -> bool:
    """Whether at least ``target`` internally disjoint S-trees exist."""
    terms = terminal_tuple(g, s)
    _check_k(len(terms))
    if bounds(g, terms).best() < target:
        return False
    return len(_Instance(g, terms).search(target)) >= target


def _subsets(g: Graph, k: int) -> Iterator[tuple[int, ...]]:
    _check_k(k)
    if k > g.n:
        raise UnsupportedTerminalSet(f"k={k} exceeds the order {g.n}")
    return combinations(range(g.n), k)


def kappa_k(g: Graph, k: int) -> int:
    """Minimum packing number over all ``k``-subsets."""
    return min(kappa_set(g, s) for s in _subsets(g, k))


def kappa_bar_k(g: Graph, k: int) -> int:
    """Maximum packing number over all ``k``-subsets."""
    best = 0
    top = g.n - k + k // 2
    for s in _subsets(g, k):
        if bounds(g, s).best() <= best:
            continue
        best = max(best, kappa_set(g, s))
        if best >= top:
            break
    return best


def find_witness(g: Graph, k: int, threshold: int) -> tuple[int, ...] | None:
    """First ``k``-subset (lexicographic) carrying ``threshold`` trees, if any."""
    for s in _subsets(g, k):
        if has_packing(g, s, threshold):
            return s
    return None


def kappa_bar_at_least(g: Graph, k: int, threshold: int) -> bool:
    return find_witness(g, k, threshold) is not None


# -- minimal tree enumeration ------------------------------------------


def _simple_paths(adj: tuple[int, ...], src: int, dst: int, allowed: int) -> Iterator[list[int]]:
    """Simple ``src``-``dst`` paths whose inner vertices lie in ``allowed``."""
    path = [src]
    on_path = 1 << src

    def walk(v: int) -> Iterator[list[int]]:
        nonlocal on_path
        if adj[v] >> dst & 1:
            yield path + [dst]
        for w in bits(adj[v] & allowed & ~on_path):
            path.append(w)
            on_path |= 1 << w
            yield from walk(w)
            path.pop()
            on_path &= ~(1 << w)

    yield from walk(src)


def _path_edges(path: list[int]) -> list[tuple[int, int]]:
    return list(zip(path, path[1:]))


def enumerate_minimal_trees(g: Graph, s: Iterable[int]) -> list[SteinerTree]:
    """Every S-tree of ``g`` whose leaves all lie in ``s``.

    For two terminals these are the simple paths.  For three they are either
    a path through all terminals or a subdivided star whose centre is a
    non-terminal vertex with three disjoint branches to the terminals.
    """
    terms = terminal_tuple(g, s)
    k = len(terms)
    _check_k(k)
    adj = g.adj
    smask = mask_of(terms)
    free = ((1 << g.n) - 1) & ~smask
    found: set[SteinerTree] = set()
    if k == 2:
        x, y = terms
        for p in _simple_paths(adj, x, y, free):
            found.add(SteinerTree.from_edges(_path_edges(p)))
        return sorted(found, key=_tree_order)
    for mid in terms:
        a, b = (t for t in terms if t != mid)
        for p1 in _simple_paths(adj, a, mid, free):
            used = mask_of(p1)
            for p2 in _simple_paths(adj, mid, b, free & ~used):
                found.add(SteinerTree.from_edges(_path_edges(p1) + _path_edges(p2)))
    a, b, c = terms
    for centre in bits(free):
        for pa in _simple_paths(adj, centre, a, free & ~(1 << centre)):
            used_a = mask_of(pa)
            for pb in _simple_paths(adj, centre, b, free & ~used_a):
                used_b = used_a | mask_of(pb)
                for pc in _simple_paths(adj, centre, c, free & ~used_b):
                    found.add(
                        SteinerTree.from_edges(_path_edges(pa) + _path_edges(pb) + _path_edges(pc))
                    )
    return sorted(found, key=_tree_order)


def _tree_order(t: SteinerTree) -> tuple:
    return (len(t.edges), t.edges)


# -- independent checks -------------------------------------------------


def verify_packing(g: Graph, cert: TreePacking) -> bool:
    """Validate a packing directly from the definition."""
    s = set(cert.terminals)
    if len(s) < 2 or any(not 0 <= v < g.n for v in s):
        return False
    vertex_sets = []
    edge_sets = []
    for tree in cert.trees:
        verts: set[int] = set()
        edges: set[frozenset[int]] = set()
        for u, v in tree.edges:
            if u == v or not (0 <= u < g.n and 0 <= v < g.n) or not g.adj[u] >> v & 1:
                return False
            edges.add(frozenset((u, v)))
            verts.update((u, v))
        if len(edges) != len(tree.edges):
            return False
        if not s <= verts or len(edges) != len(verts) - 1:
            return False
        # connected with |V| - 1 edges -> tree
        start = next(iter(verts))
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for e in edges:
                if x in e:
                    (y,) = e - {x}
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
        if seen != verts:
            return False
        vertex_sets.append(verts)
        edge_sets.append(edges)
    for i in range(len(vertex_sets)):
        for j in range(i + 1, len(vertex_sets)):
            if edge_sets[i] & edge_sets[j]:
                return False
            if vertex_sets[i] & vertex_sets[j] != s:
                return False
    return True


def menger_local_connectivity(g: Graph, x: int, y: int) -> int:
    """Maximum number of internally disjoint x-y paths, by unit-capacity max flow.

    Every vertex other than ``x`` and ``y`` is split into an in/out pair
    joined by a capacity-1 arc; the direct arc ``xy`` (if present) carries
    one path.
    """
    if x == y:
        raise GraphError("local connectivity needs two distinct vertices")
    g._check_vertex(x)
    g._check_vertex(y)
    n = g.n
    # node 2v is v_in, 2v+1 is v_out
    cap: dict[tuple[int, int], int] = {}
    out: dict[int, list[int]] = {i: [] for i in range(2 * n)}

    def arc(a: int, b: int, c: int) -> None:
        if (a, b) not in cap:
            out[a].append(b)
            out[b].append(a)
            cap.setdefault((b, a), 0)
        cap[(a, b)] = cap.get((a, b), 0) + c

    for v in range(n):
        arc(2 * v, 2 * v + 1, n if v in (x, y) else 1)
    for u, v in g.edges():
        arc(2 * u + 1, 2 * v, 1)
        arc(2 * v + 1, 2 * u, 1)
    source, sink = 2 * x + 1, 2 * y
    flow = 0
    while True:
        prev = {source: source}
        queue = [source]
        for a in queue:
            for b in out[a]:
                if b not in prev and cap[(a, b)] > 0:
                    prev[b] = a
                    queue.append(b)
        if sink not in prev:
            return flow
        b = sink
        while b != source:
            a = prev[b]
            cap[(a, b)] -= 1
            cap[(b, a)] += 1
            b = a
        flow += 1

import random
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from kappa3.canon import are_isomorphic
from kappa3.families import complete_graph, join, empty, path, wheel
from kappa3.graph import Graph, GraphError, MAX_VERTICES, bits, mask_of


def random_graph(rng, n, p=0.5):
    return Graph.from_edges(n, [e for e in combinations(range(n), 2) if rng.random() < p])


@st.composite
def graphs(draw, max_n=9):
    n = draw(st.integers(0, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, keep in zip(pairs, chosen) if keep])


def assert_well_formed(g):
    full = (1 << g.n) - 1
    for v, row in enumerate(g.adj):
        assert not row >> v & 1
        assert row & ~full == 0
        for u in bits(row):
            assert g.adj[u] >> v & 1


def test_triangle():
    g = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    assert g.edge_count() == 3
    assert g.degrees() == [2, 2, 2]


def test_k4_degrees():
    g = Graph.from_edges(4, combinations(range(4), 2))
    assert g.edge_count() == 6
    assert all(g.degree(v) == 3 for v in range(4))


def test_k4_plus_pendant_degree_sequence():
    edges = list(combinations(range(4), 2)) + [(3, 4)]
    g = Graph.from_edges(5, edges)
    assert g.edge_count() == 7
    assert sorted(g.degrees()) == [1, 3, 3, 3, 4]


def test_duplicates_collapse():
    g = Graph.from_edges(3, [(0, 1), (1, 0), (0, 1)])
    assert g.edges() == [(0, 1)]


@pytest.mark.parametrize(
    "n, edges",
    [(3, [(0, 0)]), (3, [(0, 3)]), (3, [(-1, 1)]), (MAX_VERTICES + 1, []), (-1, [])],
)
def test_from_edges_errors(n, edges):
    with pytest.raises(GraphError):
        Graph.from_edges(n, edges)


def test_direct_construction_validates():
    with pytest.raises(GraphError):
        Graph(2, (0b10, 0))  # asymmetric
    with pytest.raises(GraphError):
        Graph(2, (0b1, 0))  # loop


def test_connectivity_conventions():
    assert Graph.empty(0).is_connected()
    assert Graph.empty(1).is_connected()
    assert not Graph.empty(2).is_connected()
    assert complete_graph(4).is_connected()


def test_components():
    g = Graph.from_edges(5, [(0, 1), (3, 4)])
    assert sorted(g.components()) == [0b11, 0b100, 0b11000]


def test_wheel_hub_degree():
    assert wheel(5).degree(0) == 4


def test_vertex_out_of_range():
    g = complete_graph(3)
    with pytest.raises(GraphError):
        g.degree(3)
    with pytest.raises(GraphError):
        g.delete_vertex(5)


def test_delete_vertex_of_k4():
    k4 = complete_graph(4)
    for v in range(4):
        assert k4.delete_vertex(v) == complete_graph(3)


def test_add_vertex_to_k4_minus_edge():
    g = complete_graph(4).delete_edge(0, 1)
    high = mask_of(v for v in range(4) if g.degree(v) == 3)
    h = g.add_vertex_with_neighbors(high)
    assert h.n == 5 and h.edge_count() == 7
    assert are_isomorphic(h, join(complete_graph(2), empty(3)))


def test_add_edge_closes_path():
    assert path(3).add_edge(0, 2) == complete_graph(3)


def test_edge_edit_errors():
    with pytest.raises(GraphError):
        complete_graph(3).add_edge(0, 1)
    with pytest.raises(GraphError):
        path(3).delete_edge(0, 2)
    with pytest.raises(GraphError):
        path(3).add_edge(1, 1)
    with pytest.raises(GraphError):
        Graph.empty(MAX_VERTICES).add_vertex_with_neighbors(0)


def test_inputs_not_mutated():
    g = path(4)
    before = g.adj
    g.add_edge(0, 3)
    g.delete_edge(0, 1)
    g.add_vertex_with_neighbors(0b1010)
    g.delete_vertex(2)
    g.subdivide_edge(1, 2)
    assert g.adj == before


def test_subdivide():
    g = complete_graph(3).subdivide_edge(0, 1)
    assert g.n == 4 and g.edge_count() == 4
    assert not g.has_edge(0, 1) and g.has_edge(0, 3) and g.has_edge(1, 3)


def test_relabel_and_complement():
    rng = random.Random(7)
    for _ in range(50):
        n = rng.randint(1, 8)
        g = random_graph(rng, n)
        perm = list(range(n))
        rng.shuffle(perm)
        h = g.relabel(perm)
        assert {(min(perm[u], perm[v]), max(perm[u], perm[v])) for u, v in g.edges()} == set(h.edges())
        c = g.complement()
        assert c.edge_count() + g.edge_count() == n * (n - 1) // 2
        assert c.complement() == g


@given(graphs(), st.integers(0, 2**9 - 1))
def test_delete_undoes_add(g, raw):
    nbrs = raw & ((1 << g.n) - 1)
    h = g.add_vertex_with_neighbors(nbrs)
    assert_well_formed(h)
    assert h.delete_vertex(g.n) == g


@given(graphs(), st.data())
def test_edits_keep_symmetry(g, data):
    if g.n < 2:
        return
    u, v = data.draw(st.sampled_from(list(combinations(range(g.n), 2))))
    h = g.delete_edge(u, v) if g.has_edge(u, v) else g.add_edge(u, v)
    assert_well_formed(h)
    assert abs(h.edge_count() - g.edge_count()) == 1
    assert_well_formed(g.delete_vertex(u))
    if g.has_edge(u, v):
        assert_well_formed(g.subdivide_edge(u, v))
    assert_well_formed(g.complement())


@given(graphs())
def test_components_partition(g):
    comps = g.components()
    assert sum(c.bit_count() for c in comps) == g.n
    union = 0
    for c in comps:
        assert union & c == 0
        union |= c
    assert g.is_connected() == (len(comps) <= 1)

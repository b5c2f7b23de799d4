import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chromabound.chromatic import count_colourings_bruteforce
from chromabound.graph import (
    Graph,
    Graph6Error,
    add_edge,
    canonical_key,
    chromatic_number,
    clique_number,
    complement,
    component_masks,
    contract_edge,
    delete_edge,
    delete_vertex,
    enumerate_unlabeled,
    find_colouring,
    has_clique,
    has_independent_set,
    identify,
    is_connected,
    is_edge_critical,
    is_isomorphic,
    is_vertex_critical,
    join,
    parse_graph6,
    relabel,
    to_graph6,
)


@st.composite
def graphs(draw, min_n=0, max_n=9):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    bits = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, b in zip(pairs, bits) if b])


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def test_graph6_star():
    assert sorted(parse_graph6("D?{").edges()) == [(0, 4), (1, 4), (2, 4), (3, 4)]


def test_graph6_edge_count_matches_bits():
    # every set bit of the body is exactly one edge
    g = parse_graph6("DUW")
    ones = sum(bin(ord(c) - 63).count("1") for c in "UW")
    assert g.m == ones


@settings(max_examples=200)
@given(graphs(max_n=20))
def test_graph6_matches_networkx(g):
    code = to_graph6(g)
    assert code.encode() == nx.to_graph6_bytes(to_nx(g), header=False).strip()
    h = nx.from_graph6_bytes(code.encode())
    assert sorted(tuple(sorted(e)) for e in h.edges()) == sorted(g.edges())
    assert parse_graph6(code) == g


def test_graph6_header_accepted():
    assert parse_graph6(">>graph6<<D?{") == parse_graph6("D?{")


@pytest.mark.parametrize(
    "text, offset",
    [("D?{ ", 3), ("D?", 2), ("D?{?", 3), ("", 0), ("~?", 0), ("D?|", 2)],
)
def test_graph6_errors_carry_offset(text, offset):
    with pytest.raises(Graph6Error) as err:
        parse_graph6(text)
    assert err.value.offset == offset
    assert "offset" in str(err.value)


def test_graph_validation():
    with pytest.raises(ValueError):
        Graph(2, (2, 0))
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(1, 1)])
    with pytest.raises(ValueError):
        Graph(33, (0,) * 33)


def test_delete_vertex_compacts_in_order():
    g = Graph.from_edges(5, [(0, 4), (1, 3), (2, 4)])
    h = delete_vertex(g, 2)
    assert sorted(h.edges()) == [(0, 3), (1, 2)]


def test_contract_merges_parallel_edges():
    # triangle 0-1-2 plus 2-3: contracting 0-1 leaves a single 0-1 edge (old 0-2 and 1-2 merged)
    g = Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (2, 3)])
    h = contract_edge(g, 0, 1)
    assert h.n == 3
    assert sorted(h.edges()) == [(0, 1), (1, 2)]


def test_identify_non_adjacent():
    g = Graph.path(3)
    h = identify(g, 0, 2)
    assert h.n == 2 and h.edges() == [(0, 1)]
    with pytest.raises(ValueError):
        contract_edge(g, 0, 2)


@given(graphs(min_n=2), st.data())
def test_identify_matches_networkx(g, data):
    u, v = data.draw(st.lists(st.integers(0, g.n - 1), min_size=2, max_size=2, unique=True))
    h = identify(g, u, v)
    ref = nx.contracted_nodes(to_nx(g), u, v, self_loops=False)
    ref = nx.convert_node_labels_to_integers(ref, ordering="sorted")
    assert nx.is_isomorphic(to_nx(h), ref)
    assert h.m == ref.number_of_edges()


def test_delete_and_add_edge():
    g = Graph.cycle(4)
    assert delete_edge(g, 0, 1).m == 3
    assert add_edge(g, 0, 2).m == 5
    with pytest.raises(ValueError):
        delete_edge(g, 0, 2)


@given(graphs())
def test_components_match_networkx(g):
    assert len(component_masks(g)) == nx.number_connected_components(to_nx(g))
    assert is_connected(g) == (g.n <= 1 or nx.is_connected(to_nx(g)))


@settings(max_examples=150)
@given(graphs(max_n=12), st.randoms())
def test_canonical_key_is_invariant(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    assert canonical_key(relabel(g, perm)) == canonical_key(g)


@settings(max_examples=150)
@given(graphs(min_n=1, max_n=7), graphs(min_n=1, max_n=7))
def test_canonical_key_separates_classes(a, b):
    if a.n == b.n:
        assert (canonical_key(a) == canonical_key(b)) == nx.is_isomorphic(to_nx(a), to_nx(b))


def test_canonical_key_on_symmetric_graphs():
    qr = {(i * i) % 13 for i in range(1, 13)}
    paley = Graph.from_edges(13, [(i, j) for i in range(13) for j in range(i + 1, 13) if (j - i) % 13 in qr])
    rng = random.Random(1)
    for g in [Graph.empty(13), Graph.complete(13), Graph.cycle(13), paley]:
        perm = list(range(13))
        rng.shuffle(perm)
        assert canonical_key(g) == canonical_key(relabel(g, perm))
    assert not is_isomorphic(paley, Graph.cycle(13))


@pytest.mark.parametrize("n, count", [(0, 1), (1, 1), (2, 2), (3, 4), (4, 11), (5, 34), (6, 156), (7, 1044)])
def test_enumerate_unlabeled_counts(n, count):
    assert len(enumerate_unlabeled(n)) == count


@pytest.mark.parametrize("n", [3, 4, 5])
def test_enumerate_unlabeled_against_labeled_bruteforce(n):
    pairs = list(itertools.combinations(range(n), 2))
    keys = set()
    for mask in range(1 << len(pairs)):
        edges = [e for i, e in enumerate(pairs) if mask >> i & 1]
        keys.add(min(
            tuple(sorted(tuple(sorted((p[a], p[b]))) for a, b in edges))
            for p in itertools.permutations(range(n))
        ))
    assert len(keys) == len(enumerate_unlabeled(n))


def test_enumerate_unlabeled_limits():
    with pytest.raises(ValueError):
        enumerate_unlabeled(8)


def brute_chi(g):
    return next(x for x in range(g.n + 1) if count_colourings_bruteforce(g, x) > 0)


@pytest.mark.parametrize("n", range(1, 7))
def test_chromatic_number_exhaustive(n):
    for g in enumerate_unlabeled(n):
        assert chromatic_number(g) == brute_chi(g)


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=7, max_n=9))
def test_chromatic_number_random(g):
    assert chromatic_number(g) == brute_chi(g)


@given(graphs(max_n=10), st.integers(1, 5))
def test_find_colouring_is_proper(g, k):
    col = find_colouring(g, k)
    if col is not None:
        assert all(col[u] != col[v] for u, v in g.edges())
        assert max(col, default=0) < k
    else:
        assert chromatic_number(g) > k


@given(graphs(max_n=9), st.integers(0, 6))
def test_clique_search_matches_bruteforce(g, k):
    brute = any(
        all(g.has_edge(a, b) for a, b in itertools.combinations(s, 2))
        for s in itertools.combinations(range(g.n), k)
    )
    assert has_clique(g, k) == brute
    assert has_independent_set(complement(g), k) == brute
    assert clique_number(g) == max((len(c) for c in nx.find_cliques(to_nx(g))), default=0)


def test_criticality_examples():
    k5 = Graph.complete(5)
    assert is_edge_critical(k5, 5) and is_vertex_critical(k5, 5)
    c5 = Graph.cycle(5)
    assert is_edge_critical(c5, 3)
    assert is_edge_critical(join(c5, Graph.complete(2)), 5)
    pendant = Graph.from_edges(6, k5.edges() + [(4, 5)])
    assert not is_edge_critical(pendant, 5) and not is_vertex_critical(pendant, 5)
    assert not is_edge_critical(Graph.from_edges(6, k5.edges()), 5)

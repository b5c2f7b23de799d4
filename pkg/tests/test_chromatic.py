import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import chromabound.chromatic as chromatic
from chromabound.chromatic import (
    CacheCorruptionError,
    PolyCache,
    PreconditionError,
    count_colourings_bruteforce,
    independent_partition_counts,
    q_poly,
    q_poly_from_partitions,
    verify_bound,
)
from chromabound.graph import Graph, canonical_form, delete_edge, enumerate_unlabeled, identify, to_graph6
from chromabound.pipeline import extremal_family
from chromabound.poly import IntPoly, bound_poly, parse_poly

from test_graph import graphs


def random_tree(n, rng):
    return Graph.from_edges(n, [(rng.randrange(v), v) for v in range(1, n)])


def test_clique_closed_form():
    assert q_poly(Graph.complete(5)) == IntPoly.from_roots([-1, 0, 1, 2, 3])


@pytest.mark.parametrize("n", [1, 2, 5, 9, 14])
def test_trees(n):
    t = random_tree(n, random.Random(n))
    assert q_poly(t) == IntPoly([1, 1]) * IntPoly.monomial(n - 1)


def test_c5_interpolated_from_counts():
    # the counts at x = 1..6 determine the degree-5 polynomial
    c5 = Graph.cycle(5)
    counts = [count_colourings_bruteforce(c5, x) for x in range(1, 7)]
    assert counts == [(x - 1) ** 5 - (x - 1) for x in range(1, 7)]
    assert q_poly(c5) == parse_poly("y^5 - y")


@pytest.mark.parametrize("n, seed", [(6, 0), (9, 3), (12, 7), (15, 1)])
def test_clique_with_trees_meets_bound(n, seed):
    assert q_poly(extremal_family(n, seed)) == bound_poly(5, n)


@pytest.mark.parametrize("n", range(1, 7))
def test_oracle_exhaustive_small(n):
    for g in enumerate_unlabeled(n):
        q = q_poly(g)
        for x in range(1, 7):
            assert q(x - 1) == count_colourings_bruteforce(g, x)


@settings(max_examples=80, deadline=None)
@given(graphs(min_n=2, max_n=9), st.data())
def test_deletion_contraction_identity(g, data):
    if not g.m:
        return
    u, v = data.draw(st.sampled_from(g.edges()))
    assert q_poly(g) == q_poly(delete_edge(g, u, v)) - q_poly(identify(g, u, v))


@settings(max_examples=80, deadline=None)
@given(graphs(min_n=1, max_n=10))
def test_shape_of_q(g):
    q = q_poly(g)
    assert q.degree == g.n and q.leading == 1
    assert q(-1) == 0
    # P(x) has alternating signs, so Q(y - 1) = P(y) does too
    p = q.compose_shift(-1)
    assert all(c * (-1) ** (g.n - i) >= 0 for i, c in enumerate(p.coeffs))


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=1, max_n=10))
def test_agrees_with_partition_expansion(g):
    assert q_poly(g) == q_poly_from_partitions(g)


def test_independent_partition_counts_of_empty_graph_are_stirling():
    assert independent_partition_counts(Graph.empty(4)) == [0, 1, 7, 6, 1]


@settings(max_examples=40, deadline=None)
@given(graphs(min_n=1, max_n=10))
def test_branching_rule_is_unobservable(g):
    with_addition = q_poly(g)
    chromatic.DENSE_ADDITION = False
    try:
        assert q_poly(g) == with_addition
    finally:
        chromatic.DENSE_ADDITION = True


@settings(max_examples=40, deadline=None)
@given(graphs(min_n=1, max_n=10))
def test_cache_transparency(g):
    shared = PolyCache()
    assert q_poly(g, shared) == q_poly(g, PolyCache())
    assert q_poly(g, shared) == q_poly(g)


def test_cache_file_round_trip(tmp_path):
    path = tmp_path / "q.cache"
    c = PolyCache(path)
    rng = random.Random(0)
    gs = [Graph.from_edges(9, [e for e in itertools.combinations(range(9), 2) if rng.random() < 0.5]) for _ in range(5)]
    want = [q_poly(g, c) for g in gs]
    written = c.flush()
    assert written == len(c) > 0
    reloaded = PolyCache(path, audit=10)
    assert len(reloaded) == len(c)
    assert [q_poly(g, reloaded) for g in gs] == want
    assert reloaded.misses == 0


def test_cache_skips_corrupt_lines(tmp_path):
    path = tmp_path / "q.cache"
    k5 = to_graph6(canonical_form(Graph.complete(5)))
    good = ",".join(str(c) for c in q_poly(Graph.complete(5)).coeffs)
    path.write_text(f"{k5}\t{good}\nnot a record\n{k5}\t1,2,x\nD??\t1,1\n")
    c = PolyCache(path, audit=0)
    assert c.corrupt_lines == 3
    assert len(c) == 1


def test_cache_audit_catches_tampering(tmp_path):
    path = tmp_path / "q.cache"
    key = to_graph6(canonical_form(Graph.cycle(6)))
    path.write_text(f"{key}\t0,0,0,0,0,0,1\n")
    with pytest.raises(CacheCorruptionError):
        PolyCache(path, audit=1)


def test_bruteforce_limits():
    assert count_colourings_bruteforce(Graph.complete(3), 3) == 6
    assert count_colourings_bruteforce(Graph.path(3), 2) == 2
    with pytest.raises(ValueError):
        count_colourings_bruteforce(Graph.empty(11), 2)
    with pytest.raises(ValueError):
        count_colourings_bruteforce(Graph.empty(3), 9)


def test_verify_bound_k5_equality():
    v = verify_bound(Graph.complete(5), 5)
    assert v.status == "equality"


def test_verify_bound_odd_cycle_violation():
    v = verify_bound(Graph.cycle(5), 3)
    assert v.status == "violation" and v.witness == 3
    assert q_poly(Graph.cycle(5))(3) > bound_poly(3, 5)(3)


def test_verify_bound_strict_certificate():
    g = Graph.from_edges(6, Graph.complete(5).edges() + [(4, 5), (3, 5)])
    v = verify_bound(g, 5)
    assert v.status == "strict" and v.certificate == "ll"


def test_verify_bound_preconditions():
    with pytest.raises(PreconditionError):
        verify_bound(Graph.complete(4), 5)
    with pytest.raises(PreconditionError):
        verify_bound(Graph.from_edges(6, Graph.complete(5).edges()), 5)

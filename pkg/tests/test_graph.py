from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from conftest import curve, rep_of
from vpgsplit.generate import InstanceSpec, generate_instance
from vpgsplit.graph import (
    CLIQUE,
    COLORING,
    COVER,
    WIS,
    CapExceeded,
    brute_force_solve,
    build_intersection_graph,
    graph_from_edges,
    induced_subgraph,
    is_valid_solution,
    naive_intersection_edges,
    set_solution,
)


def test_disjoint_and_contact():
    G = build_intersection_graph(rep_of(curve((0, 0), (0, 2), id=0), curve((3, 0), (3, 2), id=1)))
    assert G.n == 2 and G.edges() == []
    G = build_intersection_graph(rep_of(curve((0, 0), (0, 2), id=0), curve((0, 2), (3, 2), id=1)))
    assert G.edges() == [(0, 1)]


@given(st.integers(0, 10_000), st.sampled_from(["b2", "single-vertical", "b2-1string"]))
def test_graph_matches_naive_tester(seed, kind):
    rep = generate_instance(InstanceSpec(kind, 12, seed=seed))
    assert build_intersection_graph(rep).edge_set() == naive_intersection_edges(rep)


def test_induced_examples():
    P4 = graph_from_edges([1, 2, 3, 4], [(1, 2), (2, 3), (3, 4)])
    assert induced_subgraph(P4, P4.vertices).edge_set() == P4.edge_set()
    assert induced_subgraph(P4, []).n == 0
    assert induced_subgraph(P4, {1, 3}).edges() == []
    assert induced_subgraph(P4, {2, 3}).edges() == [(2, 3)]
    with pytest.raises(KeyError):
        induced_subgraph(P4, {9})


def test_brute_force_examples():
    w = {0: 2, 1: 5, 2: 3}
    assert brute_force_solve(graph_from_edges([0, 1, 2], [], w), WIS).value == 10
    K3 = graph_from_edges([0, 1, 2], [(0, 1), (1, 2), (0, 2)], w)
    assert brute_force_solve(K3, WIS).value == 5
    assert brute_force_solve(K3, CLIQUE).value == 10
    assert brute_force_solve(K3, COLORING).value == 3
    assert brute_force_solve(K3, COVER).value == 1


def _rand_graph(rng, n, p):
    edges = [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p]
    return graph_from_edges(range(n), edges, {v: rng.randint(1, 9) for v in range(n)})


def test_wis_against_independent_enumerator():
    import random

    rng = random.Random(4)
    for _ in range(20):
        G = _rand_graph(rng, 8, 0.4)
        best = 0
        for r in range(9):
            for S in combinations(range(8), r):
                if all(not G.has_edge(u, v) for u, v in combinations(S, 2)):
                    best = max(best, sum(G.weights[v] for v in S))
        sol = brute_force_solve(G, WIS)
        assert sol.value == best and is_valid_solution(G, sol)


def test_coloring_and_cover_are_valid():
    import random

    rng = random.Random(9)
    for _ in range(20):
        G = _rand_graph(rng, 9, 0.5)
        for p in (COLORING, COVER):
            assert is_valid_solution(G, brute_force_solve(G, p))


def test_cap_and_invalid_payloads():
    G = graph_from_edges(range(21), [])
    with pytest.raises(CapExceeded):
        brute_force_solve(G, WIS)
    K2 = graph_from_edges([0, 1], [(0, 1)])
    assert not is_valid_solution(K2, set_solution(WIS, K2, [0, 1]))
    assert set_solution(WIS, K2, [1]).value == Fraction(1)

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from vpgsplit.graph import (
    CLIQUE,
    COLORING,
    COVER,
    WIS,
    CapExceeded,
    brute_force_solve,
    graph_from_edges,
    is_valid_solution,
)
from vpgsplit.solvers import (
    Dim3Instance,
    PermInstance,
    PermutationError,
    branch_and_bound_mwis,
    dim3_max_weight_clique,
    max_weight_antichain,
    perm_max_weight_clique,
    perm_min_clique_cover,
    perm_min_coloring,
    perm_mwis,
)


@st.composite
def perm_instances(draw, k=2, max_n=12):
    n = draw(st.integers(1, max_n))
    ids = list(range(n))
    perms = [draw(st.permutations(ids)) for _ in range(k)]
    weights = {v: draw(st.integers(1, 50)) for v in ids}
    return perms, weights


def test_identity_and_reverse():
    w = {0: 2, 1: 5, 2: 3}
    same = PermInstance((0, 1, 2), (0, 1, 2), w)
    rev = PermInstance((0, 1, 2), (2, 1, 0), w)
    assert perm_mwis(same).value == 10 and perm_mwis(rev).value == 5
    assert perm_max_weight_clique(same).value == 5 and perm_max_weight_clique(rev).value == 10
    assert perm_min_coloring(same).value == 1 and perm_min_coloring(rev).value == 3
    assert perm_min_clique_cover(same).value == 3 and perm_min_clique_cover(rev).value == 1


def test_dim3_examples():
    w = {0: 2, 1: 5, 2: 3}
    chain = Dim3Instance((0, 1, 2), (0, 1, 2), (0, 1, 2), w)
    assert dim3_max_weight_clique(chain).payload == (1,)
    anti = Dim3Instance((0, 1, 2), (2, 1, 0), (0, 1, 2), w)
    assert dim3_max_weight_clique(anti).value == 10


def test_bad_permutation():
    with pytest.raises(PermutationError):
        PermInstance((0, 1), (0, 0), {0: 1, 1: 1})


@given(perm_instances())
def test_perm_solvers_match_oracle(inst):
    (p1, p2), w = inst
    pi = PermInstance(p1, p2, w)
    G = pi.graph()
    for solve, prob in (
        (perm_mwis, WIS),
        (perm_max_weight_clique, CLIQUE),
        (perm_min_coloring, COLORING),
        (perm_min_clique_cover, COVER),
    ):
        got = solve(pi)
        assert is_valid_solution(G, got)
        assert got.value == brute_force_solve(G, prob).value


@given(perm_instances(k=3, max_n=13))
def test_dim3_clique_matches_oracle(inst):
    perms, w = inst
    di = Dim3Instance(*perms, w)
    G = di.graph()
    got = dim3_max_weight_clique(di)
    assert is_valid_solution(G, got)
    assert got.value == brute_force_solve(G, CLIQUE).value


def test_antichain_with_fractional_weights():
    # divisibility order on 1..12
    ids = list(range(1, 13))
    w = {v: Fraction(1, v) for v in ids}
    anti = max_weight_antichain(ids, lambda a, b: a != b and b % a == 0, w)
    comparable = [(a, b) for a in ids for b in ids if a < b and b % a == 0]
    opt = brute_force_solve(graph_from_edges(ids, comparable, w), WIS)
    assert all(a == b or (b % a and a % b) for a in anti for b in anti)
    assert sum(w[v] for v in anti) == opt.value


@given(st.integers(1, 15), st.data())
def test_branch_and_bound_matches_oracle(n, data):
    edges = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if data.draw(st.booleans(), label=f"e{u},{v}")
    ]
    w = {v: data.draw(st.integers(0, 30)) for v in range(n)}
    G = graph_from_edges(range(n), edges, w)
    got = branch_and_bound_mwis(G)
    assert is_valid_solution(G, got)
    assert got.value == brute_force_solve(G, WIS).value


def test_branch_and_bound_cap():
    with pytest.raises(CapExceeded):
        branch_and_bound_mwis(graph_from_edges(range(5), []), cap=4)

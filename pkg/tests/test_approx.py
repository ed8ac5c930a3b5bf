from dataclasses import replace
from fractions import Fraction

from hypothesis import given, strategies as st

from conftest import curve, rep_of, sv
from vpgsplit.approx import (
    approx_clique_cover,
    approx_coloring,
    approx_weighted_clique,
    approx_wis,
    dim3_greedy_clique_cover,
    wis_solver_for,
)
from vpgsplit.generate import InstanceSpec, generate_instance
from vpgsplit.graph import (
    CLIQUE,
    COLORING,
    COVER,
    WIS,
    brute_force_solve,
    build_intersection_graph,
    graph_from_edges,
    is_valid_solution,
)
from vpgsplit.solvers import Dim3Instance, branch_and_bound_mwis


def gen(kind, n, seed, w=(1, 100)):
    return generate_instance(InstanceSpec(kind, n, weights=w, seed=seed))


def test_wis_single_and_edgeless():
    r = approx_wis(rep_of(sv(0, 0, 1, w=7)))
    assert r.solution.payload == (0,) and r.k == 1
    rep = rep_of(*(sv(3 * i, i, i + 1, id=i, w=i + 1) for i in range(9)))
    r = approx_wis(rep)
    assert r.solution.value * r.k >= sum(range(1, 10))


@given(st.integers(0, 10_000), st.integers(1, 16), st.sampled_from(["single-vertical", "b2"]))
def test_wis_pigeonhole(seed, n, kind):
    rep = gen(kind, n, seed)
    G = build_intersection_graph(rep)
    r = approx_wis(rep, G)
    assert is_valid_solution(G, r.solution)
    assert r.k <= r.factor
    assert r.solution.value * r.k >= brute_force_solve(G, WIS).value


@given(st.integers(0, 10_000), st.integers(1, 14))
def test_wis_weight_scaling(seed, n):
    rep = gen("single-vertical", n, seed)
    doubled = replace(rep, objects=tuple(replace(o, weight=2 * o.weight) for o in rep.objects))
    a, b = approx_wis(rep), approx_wis(doubled)
    assert b.solution.value == 2 * a.solution.value
    assert b.solution.payload == a.solution.payload


def test_clique_single_object():
    r = approx_weighted_clique(rep_of(curve((0, 0), (0, 3), w=4)))
    assert r.solution.payload == (0,)


def test_clique_comb():
    # every foot runs right under all later verticals: pairwise crossing
    rep = rep_of(
        *(curve((i, 10 + i), (i, -i), (20, -i), id=i, w=i + 1) for i in range(7)), flags={"b2"}
    )
    G = build_intersection_graph(rep)
    assert len(G.edges()) == 21
    r = approx_weighted_clique(rep, G=G)
    # the cornering step splits this clique by the median, so only the
    # pigeonhole guarantee applies
    assert brute_force_solve(G, CLIQUE).value == 28
    assert r.solution.value * r.k >= 28


@given(st.integers(0, 10_000), st.integers(1, 14), st.sampled_from(["b1", "b2"]))
def test_clique_pigeonhole(seed, n, kind):
    rep = gen(kind, n, seed)
    G = build_intersection_graph(rep)
    r = approx_weighted_clique(rep, pipeline="b1" if kind == "b1" else "b2", G=G)
    assert r.k <= r.factor
    assert r.solution.value * r.k >= brute_force_solve(G, CLIQUE).value


def test_cover_edgeless_and_dim3_chain():
    rep = rep_of(*(curve((3 * i, i), (3 * i, i + 1), id=i) for i in range(5)), flags={"b2"})
    assert approx_clique_cover(rep).solution.value == 5
    inst = Dim3Instance((0, 1, 2, 3), (3, 2, 1, 0), (0, 1, 2, 3), {v: 1 for v in range(4)})
    assert dim3_greedy_clique_cover(inst).value == 1


@given(st.integers(0, 10_000), st.integers(1, 12))
def test_cover_onestring(seed, n):
    rep = gen("b2-1string", n, seed)
    G = build_intersection_graph(rep)
    r = approx_clique_cover(rep, onestring=True, G=G)
    assert is_valid_solution(G, r.solution)
    assert r.solution.value <= r.k * brute_force_solve(G, COVER).value


def _exact(H):
    return branch_and_bound_mwis(replace(H, weights={v: Fraction(1) for v in H.vertices}))


def test_coloring_trivial_graphs():
    empty = graph_from_edges(range(6), [])
    assert approx_coloring(empty, _exact).solution.value == 1
    K = graph_from_edges(range(5), [(u, v) for u in range(5) for v in range(u + 1, 5)])
    assert approx_coloring(K, _exact).solution.value == 5


@given(st.integers(0, 10_000), st.integers(1, 12))
def test_coloring_peeling(seed, n):
    rep = gen("single-vertical", n, seed)
    G = build_intersection_graph(rep)
    r = approx_coloring(G, wis_solver_for(rep))
    assert is_valid_solution(G, r.solution)
    assert brute_force_solve(G, COLORING).value <= r.solution.value <= n

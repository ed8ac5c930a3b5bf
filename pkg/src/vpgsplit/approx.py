"""Approximations that solve every part exactly and combine the answers."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

from .decompose import (
    Decomposition,
    Dim3Triple,
    PermutationPair,
    decompose_b1_full,
    decompose_b2_full,
    log_bound,
    split_b2_outerstring,
    split_single_vertical_outerstring,
)
from .geometry import Representation, is_single_vertical
from .graph import (
    CLIQUE,
    WIS,
    WeightedGraph,
    build_intersection_graph,
    coloring_solution,
    cover_solution,
    induced_subgraph,
    solution_errors,
)
from .solvers import (
    OUTERSTRING_CAP,
    Dim3Instance,
    PermInstance,
    dim3_max_weight_clique,
    outerstring_mwis,
    perm_max_weight_clique,
    perm_min_clique_cover,
)


@dataclass(frozen=True)
class ApproxResult:
    solution: object
    k: int
    factor: float
    formula: str
    sub_solutions: tuple = ()
    decomposition: Decomposition | None = field(default=None, repr=False)
    notes: tuple = ()


def _check(G, sol):
    errs = solution_errors(G, sol)
    if errs:
        raise AssertionError("combined solution invalid: " + "; ".join(errs[:3]))
    return sol


def _heaviest(subs):
    """First sub-solution of maximum value."""
    best = None
    for s in subs:
        if best is None or s.value > best.value:
            best = s
    return best


def outerstring_decomposition(rep: Representation) -> Decomposition:
    if is_single_vertical(rep) and "b2" not in rep.flags:
        return split_single_vertical_outerstring(rep)
    return split_b2_outerstring(rep)


def approx_wis(rep: Representation, G: WeightedGraph | None = None, cap=OUTERSTRING_CAP) -> ApproxResult:
    """Heaviest of the exact per-part independent sets of an outerstring
    decomposition (B2 input goes through the split by vertical count)."""
    G = build_intersection_graph(rep) if G is None else G
    dec = outerstring_decomposition(rep)
    subs = tuple(outerstring_mwis(p, G, cap=cap) for p in dec.parts)
    n = len(rep.objects)
    if dec.strategy == "b2-outerstring":
        formula, factor = "4*log2(n)", log_bound(n, 4, 1)
    else:
        formula, factor = "2*log2(n)", log_bound(n, 2, 1)
    best = _heaviest(subs) or _empty(WIS)
    return ApproxResult(_check(G, best), len(dec.parts), factor, formula, subs, dec)


def _empty(problem):
    from .graph import Solution

    return Solution(problem, (), Fraction(0))


def _full_decomposition(rep, onestring, pipeline):
    if pipeline == "b1":
        return decompose_b1_full(rep), "4*log2(n)^2", (4, 2)
    if pipeline == "b2":
        return decompose_b2_full(rep, onestring), "8*log2(n)^3", (8, 3)
    raise ValueError(f"unknown pipeline {pipeline!r}")


def _part_weights(G, members):
    return {v: G.weights[v] for v in members}


def approx_weighted_clique(rep: Representation, onestring=False, pipeline="b2", G=None) -> ApproxResult:
    """Heaviest of the exact per-part maximum-weight cliques."""
    G = build_intersection_graph(rep) if G is None else G
    dec, formula, (f, p) = _full_decomposition(rep, onestring, pipeline)
    subs = []
    for part in dec.parts:
        c = part.cert
        w = _part_weights(G, part.members)
        if isinstance(c, PermutationPair):
            subs.append(perm_max_weight_clique(PermInstance(c.p1, c.p2, w)))
        elif isinstance(c, Dim3Triple):
            subs.append(dim3_max_weight_clique(Dim3Instance(c.p1, c.p2, c.p3, w)))
        else:
            raise TypeError(f"unexpected certificate {c.kind}")
    best = _heaviest(subs) or _empty(CLIQUE)
    n = len(rep.objects)
    return ApproxResult(_check(G, best), len(dec.parts), log_bound(n, f, p), formula, tuple(subs), dec)


def dim3_greedy_clique_cover(inst: Dim3Instance):
    """Cover by repeatedly removing a maximum (unit-weight) clique."""
    left = list(inst.p1)
    cliques = []
    while left:
        keep = set(left)
        sub = Dim3Instance(
            *(tuple(v for v in p if v in keep) for p in inst.perms),
            {v: 1 for v in left},
        )
        c = dim3_max_weight_clique(sub).payload
        cliques.append(c)
        gone = set(c)
        left = [v for v in left if v not in gone]
    return cover_solution(cliques)


def approx_clique_cover(rep: Representation, onestring=False, pipeline="b2", G=None) -> ApproxResult:
    """Union of per-part clique covers.  Permutation parts are covered
    optimally; dimension-3 parts by greedy clique removal."""
    G = build_intersection_graph(rep) if G is None else G
    dec, formula, (f, p) = _full_decomposition(rep, onestring, pipeline)
    subs, cliques, greedy = [], [], False
    for part in dec.parts:
        c = part.cert
        w = {v: 1 for v in part.members}
        if isinstance(c, PermutationPair):
            s = perm_min_clique_cover(PermInstance(c.p1, c.p2, w))
        elif isinstance(c, Dim3Triple):
            s = dim3_greedy_clique_cover(Dim3Instance(c.p1, c.p2, c.p3, w))
            greedy = True
        else:
            raise TypeError(f"unexpected certificate {c.kind}")
        subs.append(s)
        cliques.extend(s.payload)
    notes = ("dimension-3 parts covered greedily",) if greedy else ()
    n = len(rep.objects)
    sol = cover_solution(cliques)
    return ApproxResult(_check(G, sol), len(dec.parts), log_bound(n, f, p), formula, tuple(subs), dec, notes)


def wis_solver_for(rep: Representation, unit=True):
    """Independent-set routine on induced subgraphs of ``rep``'s graph,
    backed by :func:`approx_wis` on the matching sub-representation."""

    def solve(H: WeightedGraph):
        sub = rep.subset(H.vertices)
        if unit:
            sub = replace(sub, objects=tuple(replace(o, weight=1) for o in sub.objects))
        return approx_wis(sub).solution

    return solve


def approx_coloring(G: WeightedGraph, is_solver, factor_c=1.0) -> ApproxResult:
    """Peel independent sets off the remaining graph, one color each."""
    left = list(G.vertices)
    coloring, classes = {}, []
    while left:
        H = induced_subgraph(G, left)
        s = is_solver(H)
        cls = tuple(s.payload)
        if not cls:
            # a solver may return an empty set on a non-empty graph; fall
            # back to a single vertex so that peeling terminates
            cls = (left[0],)
        errs = solution_errors(H, replace(s, payload=cls, value=sum(H.weights[v] for v in cls)))
        if errs:
            raise AssertionError("independent-set routine returned an invalid set: " + errs[0])
        classes.append(cls)
        for v in cls:
            coloring[v] = len(classes)
        gone = set(cls)
        left = [v for v in left if v not in gone]
    sol = coloring_solution(coloring)
    factor = factor_c * log_bound(G.n, 1, 1)
    return ApproxResult(_check(G, sol), len(classes), factor, "c*log2(n)", tuple(classes))

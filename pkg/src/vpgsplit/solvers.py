"""Exact solvers on permutation graphs, dimension-3 co-comparability graphs
and (by branch and bound) on outerstring parts."""
from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import networkx as nx

from .graph import (
    CLIQUE,
    WIS,
    CapExceeded,
    Solution,
    WeightedGraph,
    coloring_solution,
    cover_solution,
    induced_subgraph,
    set_solution,
)


class PermutationError(ValueError):
    pass


def _positions(order, ids):
    pos = {v: i for i, v in enumerate(order)}
    if len(pos) != len(order) or set(pos) != set(ids):
        raise PermutationError("order is not a permutation of the instance ids")
    return pos


@dataclass(frozen=True)
class PermInstance:
    """Permutation graph: ``u``-``v`` is an edge iff ``p1`` and ``p2`` list
    the two in opposite order."""

    p1: tuple
    p2: tuple
    weights: dict

    def __post_init__(self):
        object.__setattr__(self, "p1", tuple(self.p1))
        object.__setattr__(self, "p2", tuple(self.p2))
        _positions(self.p1, self.weights)
        _positions(self.p2, self.weights)

    @property
    def ids(self):
        return tuple(sorted(self.p1))

    def graph(self):
        return disagreement_graph([self.p1, self.p2], self.weights)


@dataclass(frozen=True)
class Dim3Instance:
    p1: tuple
    p2: tuple
    p3: tuple
    weights: dict

    def __post_init__(self):
        for p in ("p1", "p2", "p3"):
            object.__setattr__(self, p, tuple(getattr(self, p)))
            _positions(getattr(self, p), self.weights)

    @property
    def perms(self):
        return (self.p1, self.p2, self.p3)

    def graph(self):
        return disagreement_graph(self.perms, self.weights)


def disagreement_edges(perms):
    """Pairs listed in opposite order by at least two of ``perms``."""
    perms = [tuple(p) for p in perms]
    if not perms or not perms[0]:
        return set()
    ids = sorted(perms[0])
    pos = [_positions(p, ids) for p in perms]
    out = set()
    for i, u in enumerate(ids):
        for v in ids[i + 1:]:
            signs = {ps[u] < ps[v] for ps in pos}
            if len(signs) > 1:
                out.add(frozenset((u, v)))
    return out


def disagreement_graph(perms, weights=None):
    from .graph import graph_from_edges

    ids = sorted(perms[0])
    w = weights if weights is not None else {v: 1 for v in ids}
    return graph_from_edges(ids, [tuple(e) for e in disagreement_edges(perms)], w)


class _PrefixMax:
    """Fenwick tree over positions 0..n-1 answering prefix maxima of
    ``(value, tiebreak)`` pairs."""

    def __init__(self, n):
        self.n = n
        self.t = [None] * (n + 1)

    def update(self, i, item):
        i += 1
        while i <= self.n:
            if self.t[i] is None or item > self.t[i]:
                self.t[i] = item
            i += i & -i

    def query(self, i):
        """Max over positions ``< i``."""
        best = None
        while i > 0:
            if self.t[i] is not None and (best is None or self.t[i] > best):
                best = self.t[i]
            i &= i - 1
        return best


def _weighted_chain(p1, p2, weights, increasing):
    pos2 = {v: i for i, v in enumerate(p2)}
    n = len(p1)
    tree = _PrefixMax(n)
    best, parent = {}, {}
    for v in p1:
        q = pos2[v] if increasing else n - 1 - pos2[v]
        prev = tree.query(q)
        base = Fraction(0) if prev is None else prev[0]
        best[v] = base + Fraction(weights[v])
        parent[v] = None if prev is None else prev[2]
        # larger value wins; on ties prefer the earlier-inserted vertex
        tree.update(q, (best[v], -len(best), v))
    if not best:
        return []
    end = max(best, key=lambda v: (best[v], -p1.index(v)))
    chain = []
    while end is not None:
        chain.append(end)
        end = parent[end]
    return chain


def perm_mwis(inst: PermInstance):
    """Max-weight set listed in the same order by both permutations
    (weighted increasing subsequence, O(n log n))."""
    return _set_sol(WIS, inst.weights, _weighted_chain(inst.p1, inst.p2, inst.weights, True))


def perm_max_weight_clique(inst: PermInstance):
    return _set_sol(CLIQUE, inst.weights, _weighted_chain(inst.p1, inst.p2, inst.weights, False))


def _set_sol(problem, weights, vs):
    vs = tuple(sorted(vs))
    return Solution(problem, vs, sum((Fraction(weights[v]) for v in vs), Fraction(0)))


def _patience(p1, p2, increasing):
    """Greedy partition of ``p1``-ordered items into chains monotone in
    ``p2``; the pile count equals the longest opposite-monotone chain."""
    pos2 = {v: i for i, v in enumerate(p2)}
    n = len(p1)
    tops, piles = [], []
    label = {}
    for v in p1:
        q = pos2[v] if increasing else n - 1 - pos2[v]
        i = bisect_left(tops, q) - 1
        if i < 0:
            tops.insert(0, q)
            piles.insert(0, len(piles) + 1)
            label[v] = piles[0]
        else:
            tops[i] = q
            label[v] = piles[i]
    return label


def perm_min_coloring(inst: PermInstance):
    """Optimal coloring: color classes are agreeing (increasing) chains."""
    return coloring_solution(_patience(inst.p1, inst.p2, increasing=True))


def perm_min_clique_cover(inst: PermInstance):
    lab = _patience(inst.p1, inst.p2, increasing=False)
    groups = {}
    for v, c in lab.items():
        groups.setdefault(c, []).append(v)
    return cover_solution(groups.values())


def _dominates(pos, u, v):
    return all(p[u] < p[v] for p in pos)


def max_weight_antichain(ids, less, weights):
    """Maximum-weight antichain of a strict partial order.

    Min flow with lower bound ``w(v)`` on each element's split arc, computed
    as a feasible flow minus a maximum flow pushed back from sink to source;
    the antichain is read off the final residual cut.  ``less(u, v)`` must be
    transitive.
    """
    ids = list(ids)
    if not ids:
        return []
    den = lcm(*(Fraction(weights[v]).denominator for v in ids))
    w = {v: int(Fraction(weights[v]) * den) for v in ids}
    S, T = "s", "t"
    # residual graph for pushing flow t -> s; unbounded arcs carry no
    # capacity attribute, which networkx treats as infinite
    R = nx.DiGraph()
    R.add_nodes_from([S, T])
    for v in ids:
        a, b = ("in", v), ("out", v)
        f = w[v]
        # initial flow: f along s -> in -> out -> t
        R.add_edge(S, a)  # forward residual, unbounded
        R.add_edge(a, S, capacity=f)
        R.add_edge(a, b)
        R.add_edge(b, a, capacity=0)  # flow == lower bound: cannot reduce
        R.add_edge(b, T)
        R.add_edge(T, b, capacity=f)
    for u in ids:
        for v in ids:
            if u != v and less(u, v):
                R.add_edge(("out", u), ("in", v))
                if not R.has_edge(("in", v), ("out", u)):
                    R.add_edge(("in", v), ("out", u), capacity=0)
    res = nx.algorithms.flow.preflow_push(R, T, S)
    value = res.graph["flow_value"]
    reach = {T}
    stack = [T]
    while stack:
        x = stack.pop()
        for y in res.successors(x):
            e = res[x][y]
            if y not in reach and e["flow"] < e["capacity"]:
                reach.add(y)
                stack.append(y)
    anti = [v for v in ids if ("out", v) in reach and ("in", v) not in reach]
    total = sum(w.values()) - value
    got = sum(w[v] for v in anti)
    if got != total:
        raise AssertionError(f"antichain weight {got} differs from min flow {total}")
    return anti


def dim3_max_weight_clique(inst: Dim3Instance):
    """Max-weight clique = max-weight antichain of the 3-dimensional
    dominance order."""
    pos = [{v: i for i, v in enumerate(p)} for p in inst.perms]
    anti = max_weight_antichain(sorted(inst.p1), lambda u, v: _dominates(pos, u, v), inst.weights)
    return _set_sol(CLIQUE, inst.weights, anti)


# ---------------------------------------------------------------------------
# outerstring parts

OUTERSTRING_CAP = 64


def branch_and_bound_mwis(G: WeightedGraph, cap=OUTERSTRING_CAP):
    """Exact maximum-weight independent set by branch and bound."""
    if G.n > cap:
        raise CapExceeded(f"branch and bound limited to {cap} vertices, got {G.n}")
    vs = list(G.vertices)
    n = len(vs)
    idx = {v: i for i, v in enumerate(vs)}
    w = [G.weights[v] for v in vs]
    nbr = [0] * n
    for v in vs:
        for u in G.adj[v]:
            nbr[idx[v]] |= 1 << idx[u]
    best = [Fraction(-1), 0]

    def weight_of(mask):
        s = Fraction(0)
        while mask:
            low = mask & -mask
            s += w[low.bit_length() - 1]
            mask ^= low
        return s

    def bound(cand):
        # greedy clique partition: each clique contributes its heaviest vertex
        total = Fraction(0)
        while cand:
            low = cand & -cand
            i = low.bit_length() - 1
            clique_w = w[i]
            rest = cand & ~low & nbr[i]
            cand &= ~low
            while rest:
                lo2 = rest & -rest
                j = lo2.bit_length() - 1
                clique_w = max(clique_w, w[j])
                cand &= ~lo2
                rest &= nbr[j] & ~lo2
            total += clique_w
        return total

    def rec(chosen, cw, cand):
        if cand == 0:
            if cw > best[0] or (cw == best[0] and _lex(chosen) < _lex(best[1])):
                best[0], best[1] = cw, chosen
            return
        if cw + bound(cand) < best[0]:
            return
        # branch on the highest-degree candidate
        i = max(
            (j for j in range(n) if cand >> j & 1),
            key=lambda j: (bin(nbr[j] & cand).count("1"), -j),
        )
        bit = 1 << i
        rec(chosen | bit, cw + w[i], cand & ~bit & ~nbr[i])
        rec(chosen, cw, cand & ~bit)

    def _lex(mask):
        return sorted(vs[j] for j in range(n) if mask >> j & 1)

    rec(0, Fraction(0), (1 << n) - 1)
    return set_solution(WIS, G, [vs[j] for j in range(n) if best[1] >> j & 1])


def outerstring_mwis(part, G: WeightedGraph, solver=None, cap=OUTERSTRING_CAP):
    """Exact MWIS on the subgraph induced by an outerstring part.

    ``solver(part, H)`` may replace the default branch and bound, e.g. with a
    representation-based dynamic program.
    """
    from .decompose import OuterstringGroups

    if not isinstance(part.cert, OuterstringGroups):
        raise TypeError("outerstring_mwis needs an OuterstringGroups certificate")
    H = induced_subgraph(G, part.members)
    if solver is not None:
        return solver(part, H)
    return branch_and_bound_mwis(H, cap)

"""Weighted intersection graphs, solutions and exhaustive oracles."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

import numpy as np

from .geometry import H, Representation, segments_intersect

WIS = "wIS"
CLIQUE = "wClique"
COLORING = "coloring"
COVER = "cliqueCover"
PROBLEMS = (WIS, CLIQUE, COLORING, COVER)

BRUTE_CAPS = {WIS: 20, CLIQUE: 20, COLORING: 12, COVER: 12}


class CapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class WeightedGraph:
    vertices: tuple
    weights: dict
    adj: dict
    source: Representation | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        for v, nb in self.adj.items():
            if v in nb:
                raise ValueError(f"self-loop at {v}")
            for u in nb:
                if v not in self.adj[u]:
                    raise ValueError(f"asymmetric edge {v}-{u}")

    @property
    def n(self):
        return len(self.vertices)

    def edges(self):
        order = {v: i for i, v in enumerate(self.vertices)}
        return sorted(
            (u, v) for u in self.vertices for v in self.adj[u] if order[u] < order[v]
        )

    def edge_set(self):
        return {frozenset(e) for e in self.edges()}

    def has_edge(self, u, v):
        return v in self.adj[u]

    def complement(self):
        vs = set(self.vertices)
        adj = {v: frozenset(vs - self.adj[v] - {v}) for v in self.vertices}
        return WeightedGraph(self.vertices, self.weights, adj)

    def matrix(self):
        idx = {v: i for i, v in enumerate(self.vertices)}
        a = np.zeros((self.n, self.n), dtype=bool)
        for u in self.vertices:
            for v in self.adj[u]:
                a[idx[u], idx[v]] = True
        return a


def graph_from_edges(vertices, edges, weights=None):
    vertices = tuple(vertices)
    adj = {v: set() for v in vertices}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    if weights is None:
        weights = {v: Fraction(1) for v in vertices}
    else:
        weights = {v: Fraction(weights[v]) for v in vertices}
    return WeightedGraph(vertices, weights, {v: frozenset(nb) for v, nb in adj.items()})


def _segment_table(rep):
    hs, vs = [], []
    for i, o in enumerate(rep.objects):
        for s in o.geom.segments:
            (hs if s.orient == H else vs).append((s.c, s.lo, s.hi, i))
    h = np.array(hs, dtype=np.int64).reshape(-1, 4)
    v = np.array(vs, dtype=np.int64).reshape(-1, 4)
    return h, v


def crossing_records(rep: Representation):
    """All inter-object contacts as an array of rows ``(i, j, x, y)``.

    ``i < j`` are object indices into ``rep.objects``.  Transversal contacts
    give their point; collinear overlaps give both overlap end points.  Rows
    are not deduplicated.
    """
    h, v = _segment_table(rep)
    rows = []
    if len(h) and len(v):
        m = (
            (h[:, None, 1] <= v[None, :, 0])
            & (v[None, :, 0] <= h[:, None, 2])
            & (v[None, :, 1] <= h[:, None, 0])
            & (h[:, None, 0] <= v[None, :, 2])
            & (h[:, None, 3] != v[None, :, 3])
        )
        hi, vi = np.nonzero(m)
        if len(hi):
            rows.append(np.stack([h[hi, 3], v[vi, 3], v[vi, 0], h[hi, 0]], axis=1))
    for t, is_h in ((h, True), (v, False)):
        if len(t) < 2:
            continue
        m = (
            (t[:, None, 0] == t[None, :, 0])
            & (t[:, None, 1] <= t[None, :, 2])
            & (t[None, :, 1] <= t[:, None, 2])
            & (t[:, None, 3] < t[None, :, 3])
        )
        a, b = np.nonzero(m)
        if len(a):
            lo = np.maximum(t[a, 1], t[b, 1])
            hi = np.minimum(t[a, 2], t[b, 2])
            c = t[a, 0]
            for e in (lo, hi):
                xy = (e, c) if is_h else (c, e)
                rows.append(np.stack([t[a, 3], t[b, 3], xy[0], xy[1]], axis=1))
    if not rows:
        return np.zeros((0, 4), dtype=np.int64)
    r = np.concatenate(rows)
    i = np.minimum(r[:, 0], r[:, 1])
    j = np.maximum(r[:, 0], r[:, 1])
    return np.stack([i, j, r[:, 2], r[:, 3]], axis=1)


def adjacency_matrix(rep: Representation):
    n = len(rep.objects)
    a = np.zeros((n, n), dtype=bool)
    rec = crossing_records(rep)
    if len(rec):
        a[rec[:, 0], rec[:, 1]] = True
        a[rec[:, 1], rec[:, 0]] = True
    return a


def neighbor_lists(rep: Representation) -> dict:
    """``id -> set`` of intersecting ids, straight from the contact records."""
    ids = rep.ids
    nb = {v: set() for v in ids}
    rec = crossing_records(rep)
    if len(rec):
        n = len(ids)
        for key in np.unique(rec[:, 0] * n + rec[:, 1]).tolist():
            i, j = divmod(key, n)
            nb[ids[i]].add(ids[j])
            nb[ids[j]].add(ids[i])
    return nb


def build_intersection_graph(rep: Representation) -> WeightedGraph:
    """One vertex per object, an edge whenever two objects share a point.

    Vertex order is the object order of ``rep``.
    """
    adj = {v: frozenset(s) for v, s in neighbor_lists(rep).items()}
    weights = {o.id: o.weight for o in rep.objects}
    return WeightedGraph(rep.ids, weights, adj, source=rep)


def naive_intersection_edges(rep: Representation):
    """Reference all-pairs, all-segment-pairs tester."""
    out = set()
    objs = rep.objects
    for i, a in enumerate(objs):
        for b in objs[i + 1:]:
            if any(
                segments_intersect(s, t) is not None
                for s in a.geom.segments
                for t in b.geom.segments
            ):
                out.add(frozenset((a.id, b.id)))
    return out


def induced_subgraph(G: WeightedGraph, S) -> WeightedGraph:
    S = set(S)
    unknown = S - set(G.vertices)
    if unknown:
        raise KeyError(f"unknown vertex ids {sorted(unknown)}")
    verts = tuple(v for v in G.vertices if v in S)
    adj = {v: G.adj[v] & S for v in verts}
    return WeightedGraph(verts, {v: G.weights[v] for v in verts}, adj, source=G.source)


# ---------------------------------------------------------------------------
# solutions


@dataclass(frozen=True)
class Solution:
    problem: str
    payload: object
    value: Fraction

    @property
    def size(self):
        if self.problem in (WIS, CLIQUE):
            return len(self.payload)
        if self.problem == COLORING:
            return len(set(self.payload.values()))
        return len(self.payload)


def set_solution(problem, G, vs):
    vs = tuple(sorted(vs))
    return Solution(problem, vs, sum((G.weights[v] for v in vs), Fraction(0)))


def coloring_solution(coloring: dict):
    c = dict(sorted(coloring.items()))
    return Solution(COLORING, c, Fraction(len(set(c.values()))))


def cover_solution(cliques):
    cl = tuple(sorted(tuple(sorted(c)) for c in cliques))
    return Solution(COVER, cl, Fraction(len(cl)))


def solution_errors(G: WeightedGraph, sol: Solution):
    """List of reasons ``sol`` is not a feasible solution on ``G``."""
    errs = []
    vs = set(G.vertices)
    if sol.problem in (WIS, CLIQUE):
        S = list(sol.payload)
        if not set(S) <= vs:
            return [f"unknown vertices {sorted(set(S) - vs)}"]
        if len(set(S)) != len(S):
            errs.append("repeated vertex")
        for i, u in enumerate(S):
            for v in S[i + 1:]:
                if sol.problem == WIS and G.has_edge(u, v):
                    errs.append(f"edge {u}-{v} inside independent set")
                if sol.problem == CLIQUE and not G.has_edge(u, v):
                    errs.append(f"non-edge {u}-{v} inside clique")
        if sum((G.weights[v] for v in S), Fraction(0)) != sol.value:
            errs.append("stated value differs from payload weight")
    elif sol.problem == COLORING:
        col = sol.payload
        if set(col) != vs:
            errs.append("coloring does not cover exactly the vertex set")
        for u, v in G.edges():
            if u in col and v in col and col[u] == col[v]:
                errs.append(f"edge {u}-{v} monochromatic")
        if sol.value != len(set(col.values())):
            errs.append("stated value differs from color count")
    elif sol.problem == COVER:
        seen = []
        for c in sol.payload:
            for i, u in enumerate(c):
                for v in c[i + 1:]:
                    if not G.has_edge(u, v):
                        errs.append(f"non-edge {u}-{v} inside cover clique")
            seen.extend(c)
        if set(seen) != vs:
            errs.append("cliques do not cover the vertex set")
        if sol.value != len(sol.payload):
            errs.append("stated value differs from clique count")
    else:
        errs.append(f"unknown problem {sol.problem!r}")
    return errs


def is_valid_solution(G, sol):
    return not solution_errors(G, sol)


# ---------------------------------------------------------------------------
# exhaustive oracles


def _int_weights(G):
    den = lcm(*(w.denominator for w in G.weights.values())) if G.n else 1
    return [int(G.weights[v] * den) for v in G.vertices], den


def _best_subset(G, clique):
    n = G.n
    if n == 0:
        return ()
    a = G.matrix()
    w, den = _int_weights(G)
    masks = np.arange(1 << n, dtype=np.int64)
    ok = np.ones(1 << n, dtype=bool)
    for i in range(n):
        for j in range(i + 1, n):
            if a[i, j] != clique:
                ok &= ((masks >> i) & (masks >> j) & 1) == 0
    if max(w, default=0) * n < 2**62:
        tot = np.zeros(1 << n, dtype=np.int64)
        for i in range(n):
            tot += w[i] * ((masks >> i) & 1)
    else:
        tot = np.array([sum(w[i] for i in range(n) if m >> i & 1) for m in range(1 << n)], dtype=object)
    tot = np.where(ok, tot, -1)
    best = tot.max()
    cands = np.nonzero(tot == best)[0]
    subsets = [tuple(sorted(G.vertices[i] for i in range(n) if m >> i & 1)) for m in cands]
    return min(subsets)


def _min_coloring(G):
    """Lexicographically smallest optimal coloring (colors 1..k in vertex order)."""
    n = G.n
    if n == 0:
        return {}
    vs = G.vertices
    idx = {v: i for i, v in enumerate(vs)}
    nb = [[idx[u] for u in G.adj[v] if idx[u] < i] for i, v in enumerate(vs)]
    for k in range(1, n + 1):
        col = [0] * n

        def place(i):
            if i == n:
                return True
            used = {col[j] for j in nb[i]}
            top = max(col[:i], default=0)
            for c in range(1, min(k, top + 1) + 1):
                if c not in used:
                    col[i] = c
                    if place(i + 1):
                        return True
            col[i] = 0
            return False

        if place(0):
            return {v: col[i] for i, v in enumerate(vs)}
    raise AssertionError("unreachable")


def brute_force_solve(G: WeightedGraph, problem: str, cap: int | None = None) -> Solution:
    """Exact optimum by exhaustive search.

    Ties are broken towards the lexicographically smallest payload.
    """
    if problem not in PROBLEMS:
        raise ValueError(f"unknown problem {problem!r}")
    cap = BRUTE_CAPS[problem] if cap is None else cap
    if G.n > cap:
        raise CapExceeded(f"{problem} oracle limited to {cap} vertices, got {G.n}")
    if problem == WIS:
        return set_solution(WIS, G, _best_subset(G, clique=False))
    if problem == CLIQUE:
        return set_solution(CLIQUE, G, _best_subset(G, clique=True))
    if problem == COLORING:
        return coloring_solution(_min_coloring(G))
    col = _min_coloring(G.complement())
    classes = {}
    for v, c in col.items():
        classes.setdefault(c, []).append(v)
    return cover_solution(classes.values())

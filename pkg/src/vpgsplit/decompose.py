"""Vertex partitions of VPG and single-vertical representations into
outerstring, cornered/permutation and dimension-3 co-comparability parts.

Every part carries a certificate that :func:`verify_certificate` checks
against the source representation and its intersection graph.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from itertools import zip_longest
from math import log2
from typing import ClassVar

import numpy as np

from .geometry import (
    H,
    GeometryError,
    Line,
    OrthoCurve,
    Representation,
    Segment,
    SingleVerticalObject,
    apply_transform,
    classify_b2_shape,
    compress_groups,
    is_single_vertical,
    map_geometry,
    object_x,
    validate_representation,
    vertical_segments,
    vertical_span,
    x_extent,
)
from .graph import (
    WeightedGraph,
    build_intersection_graph,
    crossing_records,
    induced_subgraph,
    neighbor_lists,
)
from .solvers import disagreement_edges


class DecompositionError(ValueError):
    pass


class GeneralPositionError(DecompositionError):
    pass


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class Group:
    """Members grounded on the vertical line ``x = line2 / 2``.

    ``side`` is ``left`` or ``right`` (where the members' vertical segments
    lie), or ``base`` for a group of at most two members with no line.
    """

    line2: int | None
    side: str
    members: tuple


@dataclass(frozen=True)
class OuterstringGroups:
    kind: ClassVar[str] = "OuterstringGroups"
    groups: tuple
    rotated: bool = False


@dataclass(frozen=True)
class Cornered:
    """Rays start at ``corner`` (doubled coordinates); ``r1`` runs along the
    grounding line (``-x`` or ``+x``), ``r2`` upwards.  ``order1``/``order2``
    list members by distance from the corner along each ray."""

    kind: ClassVar[str] = "Cornered"
    corner: tuple
    r1: str
    r2: str
    order1: tuple
    order2: tuple
    geometry: Representation = field(repr=False)


@dataclass(frozen=True)
class PermutationPair:
    kind: ClassVar[str] = "PermutationPair"
    p1: tuple
    p2: tuple

    @property
    def perms(self):
        return (self.p1, self.p2)


@dataclass(frozen=True)
class Dim3Triple:
    kind: ClassVar[str] = "Dim3Triple"
    p1: tuple
    p2: tuple
    p3: tuple

    @property
    def perms(self):
        return (self.p1, self.p2, self.p3)


@dataclass(frozen=True)
class Centered:
    kind: ClassVar[str] = "Centered"
    line2: int
    geometry: Representation = field(repr=False)


@dataclass(frozen=True)
class Grounded:
    kind: ClassVar[str] = "Grounded"
    line2: int
    geometry: Representation = field(repr=False)


@dataclass(frozen=True)
class SingleVerticalPair:
    kind: ClassVar[str] = "SingleVerticalPair"
    rotated: bool


CERT_KINDS = {
    c.kind: c
    for c in (
        OuterstringGroups,
        Cornered,
        PermutationPair,
        Dim3Triple,
        Centered,
        Grounded,
        SingleVerticalPair,
    )
}


@dataclass(frozen=True)
class Part:
    members: tuple
    cert: object

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(sorted(self.members)))


@dataclass(frozen=True)
class Decomposition:
    parts: tuple
    source: str
    n: int
    bound: float
    strategy: str
    edge_record: dict | None = field(default=None, compare=False)
    notes: dict = field(default_factory=dict, compare=False)

    def __len__(self):
        return len(self.parts)

    def is_partition_of(self, ids):
        seen = [v for p in self.parts for v in p.members]
        return len(seen) == len(set(seen)) and set(seen) == set(ids)


def log_bound(n, factor, power):
    """``max(1, factor * log2(n) ** power)``."""
    if n <= 1:
        return 1.0
    return max(1.0, factor * log2(n) ** power)


BOUNDS = {
    "outerstring": (2, 1),
    "b2-outerstring": (4, 1),
    "centered": (1, 1),
    "cornered": (2, 1),
    "cocomp": (4, 2),
    "b2-full": (8, 3),
    "b1-full": (4, 2),
}


def _digest(rep):
    from .fileio import representation_digest

    return representation_digest(rep)


def _make(parts, rep, strategy, **kw):
    n = len(rep.objects)
    f, p = BOUNDS[strategy]
    return Decomposition(tuple(parts), _digest(rep), n, log_bound(n, f, p), strategy, **kw)


def _require(rep, cls):
    rep_ = validate_representation(rep, cls)
    if not rep_.ok:
        raise DecompositionError(f"not a valid {cls} representation: " + "; ".join(rep_.violations[:5]))


# ---------------------------------------------------------------------------
# median split into outerstring parts


def median_half(xs):
    """Doubled half-integer split position for distinct integer ``xs``.

    At most ``ceil(n/2)`` values lie on either side; for odd ``n`` the line
    sits just left of the median value, for even ``n`` between the two
    middle values.
    """
    xs = sorted(xs)
    n = len(xs)
    if n == 0:
        raise DecompositionError("median of an empty set")
    if n % 2:
        return 2 * xs[n // 2] - 1
    return 2 * xs[n // 2 - 1] + 1


def median_x(rep):
    """Split line ``m`` (doubled) for the x-coordinates of ``rep``."""
    if not rep.objects:
        raise DecompositionError("empty representation")
    return median_half([object_x(o.geom) for o in rep.objects])


def _outerstring_parts(items):
    """``items``: list of ``(id, x, xmin, xmax)``; returns lists of groups."""
    if len(items) <= 2:
        return [[Group(None, "base", tuple(sorted(it[0] for it in items)))]]
    m2 = median_half([it[1] for it in items])
    M = [it for it in items if 2 * it[2] < m2 < 2 * it[3]]
    inM = {it[0] for it in M}
    ML = tuple(sorted(it[0] for it in M if 2 * it[1] < m2))
    MR = tuple(sorted(it[0] for it in M if 2 * it[1] > m2))
    L = [it for it in items if it[0] not in inM and 2 * it[1] < m2]
    R = [it for it in items if it[0] not in inM and 2 * it[1] > m2]
    parts = []
    if ML:
        parts.append([Group(m2, "left", ML)])
    if MR:
        parts.append([Group(m2, "right", MR)])
    pl = _outerstring_parts(L) if L else []
    pr = _outerstring_parts(R) if R else []
    for a, b in zip_longest(pl, pr, fillvalue=[]):
        parts.append(a + b)
    return parts


def split_single_vertical_outerstring(rep: Representation, rotated=False) -> Decomposition:
    """Recursive median split; each part is a union of groups grounded on a
    vertical line, with no contacts between groups."""
    _require(rep, "single-vertical")
    items = []
    for o in rep.objects:
        lo, hi = x_extent(o.geom)
        items.append((o.id, object_x(o.geom), lo, hi))
    groups = _outerstring_parts(items) if items else []
    parts = [
        Part(tuple(v for g in gs for v in g.members), OuterstringGroups(tuple(gs), rotated))
        for gs in groups
    ]
    return _make(parts, rep, "outerstring")


def split_b2_by_vertical_count(rep: Representation):
    """Split into curves with at most one vertical segment (unchanged) and
    the rest rotated by 90 degrees.  Both results are single-vertical."""
    _require(rep, "b2")
    keep, turn = [], []
    for o in rep.objects:
        nv, _ = classify_b2_shape(o.geom)
        (keep if nv <= 1 else turn).append(o)
    flags = {"b2", "single-vertical"}
    vv = Representation(tuple(keep), flags)
    vh = apply_transform(Representation(tuple(turn), flags), "rotate-90")
    return vv, vh


def split_b2_outerstring(rep: Representation) -> Decomposition:
    """B2 curves into outerstring parts via the two single-vertical halves."""
    vv, vh = split_b2_by_vertical_count(rep)
    parts = []
    if vv.objects:
        parts += split_single_vertical_outerstring(vv).parts
    if vh.objects:
        parts += split_single_vertical_outerstring(vh, rotated=True).parts
    return _make(parts, rep, "b2-outerstring")


# ---------------------------------------------------------------------------
# centered split


def lift(rep: Representation) -> Representation:
    """Double all y-coordinates and give zero-length verticals a unit stub
    upwards.  The intersection graph is unchanged."""
    objs = []
    for o in rep.objects:
        g = map_geometry(o.geom, lambda x: x, lambda y: 2 * y)
        if isinstance(g, SingleVerticalObject):
            v = g.vertical
            if v.lo == v.hi:
                g = SingleVerticalObject(Segment.vertical(v.c, v.lo, v.hi + 1), g.horizontals)
        elif not vertical_segments(g) or g.points[0] == g.points[1]:
            pts = sorted(set(g.points))
            (xl, y), xr = pts[0], pts[-1][0]
            if xr == xl:
                g = OrthoCurve(((xl, y), (xl, y + 1)))
            else:
                g = OrthoCurve(((xl, y + 1), (xl, y), (xr, y)))
        objs.append(o.with_geom(g))
    line = None if rep.line is None else Line(rep.line.orient, rep.line.value2 * (2 if rep.line.orient == H else 1))
    return Representation(tuple(objs), rep.flags, line)


def _components(nb, ids):
    ids = set(ids)
    seen, comps = set(), []
    for v in sorted(ids):
        if v in seen:
            continue
        comp, stack = [], [v]
        seen.add(v)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in nb[u]:
                if w in ids and w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def _assemble(pieces, geoms):
    """Place centered pieces ``(ids, line2)`` side by side on one line.

    A single piece keeps its geometry; otherwise all pieces are shifted to
    the first piece's line and re-coordinatized together.
    """
    if len(pieces) == 1:
        ids, l2 = pieces[0]
        return {v: geoms[v] for v in ids}, l2
    base = pieces[0][1]
    groups = [{v: geoms[v] for v in ids} for ids, _ in pieces]
    return compress_groups(groups, base, [(base - l2) // 2 for _, l2 in pieces])


def _centered_parts(items, nb):
    """``items``: dict id -> (lo, hi) of the vertical span (lo < hi).

    Returns parts as lists of pieces ``(ids, line2)``; every piece is
    centered on its own line and pieces of one part never touch.
    """
    comps = _components(nb, items)
    if all(
        max(items[v][0] for v in c) < min(items[v][1] for v in c) for c in comps
    ):
        return [[(c, 2 * max(items[v][0] for v in c) + 1) for c in comps]]
    n = len(items)
    ys = sorted(y for span in items.values() for y in span)
    a, b = ys[n - 1], ys[n]

    def sides(m2):
        B = [v for v, (lo, hi) in items.items() if 2 * hi < m2]
        U = [v for v, (lo, hi) in items.items() if 2 * lo > m2]
        return B, U

    if a < b:
        m2 = 2 * a + 1
    else:
        m2 = min((2 * a - 1, 2 * a + 1), key=lambda c: (max(map(len, sides(c))), c))
    B, U = sides(m2)
    in_B, in_U = set(B), set(U)
    M = [v for v in items if v not in in_B and v not in in_U]
    parts = [[(M, m2)]] if M else []
    pb = _centered_parts({v: items[v] for v in B}, nb) if B else []
    pu = _centered_parts({v: items[v] for v in U}, nb) if U else []
    for x, y in zip_longest(pb, pu, fillvalue=[]):
        parts.append(x + y)
    return parts


def split_to_centered(rep: Representation) -> Decomposition:
    """Partition a single-vertical representation into centered parts.

    Each part carries its own (translated, re-coordinatized) geometry and
    the horizontal line crossing every member's vertical segment.
    """
    _require(rep, "single-vertical")
    lifted = lift(rep)
    nb = neighbor_lists(rep)
    geoms = {o.id: o.geom for o in lifted.objects}
    items = {}
    for o in lifted.objects:
        _, lo, hi = vertical_span(o.geom)
        items[o.id] = (lo, hi)
    raw = _centered_parts(items, nb) if items else []
    parts = []
    for pieces in raw:
        gs, l2 = _assemble(pieces, geoms)
        sub = lifted.with_geometry(gs, Line(H, l2), flags=set(rep.flags) | {"centered", "single-vertical"})
        parts.append(Part(tuple(gs), Centered(l2, sub)))
    return _make(parts, rep, "centered")


# ---------------------------------------------------------------------------
# cutting a centered representation


@dataclass(frozen=True)
class CutResult:
    upper: Representation
    lower: Representation
    edge_sides: dict


def _half(geom, l2, upper):
    """Part of a single-vertical object above (or below) the line, with its
    vertical stub reaching one grid row past the line."""
    x, lo, hi = vertical_span(geom)
    k = (l2 - 1) // 2
    if not (2 * lo < l2 < 2 * hi):
        raise DecompositionError("line does not cross the vertical segment")
    if isinstance(geom, SingleVerticalObject):
        if upper:
            return SingleVerticalObject(
                Segment.vertical(x, k, hi), tuple(h for h in geom.horizontals if 2 * h.c > l2)
            )
        return SingleVerticalObject(
            Segment.vertical(x, lo, k + 1), tuple(h for h in geom.horizontals if 2 * h.c < l2)
        )
    end = hi if upper else lo
    stub = k if upper else k + 1
    pts = [(x, stub), (x, end)]
    for s in geom.segments:
        if s.orient == H and s.c == end:
            far = s.hi if s.lo == x else s.lo
            pts.append((far, end))
    return OrthoCurve(tuple(pts))


def cut_at_center(rep: Representation) -> CutResult:
    """Cut every object at the centering line.

    Returns the upper halves (grounded on the line), the lower halves rotated
    by 180 degrees (grounded on the mirrored line), and for every edge
    whether its contacts lie above, below or on both sides.
    """
    if rep.line is None or rep.line.orient != H:
        raise DecompositionError("representation has no horizontal centering line")
    _require(rep, "centered")
    l2 = rep.line.value2
    if l2 % 2 == 0:
        raise DecompositionError("centering line must lie on a half-integer")
    up = {o.id: _half(o.geom, l2, True) for o in rep.objects}
    dn = {o.id: _half(o.geom, l2, False) for o in rep.objects}
    upper = rep.with_geometry(up, Line(H, l2), flags={"grounded"})
    lower = apply_transform(rep.with_geometry(dn, Line(H, l2), flags={"grounded"}), "rotate-180")
    ids = rep.ids
    sides = defaultdict(set)
    for i, j, _, y in crossing_records(rep):
        sides[frozenset((ids[i], ids[j]))].add("above" if 2 * y > l2 else "below")
    record = {e: ("both" if len(s) == 2 else next(iter(s))) for e, s in sides.items()}
    return CutResult(upper, lower, record)


# ---------------------------------------------------------------------------
# grounded -> cornered


@dataclass
class _GC:
    """Grounded one-bend curve: vertical at ``x`` over ``[lo, top]`` and a
    horizontal at ``top`` from ``x`` to ``xe``."""

    x: int
    lo: int
    top: int
    xe: int

    def copy(self):
        return _GC(self.x, self.lo, self.top, self.xe)


def _to_gc(geom, l2):
    x, lo, hi = vertical_span(geom)
    if len(vertical_segments(geom)) != 1 or not (2 * lo < l2 < 2 * hi):
        raise DecompositionError("curve does not cross the grounding line with its vertical")
    xe = x
    for s in geom.segments:
        if s.orient == H:
            if s.c != hi or 2 * s.c <= l2:
                raise DecompositionError("horizontal segment not at the top above the line")
            far = s.hi if s.lo == x else s.lo
            if xe != x:
                raise DecompositionError("more than one horizontal segment")
            xe = far
    return _GC(x, lo, hi, xe)


def _from_gc(c: _GC):
    pts = [(c.x, c.lo), (c.x, c.top)]
    if c.xe != c.x:
        pts.append((c.xe, c.top))
    return OrthoCurve(tuple(pts))


def _gc_meet(a: _GC, b: _GC):
    if a.x > b.x:
        a, b = b, a
    return a.xe >= b.x and b.lo <= a.top <= b.top


def _extend_to(curves, X):
    for c in curves.values():
        c.xe = max(c.xe, X)


def _combine_cornered(pl, pr, k):
    if pl is None:
        return pr
    if pr is None:
        return pl
    left = {i: c.copy() for i, c in pl[0].items()}
    right = {i: c.copy() for i, c in pr[0].items()}
    dy = max(0, max(c.top for c in right.values()) - min(c.top for c in left.values()) + 1)
    for c in left.values():
        c.top += dy
        c.lo = min(c.lo + dy, k)
    allc = {**left, **right}
    X = max(max(c.xe, c.x) for c in allc.values()) + 1
    _extend_to(allc, X)
    return allc, 2 * X


def _cornered_parts(items, k):
    """``items``: dict id -> _GC, all with the horizontal to the right.
    Returns ``(curves, corner_x2)`` per part."""
    n = len(items)
    if n == 1:
        (i, c), = items.items()
        c = c.copy()
        X = max(c.xe, c.x + 1)
        c.xe = X
        return [({i: c}, 2 * X)]
    if n == 2:
        (i, a), (j, b) = sorted(items.items(), key=lambda t: t[1].x)
        if _gc_meet(a, b):
            cs = {i: a.copy(), j: b.copy()}
            X = max(max(c.xe for c in cs.values()), b.x + 1)
            _extend_to(cs, X)
            return [(cs, 2 * X)]
        return [_combine_cornered(_cornered_parts({i: a}, k)[0], _cornered_parts({j: b}, k)[0], k)]
    m2 = median_half([c.x for c in items.values()])
    M = {i: c.copy() for i, c in items.items() if 2 * c.x < m2 < 2 * c.xe}
    L = {i: c for i, c in items.items() if i not in M and 2 * c.x < m2}
    R = {i: c for i, c in items.items() if 2 * c.x > m2}
    parts = [(M, m2)] if M else []
    pl = _cornered_parts(L, k) if L else []
    pr = _cornered_parts(R, k) if R else []
    for a, b in zip_longest(pl, pr):
        parts.append(_combine_cornered(a, b, k))
    return parts


def _ray_hits(geom, corner, direction, far):
    """Contact points (doubled coordinates) of ``geom`` with a ray."""
    cx, cy = corner
    g2 = map_geometry(geom, lambda x: 2 * x, lambda y: 2 * y)
    if direction in ("-x", "+x"):
        end = cx - far if direction == "-x" else cx + far
        ray = Segment.horizontal(cy, cx, end)
    else:
        end = cy + far if direction == "+y" else cy - far
        ray = Segment.vertical(cx, cy, end)
    pts = set()
    for s in g2.segments:
        from .geometry import segments_intersect, Overlap

        r = segments_intersect(s, ray)
        if r is None:
            continue
        if isinstance(r, Overlap):
            raise GeneralPositionError("curve runs along a ray")
        pts.add(r)
    return pts


def ray_orders(geometry: Representation, corner, r1, r2):
    """Orders of the curves along both rays, by distance from the corner.

    Raises :class:`GeneralPositionError` if a curve misses a ray, meets it
    twice, or two curves meet a ray at the same point.
    """
    far = 4 * max(
        [abs(c) for o in geometry.objects for s in o.geom.segments for p in s.endpoints for c in p]
        + [abs(corner[0]), abs(corner[1]), 1]
    )
    orders = []
    for d in (r1, r2):
        keyed = []
        for o in geometry.objects:
            pts = _ray_hits(o.geom, corner, d, far)
            if len(pts) != 1:
                raise GeneralPositionError(f"object {o.id} meets ray {d} in {len(pts)} points")
            (px, py), = pts
            keyed.append((abs(px - corner[0]) + abs(py - corner[1]), o.id))
        dists = [k for k, _ in keyed]
        if len(set(dists)) != len(dists):
            raise GeneralPositionError(f"two curves meet ray {d} at the same point")
        orders.append(tuple(i for _, i in sorted(keyed)))
    return orders[0], orders[1]


def split_grounded_to_cornered(rep: Representation) -> Decomposition:
    """Partition a grounded one-bend representation into cornered parts.

    Geometry is changed only by upward translation and by extending
    segments; the order of the curves along the grounding line is kept.
    """
    if rep.line is None or rep.line.orient != H:
        raise DecompositionError("grounded representation needs a horizontal line")
    l2 = rep.line.value2
    if l2 % 2 == 0:
        raise DecompositionError("grounding line must lie on a half-integer")
    _require(rep, "grounded")
    k = (l2 - 1) // 2
    right, left = {}, {}
    for o in rep.objects:
        c = _to_gc(o.geom, l2)
        if c.xe >= c.x:
            right[o.id] = c
        else:
            left[o.id] = _GC(-c.x, c.lo, c.top, -c.xe)
    raw = []
    if right:
        raw += [(cs, cx2, False) for cs, cx2 in _cornered_parts(right, k)]
    if left:
        raw += [(cs, cx2, True) for cs, cx2 in _cornered_parts(left, k)]
    parts = []
    for cs, cx2, mirrored in raw:
        geoms = {}
        for i, c in cs.items():
            if mirrored:
                c = _GC(-c.x, c.lo, c.top, -c.xe)
            geoms[i] = _from_gc(c)
        corner = (-cx2 if mirrored else cx2, l2)
        r1 = "+x" if mirrored else "-x"
        sub = rep.with_geometry(geoms, Line(H, l2), flags={"grounded", "cornered", "b1"})
        o1, o2 = ray_orders(sub, corner, r1, "+y")
        parts.append(Part(tuple(geoms), Cornered(corner, r1, "+y", o1, o2, sub)))
    return _make(parts, rep, "cornered")


def cornered_permutations(part: Part) -> PermutationPair:
    """The two ray orders of a cornered part, re-derived from its geometry."""
    c = part.cert
    if not isinstance(c, Cornered):
        raise TypeError("part has no Cornered certificate")
    o1, o2 = ray_orders(c.geometry, c.corner, c.r1, c.r2)
    return PermutationPair(o1, o2)


# ---------------------------------------------------------------------------
# centered -> co-comparability parts


def multi_contact_pairs(rep: Representation):
    """Pairs of objects sharing more than one point."""
    rec = crossing_records(rep)
    if not len(rec):
        return set()
    uniq = np.unique(rec, axis=0)
    pairs, counts = np.unique(uniq[:, :2], axis=0, return_counts=True)
    ids = rep.ids
    return {frozenset((ids[i], ids[j])) for (i, j), c in zip(pairs, counts) if c > 1}


def _oriented(order, reference, other):
    """Restrict ``order``/``other`` to ``reference``'s ids and orient
    ``other`` so that ``order`` reads like ``reference``."""
    keep = set(reference)
    a = [v for v in order if v in keep]
    b = tuple(v for v in other if v in keep)
    if a == list(reference):
        return b
    if a == list(reference)[::-1]:
        return b[::-1]
    raise DecompositionError("grounding-line order changed during cornering")


def centered_to_parts(rep: Representation, onestring=False) -> Decomposition:
    """Partition a centered single-vertical B2 representation into parts
    defined by three permutations (two if ``onestring``)."""
    if onestring and multi_contact_pairs(rep):
        raise DecompositionError("representation is not 1-string")
    cut = cut_at_center(rep)
    ups = split_grounded_to_cornered(cut.upper).parts
    dns = split_grounded_to_cornered(cut.lower).parts
    ui = {v: i for i, p in enumerate(ups) for v in p.members}
    di = {v: j for j, p in enumerate(dns) for v in p.members}
    xs = {o.id: object_x(o.geom) for o in rep.objects}
    cells = defaultdict(list)
    for o in rep.objects:
        cells[(ui[o.id], di[o.id])].append(o.id)
    parts = []
    for (i, j), mem in sorted(cells.items()):
        p2 = tuple(sorted(mem, key=xs.__getitem__))
        cu, cd = ups[i].cert, dns[j].cert
        p1 = _oriented(cu.order1, p2, cu.order2)
        p3 = _oriented(cd.order1, p2, cd.order2)
        cert = PermutationPair(p1, p3) if onestring else Dim3Triple(p1, p2, p3)
        parts.append(Part(p2, cert))
    return _make(parts, rep, "cocomp", edge_record=cut.edge_sides)


def decompose_b2_full(rep: Representation, onestring=False) -> Decomposition:
    """B2 curves into dimension-3 co-comparability parts (permutation parts
    for 1-string input)."""
    _require(rep, "b2")
    if onestring and multi_contact_pairs(rep):
        raise DecompositionError("representation is not 1-string")
    vv, vh = split_b2_by_vertical_count(rep)
    parts = []
    for half in (vv, vh):
        if not half.objects:
            continue
        for cp in split_to_centered(half).parts:
            parts += centered_to_parts(cp.cert.geometry, onestring).parts
    return _make(parts, rep, "b2-full")


def decompose_b1_full(rep: Representation) -> Decomposition:
    """One-bend curves into permutation parts."""
    _require(rep, "b1")
    parts = []
    for cp in split_to_centered(rep).parts:
        geo = cp.cert.geometry
        l2 = geo.line.value2
        above, below = {}, {}
        for o in geo.objects:
            _, lo, hi = vertical_span(o.geom)
            hs = [s for s in o.geom.segments if s.orient == H]
            (below if hs and 2 * hs[0].c < l2 else above)[o.id] = o.geom
        for geoms, flip in ((above, False), (below, True)):
            if not geoms:
                continue
            g = geo.with_geometry(geoms, Line(H, l2), flags={"grounded", "b1"})
            if flip:
                g = apply_transform(g, "rotate-180")
            g = _trim_below(g)
            for cpart in split_grounded_to_cornered(g).parts:
                pp = cornered_permutations(cpart)
                parts.append(Part(cpart.members, pp))
    return _make(parts, rep, "b1-full")


def _trim_below(rep):
    """Cut verticals to start one row below the grounding line (nothing
    meets there, so the graph is unchanged)."""
    l2 = rep.line.value2
    k = (l2 - 1) // 2
    geoms = {}
    for o in rep.objects:
        g = o.geom
        x, lo, hi = vertical_span(g)
        if lo < k:
            pts = tuple((px, k) if (px == x and py == lo) else (px, py) for px, py in g.points)
            g = OrthoCurve(pts)
        geoms[o.id] = g
    return rep.with_geometry(geoms, rep.line, rep.flags)


# ---------------------------------------------------------------------------
# verification


@dataclass
class CertReport:
    ok: bool = True
    errors: list = field(default_factory=list)

    def fail(self, msg):
        self.ok = False
        self.errors.append(msg)

    def __bool__(self):
        return self.ok


def _edges_of(G, members):
    H_ = induced_subgraph(G, members)
    return H_.edge_set()


def _check_same_graph(report, geometry, G, members):
    got = build_intersection_graph(geometry).edge_set()
    want = _edges_of(G, members)
    if got != want:
        report.fail(
            f"transformed geometry changes the graph: {len(got - want)} extra, {len(want - got)} missing edges"
        )


def _check_outerstring(report, part, cert, rep):
    members = set(part.members)
    sub = rep.subset(members)
    if cert.rotated:
        sub = apply_transform(sub, "rotate-90")
    by_id = sub.by_id()
    flat = [v for g in cert.groups for v in g.members]
    if sorted(flat) != sorted(members) or len(flat) != len(set(flat)):
        report.fail("groups do not partition the part")
        return
    group_of = {v: gi for gi, g in enumerate(cert.groups) for v in g.members}
    for g in cert.groups:
        if g.side == "base":
            if len(g.members) > 2:
                report.fail("a group without ground line may have at most two members")
            continue
        if g.side not in ("left", "right") or g.line2 is None:
            report.fail(f"bad group side {g.side!r}")
            continue
        for v in g.members:
            geom = by_id[v].geom
            lo, hi = x_extent(geom)
            if not (2 * lo <= g.line2 <= 2 * hi):
                report.fail(f"object {v} does not meet its ground line")
            x2 = 2 * object_x(geom)
            if (g.side == "left") != (x2 < g.line2) or x2 == g.line2:
                report.fail(f"object {v} lies on the wrong side of its ground line")
    ids = sub.ids
    for i, j, x, _ in crossing_records(sub):
        a, b = ids[i], ids[j]
        ga, gb = group_of[a], group_of[b]
        if ga != gb:
            report.fail(f"objects {a} and {b} from different groups intersect")
            continue
        g = cert.groups[ga]
        if g.side == "left" and not 2 * x < g.line2 or g.side == "right" and not 2 * x > g.line2:
            report.fail(f"contact of {a} and {b} at x={x} on the wrong side of the ground line")


def verify_certificate(part: Part, rep: Representation, G: WeightedGraph) -> CertReport:
    """Kind-specific check of one part's certificate."""
    report = CertReport()
    members = set(part.members)
    unknown = members - set(G.vertices)
    if unknown:
        report.fail(f"unknown ids {sorted(unknown)}")
        return report
    c = part.cert
    try:
        if isinstance(c, OuterstringGroups):
            _check_outerstring(report, part, c, rep)
        elif isinstance(c, (PermutationPair, Dim3Triple)):
            for p in c.perms:
                if sorted(p) != sorted(members) or len(set(p)) != len(p):
                    report.fail("permutation is not a bijection on the part")
                    return report
            if disagreement_edges(c.perms) != _edges_of(G, members):
                report.fail("disagreement graph differs from the induced subgraph")
        elif isinstance(c, (Centered, Grounded)):
            geo = c.geometry
            if set(geo.ids) != members:
                report.fail("geometry ids differ from the part")
                return report
            cls = "centered" if isinstance(c, Centered) else "grounded"
            if geo.line is None or geo.line.value2 != c.line2:
                report.fail("certificate line differs from the geometry line")
            vr = validate_representation(geo, cls)
            for msg in vr.violations:
                report.fail(msg)
            _check_same_graph(report, geo, G, members)
        elif isinstance(c, Cornered):
            geo = c.geometry
            if set(geo.ids) != members:
                report.fail("geometry ids differ from the part")
                return report
            o1, o2 = ray_orders(geo, c.corner, c.r1, c.r2)
            if (o1, o2) != (tuple(c.order1), tuple(c.order2)):
                report.fail("recorded ray orders differ from the geometry")
            if any(o.geom.bends > 1 for o in geo.objects):
                report.fail("cornered curves must have at most one bend")
            src = {o.id: object_x(o.geom) for o in rep.objects if o.id in members}
            ref = sorted(members, key=src.__getitem__)
            if list(o1) not in (ref, ref[::-1]):
                report.fail("order along the grounding line changed")
            _check_same_graph(report, geo, G, members)
            if disagreement_edges((o1, o2)) != _edges_of(G, members):
                report.fail("ray orders do not define the induced subgraph")
        elif isinstance(c, SingleVerticalPair):
            sub = rep.subset(members)
            if c.rotated:
                sub = apply_transform(sub, "rotate-90")
            if not is_single_vertical(sub):
                report.fail("part is not single-vertical")
        else:
            report.fail(f"unknown certificate {type(c).__name__}")
    except (GeometryError, DecompositionError) as e:
        report.fail(str(e))
    return report


def verify_decomposition(dec: Decomposition, rep: Representation, G: WeightedGraph | None = None):
    """Partition, bound and per-part certificate checks."""
    G = build_intersection_graph(rep) if G is None else G
    report = CertReport()
    if not dec.is_partition_of(rep.ids):
        report.fail("parts do not form a vertex partition")
    if len(dec.parts) > dec.bound:
        report.fail(f"{len(dec.parts)} parts exceed the bound {dec.bound:.3f}")
    for k, p in enumerate(dec.parts):
        r = verify_certificate(p, rep, G)
        for e in r.errors:
            report.fail(f"part {k}: {e}")
    return report

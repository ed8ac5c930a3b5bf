"""Integer-grid geometry for axis-parallel segments, orthogonal curves and
single-vertical objects.

All coordinates are Python ints.  Reference lines (split lines, grounding
lines) may sit on half-integers, so they are stored doubled: a ``Line`` with
``value2 == 5`` is the line at coordinate 2.5.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Union

COORD_LIMIT = 2**62

H = "h"
V = "v"


class GeometryError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Segment:
    """Closed axis-parallel segment.

    ``c`` is the fixed coordinate (y for horizontal, x for vertical) and
    ``[lo, hi]`` the span along the other axis.
    """

    orient: str
    c: int
    lo: int
    hi: int

    def __post_init__(self):
        if self.orient not in (H, V):
            raise GeometryError(f"bad orientation {self.orient!r}")
        if self.lo > self.hi:
            raise GeometryError(f"segment span [{self.lo}, {self.hi}] is reversed")

    @classmethod
    def horizontal(cls, y, x1, x2):
        return cls(H, y, min(x1, x2), max(x1, x2))

    @classmethod
    def vertical(cls, x, y1, y2):
        return cls(V, x, min(y1, y2), max(y1, y2))

    @property
    def endpoints(self):
        if self.orient == H:
            return (self.lo, self.c), (self.hi, self.c)
        return (self.c, self.lo), (self.c, self.hi)

    @property
    def length(self):
        return self.hi - self.lo

    def contains(self, p):
        x, y = p
        if self.orient == H:
            return y == self.c and self.lo <= x <= self.hi
        return x == self.c and self.lo <= y <= self.hi


@dataclass(frozen=True)
class Overlap:
    """Collinear overlap of two segments (more than one common point)."""

    orient: str
    c: int
    lo: int
    hi: int

    @property
    def endpoints(self):
        return Segment(self.orient, self.c, self.lo, self.hi).endpoints


def segments_intersect(a: Segment, b: Segment):
    """Return ``None``, a point ``(x, y)``, or an :class:`Overlap`.

    Endpoint contacts count as intersections.
    """
    if a.orient != b.orient:
        h, v = (a, b) if a.orient == H else (b, a)
        if h.lo <= v.c <= h.hi and v.lo <= h.c <= v.hi:
            return (v.c, h.c)
        return None
    if a.c != b.c:
        return None
    lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
    if lo > hi:
        return None
    if lo == hi:
        return (lo, a.c) if a.orient == H else (a.c, lo)
    return Overlap(a.orient, a.c, lo, hi)


def _frozen(cls, *values):
    """Instance of a frozen dataclass built without ``__post_init__``, for
    values already known to be valid."""
    o = object.__new__(cls)
    for f, v in zip(cls.__dataclass_fields__, values):
        object.__setattr__(o, f, v)
    return o


def _span(orient, c, a, b):
    return _frozen(Segment, orient, c, a, b) if a <= b else _frozen(Segment, orient, c, b, a)


def _check_coord(*values):
    for v in values:
        if abs(v) > COORD_LIMIT:
            raise OverflowError(f"coordinate {v} outside the supported grid range")


@dataclass(frozen=True)
class OrthoCurve:
    """Axis-parallel polyline given by its corner points.

    Consecutive points differ in exactly one coordinate and consecutive
    segments alternate orientation.  A two-point curve with identical points
    is allowed only as a degenerate (zero-length) segment.
    """

    points: tuple

    def __post_init__(self):
        pts = tuple(tuple(int(c) for c in p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if len(pts) < 2:
            raise GeometryError("a curve needs at least two points")
        for p in pts:
            _check_coord(*p)
        prev = None
        for p, q in zip(pts, pts[1:]):
            if p == q:
                if len(pts) != 2:
                    raise GeometryError("zero-length segment inside a curve")
                continue
            if p[0] != q[0] and p[1] != q[1]:
                raise GeometryError(f"segment {p}->{q} is not axis-parallel")
            o = V if p[0] == q[0] else H
            if o == prev:
                raise GeometryError("consecutive segments must alternate orientation")
            prev = o

    @property
    def segments(self):
        out = []
        pts = self.points
        if len(pts) == 2 and pts[0] == pts[1]:
            x, y = pts[0]
            return (Segment(H, y, x, x),)
        for p, q in zip(pts, pts[1:]):
            if p[0] == q[0]:
                out.append(Segment.vertical(p[0], p[1], q[1]))
            else:
                out.append(Segment.horizontal(p[1], p[0], q[0]))
        return tuple(out)

    @property
    def bends(self):
        return len(self.points) - 2

    def map_points(self, f):
        return OrthoCurve(tuple(f(p) for p in self.points))


@dataclass(frozen=True)
class SingleVerticalObject:
    """One vertical segment (possibly zero-length) plus horizontal segments
    that each touch or cross it."""

    vertical: Segment
    horizontals: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "horizontals", tuple(self.horizontals))
        v = self.vertical
        if v.orient != V:
            raise GeometryError("the vertical part must be a vertical segment")
        _check_coord(v.c, v.lo, v.hi)
        for h in self.horizontals:
            if h.orient != H:
                raise GeometryError("horizontals must be horizontal segments")
            _check_coord(h.c, h.lo, h.hi)
            if not (h.lo <= v.c <= h.hi and v.lo <= h.c <= v.hi):
                raise GeometryError(
                    f"horizontal at y={h.c} does not meet the vertical at x={v.c}"
                )

    @property
    def segments(self):
        return (self.vertical,) + self.horizontals

    def map_coords(self, fx, fy):
        """``fx`` and ``fy`` must be injective and monotone (either
        direction), which keeps every incidence; results are not revalidated."""
        v = self.vertical
        return _frozen(
            SingleVerticalObject,
            _span(V, fx(v.c), fy(v.lo), fy(v.hi)),
            tuple(_span(H, fy(h.c), fx(h.lo), fx(h.hi)) for h in self.horizontals),
        )


Geometry = Union[OrthoCurve, SingleVerticalObject]


def vertical_segments(geom):
    return [s for s in geom.segments if s.orient == V]


def object_x(geom):
    """x-coordinate of an object: that of its unique vertical segment.

    Horizontal-only objects get a zero-length vertical at their left endpoint.
    """
    if isinstance(geom, SingleVerticalObject):
        return geom.vertical.c
    vs = vertical_segments(geom)
    if len(vs) == 1:
        return vs[0].c
    if not vs:
        return min(p[0] for p in geom.points)
    raise GeometryError("curve has more than one vertical segment")


def vertical_span(geom):
    """``(x, lo, hi)`` of the unique vertical segment (zero-length if none)."""
    if isinstance(geom, SingleVerticalObject):
        v = geom.vertical
        return v.c, v.lo, v.hi
    vs = vertical_segments(geom)
    if len(vs) == 1:
        return vs[0].c, vs[0].lo, vs[0].hi
    if not vs:
        x, y = min(geom.points)
        return x, y, y
    raise GeometryError("curve has more than one vertical segment")


def x_extent(geom):
    xs = [c for s in geom.segments for p in s.endpoints for c in p[:1]]
    return min(xs), max(xs)


def y_extent(geom):
    ys = [p[1] for s in geom.segments for p in s.endpoints]
    return min(ys), max(ys)


def map_geometry(geom, fx, fy):
    """Apply monotone coordinate maps ``fx``, ``fy`` (each axis separately)."""
    if isinstance(geom, SingleVerticalObject):
        return geom.map_coords(fx, fy)
    return geom.map_points(lambda p: (fx(p[0]), fy(p[1])))


def as_single_vertical(geom):
    """Convert a curve with at most one vertical segment to a
    :class:`SingleVerticalObject`."""
    if isinstance(geom, SingleVerticalObject):
        return geom
    x, lo, hi = vertical_span(geom)
    hs = tuple(s for s in geom.segments if s.orient == H)
    return SingleVerticalObject(Segment.vertical(x, lo, hi), hs)


# ---------------------------------------------------------------------------
# representations


@dataclass(frozen=True)
class Line:
    """Axis-parallel reference line; ``value2`` is twice its coordinate."""

    orient: str
    value2: int

    @property
    def value(self):
        return Fraction(self.value2, 2)


@dataclass(frozen=True)
class Obj:
    id: int
    weight: Fraction
    geom: Geometry

    def __post_init__(self):
        w = Fraction(self.weight)
        if w < 0:
            raise GeometryError(f"object {self.id} has negative weight")
        object.__setattr__(self, "weight", w)

    def with_geom(self, geom):
        return _frozen(Obj, self.id, self.weight, geom)


CLASS_FLAGS = frozenset(
    {"b0", "b1", "b2", "single-vertical", "grounded", "centered", "cornered", "1-string"}
)


@dataclass(frozen=True)
class Representation:
    objects: tuple
    flags: frozenset = field(default_factory=frozenset)
    line: Line | None = None

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "flags", frozenset(self.flags))
        seen = set()
        for o in self.objects:
            if o.id in seen:
                raise GeometryError(f"duplicate object id {o.id}")
            seen.add(o.id)

    def __len__(self):
        return len(self.objects)

    @property
    def ids(self):
        return tuple(o.id for o in self.objects)

    def by_id(self):
        return {o.id: o for o in self.objects}

    def subset(self, ids):
        keep = set(ids)
        return replace(self, objects=tuple(o for o in self.objects if o.id in keep))

    def with_geometry(self, geoms: dict, line=None, flags=None):
        objs = tuple(o.with_geom(geoms[o.id]) for o in self.objects if o.id in geoms)
        return Representation(
            objs,
            self.flags if flags is None else flags,
            line,
        )


def object_pair_intersections(g1: Geometry, g2: Geometry):
    """All intersection points of two objects, deduplicated and sorted.

    A collinear overlap contributes its two end points.
    """
    pts = set()
    for a in g1.segments:
        for b in g2.segments:
            r = segments_intersect(a, b)
            if r is None:
                continue
            if isinstance(r, Overlap):
                pts.update(r.endpoints)
            else:
                pts.add(r)
    return sorted(pts)


# ---------------------------------------------------------------------------
# shapes


def classify_b2_shape(curve: OrthoCurve):
    """Return ``(number of vertical segments, shape tag)`` for a curve with at
    most two bends."""
    if curve.bends > 2:
        raise GeometryError(f"curve has {curve.bends} bends, at most 2 allowed")
    orients = "".join(s.orient for s in curve.segments)
    nv = orients.count(V)
    tag = {
        "h": "segment-h",
        "v": "segment-v",
        "hv": "L-family",
        "vh": "L-family",
        "hvh": "C/Z-family",
        "vhv": "U-family",
    }[orients]
    return nv, tag


# ---------------------------------------------------------------------------
# validation


@dataclass
class ValidationReport:
    required: str
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def __bool__(self):
        return self.ok


def _general_position(rep, strict):
    out = []
    vx, hy = {}, {}
    ys_all = {}
    for o in rep.objects:
        g = o.geom
        segs = g.segments
        own_vx = set()
        own_hy = set()
        if isinstance(g, OrthoCurve) and not vertical_segments(g):
            own_vx.add(object_x(g))
        for s in segs:
            (own_vx if s.orient == V else own_hy).add(s.c)
        for x in own_vx:
            if x in vx:
                out.append(f"general position: vertical x={x} shared by objects {vx[x]} and {o.id}")
            else:
                vx[x] = o.id
        for y in own_hy:
            if y in hy:
                out.append(f"general position: horizontal y={y} shared by objects {hy[y]} and {o.id}")
            else:
                hy[y] = o.id
        if strict:
            own_ys = own_hy | {p[1] for s in segs if s.orient == V for p in s.endpoints}
            for y in own_ys:
                if y in ys_all and ys_all[y] != o.id:
                    out.append(f"strict position: y={y} used by objects {ys_all[y]} and {o.id}")
                else:
                    ys_all[y] = o.id
    return out


def _curve_meets_line_h(geom, y2):
    """Does the object meet the horizontal line at doubled coordinate y2?"""
    return any(2 * s.lo <= y2 <= 2 * s.hi for s in geom.segments if s.orient == V) or any(
        2 * s.c == y2 for s in geom.segments if s.orient == H
    )


def validate_representation(rep: Representation, required_class: str, strict=False):
    """Check ``rep`` against one of the class definitions.

    ``required_class`` is one of ``b0``, ``b1``, ``b2``, ``single-vertical``,
    ``grounded``, ``centered``, ``1-string`` or ``any``.  General position is
    always checked; ``strict`` additionally requires every y-coordinate used
    by an object's horizontals or vertical endpoints to be private to it.
    """
    rep_ = ValidationReport(required_class)
    bad = rep_.violations
    bad.extend(_general_position(rep, strict))
    rc = required_class
    if rc in ("b0", "b1", "b2"):
        k = int(rc[1])
        for o in rep.objects:
            if not isinstance(o.geom, OrthoCurve):
                bad.append(f"object {o.id} is not an orthogonal curve")
            elif o.geom.bends > k:
                bad.append(f"object {o.id} has {o.geom.bends} bends (> {k})")
    elif rc in ("single-vertical", "grounded", "centered"):
        for o in rep.objects:
            if isinstance(o.geom, OrthoCurve) and len(vertical_segments(o.geom)) > 1:
                bad.append(f"object {o.id} has {len(vertical_segments(o.geom))} vertical segments")
        if rc != "single-vertical":
            ln = rep.line
            if ln is None or ln.orient != H:
                bad.append(f"{rc} representation needs a horizontal reference line")
            else:
                for o in rep.objects:
                    if len(vertical_segments(o.geom)) > 1:
                        continue
                    _, lo, hi = vertical_span(o.geom)
                    if rc == "centered":
                        if not (2 * lo <= ln.value2 <= 2 * hi):
                            bad.append(f"object {o.id}: line does not cross its vertical segment")
                    else:
                        if not _curve_meets_line_h(o.geom, ln.value2):
                            bad.append(f"object {o.id} does not meet the grounding line")
                        for s in o.geom.segments:
                            if s.orient == H and 2 * s.c <= ln.value2:
                                bad.append(f"object {o.id}: horizontal at y={s.c} not above the line")
                        if isinstance(o.geom, OrthoCurve) and o.geom.bends > 1:
                            bad.append(f"object {o.id} has {o.geom.bends} bends (> 1)")
    elif rc == "1-string":
        objs = rep.objects
        for i, a in enumerate(objs):
            for b in objs[i + 1:]:
                if len(object_pair_intersections(a.geom, b.geom)) > 1:
                    bad.append(f"objects {a.id} and {b.id} intersect more than once")
    elif rc != "any":
        raise ValueError(f"unknown class {required_class!r}")
    return rep_


def is_single_vertical(rep):
    return all(
        isinstance(o.geom, SingleVerticalObject) or len(vertical_segments(o.geom)) <= 1
        for o in rep.objects
    )


# ---------------------------------------------------------------------------
# transforms


def _map_line(line, f2, swap=False):
    if line is None:
        return None
    orient = line.orient
    if swap:
        orient = H if orient == V else V
    return Line(orient, f2(line.value2, line.orient))


def extend_segment(geom: Geometry, index: int, to: int):
    """Extend segment ``index`` so that its span reaches coordinate ``to``.

    For curves only the first and last segment can be extended, at their
    free end.
    """
    segs = geom.segments
    s = segs[index]
    if s.lo <= to <= s.hi:
        return geom
    _check_coord(to)
    if isinstance(geom, SingleVerticalObject):
        segs = list(segs)
        segs[index] = Segment(s.orient, s.c, min(s.lo, to), max(s.hi, to))
        return SingleVerticalObject(segs[0], tuple(segs[1:]))
    nseg = len(segs)
    if index not in (0, nseg - 1):
        raise GeometryError("only end segments of a curve can be extended")
    axis = 0 if s.orient == H else 1
    target = s.lo if to < s.lo else s.hi
    pts = list(geom.points)
    if nseg == 1:
        i = 0 if pts[0][axis] == target else 1
    else:
        i = 0 if index == 0 else len(pts) - 1
        if pts[i][axis] != target:
            raise GeometryError("extension would fold the curve back on itself")
    p = list(pts[i])
    p[axis] = to
    pts[i] = tuple(p)
    return OrthoCurve(tuple(pts))


def apply_transform(rep: Representation, transform: str, **params):
    """Apply a rigid transform or a segment extension to every object.

    ``transform`` is one of ``translate-y`` (``dy``), ``translate`` (``dx``,
    ``dy``), ``mirror-x``, ``rotate-90`` (counter-clockwise about the origin),
    ``rotate-180`` or ``extend-segment-to-line`` (``id``, ``index``, ``to``).
    Ids and weights are unchanged.
    """
    t = transform
    if t == "extend-segment-to-line":
        oid, idx, to = params["id"], params["index"], params["to"]
        objs = tuple(
            replace(o, geom=extend_segment(o.geom, idx, to)) if o.id == oid else o
            for o in rep.objects
        )
        return replace(rep, objects=objs)
    if t in ("translate-y", "translate"):
        dx = params.get("dx", 0) if t == "translate" else 0
        dy = params["dy"]

        def g(geom):
            return map_geometry(geom, lambda x: x + dx, lambda y: y + dy)

        line = _map_line(rep.line, lambda v2, o: v2 + 2 * (dy if o == H else dx))
    elif t == "mirror-x":

        def g(geom):
            return map_geometry(geom, lambda x: -x, lambda y: y)

        line = _map_line(rep.line, lambda v2, o: -v2 if o == V else v2)
    elif t == "rotate-180":

        def g(geom):
            return map_geometry(geom, lambda x: -x, lambda y: -y)

        line = _map_line(rep.line, lambda v2, o: -v2)
    elif t == "rotate-90":

        def g(geom):
            if isinstance(geom, SingleVerticalObject):
                if geom.horizontals:
                    raise GeometryError("cannot rotate a single-vertical object with horizontals")
                v = geom.vertical
                geom = OrthoCurve(((v.c, v.lo), (v.c, v.hi)))
            return geom.map_points(lambda p: (-p[1], p[0]))

        # (x, y) -> (-y, x): a horizontal line y=c becomes the vertical x=-c
        line = _map_line(rep.line, lambda v2, o: -v2 if o == H else v2, swap=True)
    else:
        raise ValueError(f"unknown transform {transform!r}")
    objs = tuple(replace(o, geom=g(o.geom)) for o in rep.objects)
    return replace(rep, objects=objs, line=line)


def compress_groups(groups: Iterable[dict], line2: int | None = None, shifts=None):
    """Merge object groups side by side and re-coordinatize by rank.

    Each group is a dict ``id -> geometry``.  Groups are placed left to right
    in the given order (x-separated), so no two groups touch.  y-values keep
    their order; equal values from different groups are split by group
    index.  ``shifts[gi]``, if given, is added to group ``gi``'s y-values
    first.  If ``line2`` (a doubled horizontal line coordinate shared by all
    groups) is given, the returned line sits between the same y-values.

    Returns ``(geoms, new_line2)``.
    """
    groups = list(groups)
    shifts = [0] * len(groups) if shifts is None else list(shifts)
    xs, ys = set(), set()
    for gi, grp in enumerate(groups):
        dy = shifts[gi]
        for geom in grp.values():
            for s in geom.segments:
                for x, y in s.endpoints:
                    xs.add((gi, x))
                    ys.add((y + dy, gi))
    xrank = {t: r for r, t in enumerate(sorted(xs))}
    yrank = {t: r for r, t in enumerate(sorted(ys))}
    out = {}
    for gi, grp in enumerate(groups):
        for oid, geom in grp.items():
            out[oid] = map_geometry(
                geom,
                lambda x, gi=gi: xrank[(gi, x)],
                lambda y, gi=gi, dy=shifts[gi]: yrank[(y + dy, gi)],
            )
    new_line2 = None
    if line2 is not None:
        below = [r for (y, _), r in yrank.items() if 2 * y < line2]
        new_line2 = 2 * max(below) + 1 if below else -1
    return out, new_line2

"""Line-oriented text formats for representations, parts and solutions.

Numbers are exact: weights are written ``num/den`` and half-integer lines as
their doubled value with a ``/2`` suffix.
"""
from __future__ import annotations

import hashlib
import os
import tempfile
from fractions import Fraction

from .decompose import (
    CERT_KINDS,
    Centered,
    Cornered,
    Decomposition,
    Dim3Triple,
    Grounded,
    Group,
    OuterstringGroups,
    Part,
    PermutationPair,
    SingleVerticalPair,
)
from .geometry import (
    H,
    V,
    GeometryError,
    Line,
    Obj,
    OrthoCurve,
    Representation,
    Segment,
    SingleVerticalObject,
)
from .graph import COLORING, COVER, PROBLEMS, Solution

REP_HEADER = "# vpgsplit representation v1"
PARTS_HEADER = "# vpgsplit parts v1"
SOLUTION_HEADER = "# vpgsplit solution v1"

_STEP = {"r": (1, 0), "l": (-1, 0), "u": (0, 1), "d": (0, -1)}


class ParseError(ValueError):
    def __init__(self, msg, lineno=None, field=None):
        where = ""
        if lineno is not None:
            where = f"line {lineno}"
            if field is not None:
                where += f", field {field}"
            where += ": "
        super().__init__(where + msg)
        self.lineno = lineno
        self.field = field


def write_atomic(path, text):
    """Write via a temporary file in the target directory plus rename."""
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# ---------------------------------------------------------------------------
# scalars


def fmt_frac(q):
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def fmt_half(v2):
    return f"{v2}/2"


def _int(tok, ln, fi):
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", ln, fi) from None


def _frac(tok, ln, fi):
    num, sep, den = tok.partition("/")
    if not sep:
        raise ParseError(f"expected num/den, got {tok!r}", ln, fi)
    d = _int(den, ln, fi)
    if d <= 0:
        raise ParseError("denominator must be positive", ln, fi)
    return Fraction(_int(num, ln, fi), d)


def _half(tok, ln, fi):
    num, sep, den = tok.partition("/")
    if sep != "/" or den != "2":
        raise ParseError(f"expected doubled value with /2 suffix, got {tok!r}", ln, fi)
    return _int(num, ln, fi)


def _ids(toks, ln, start):
    return tuple(_int(t, ln, start + k) for k, t in enumerate(toks))


# ---------------------------------------------------------------------------
# objects


def object_record(o: Obj):
    g = o.geom
    head = f"{o.id} {fmt_frac(o.weight)}"
    if isinstance(g, SingleVerticalObject):
        v = g.vertical
        out = [f"obj {head} v {v.c} {v.lo} {v.hi}"]
        out += [f"h {h.c} {h.lo} {h.hi}" for h in g.horizontals]
        return " ".join(out)
    (x0, y0), pts = g.points[0], g.points
    steps = []
    for (ax, ay), (bx, by) in zip(pts, pts[1:]):
        if (ax, ay) == (bx, by):
            continue
        if ay == by:
            steps.append(f"{'r' if bx > ax else 'l'} {abs(bx - ax)}")
        else:
            steps.append(f"{'u' if by > ay else 'd'} {abs(by - ay)}")
    return " ".join([f"curve {head} {x0} {y0}"] + steps)


def parse_object(toks, ln):
    kind = toks[0]
    if len(toks) < 3:
        raise ParseError("truncated object record", ln)
    oid = _int(toks[1], ln, 2)
    w = _frac(toks[2], ln, 3)
    try:
        if kind == "obj":
            if len(toks) < 7 or toks[3] != "v":
                raise ParseError("expected 'v <x> <y1> <y2>'", ln, 4)
            x, y1, y2 = (_int(toks[k], ln, k + 1) for k in (4, 5, 6))
            rest = toks[7:]
            if len(rest) % 4:
                raise ParseError("horizontal records need 'h <y> <x1> <x2>'", ln, 8)
            hs = []
            for k in range(0, len(rest), 4):
                if rest[k] != "h":
                    raise ParseError(f"expected 'h', got {rest[k]!r}", ln, 8 + k)
                y, a, b = (_int(rest[k + t], ln, 8 + k + t) for t in (1, 2, 3))
                hs.append(Segment.horizontal(y, a, b))
            geom = SingleVerticalObject(Segment.vertical(x, y1, y2), tuple(hs))
        elif kind == "curve":
            if len(toks) < 5:
                raise ParseError("expected '<x0> <y0>'", ln, 4)
            x, y = _int(toks[3], ln, 4), _int(toks[4], ln, 5)
            rest = toks[5:]
            if len(rest) % 2:
                raise ParseError("steps come in '<dir> <len>' pairs", ln, 6 + len(rest))
            pts = [(x, y)]
            for k in range(0, len(rest), 2):
                d = rest[k]
                if d not in _STEP:
                    raise ParseError(f"unknown direction {d!r}", ln, 6 + k)
                n = _int(rest[k + 1], ln, 7 + k)
                if n <= 0:
                    raise ParseError("step length must be positive", ln, 7 + k)
                dx, dy = _STEP[d]
                x, y = x + dx * n, y + dy * n
                pts.append((x, y))
            if len(pts) == 1:
                pts.append(pts[0])
            geom = OrthoCurve(tuple(pts))
        else:
            raise ParseError(f"unknown record {kind!r}", ln, 1)
        return Obj(oid, w, geom)
    except GeometryError as e:
        raise ParseError(str(e), ln) from None


# ---------------------------------------------------------------------------
# representations


def _rep_lines(rep: Representation):
    out = []
    if rep.flags:
        out.append("flags " + " ".join(sorted(rep.flags)))
    if rep.line is not None:
        out.append(f"line {rep.line.orient} {fmt_half(rep.line.value2)}")
    for o in sorted(rep.objects, key=lambda o: o.id):
        out.append(object_record(o))
    return out


def serialize_representation(rep: Representation) -> str:
    return "\n".join([REP_HEADER] + _rep_lines(rep)) + "\n"


def representation_digest(rep: Representation) -> str:
    return hashlib.sha256(serialize_representation(rep).encode()).hexdigest()[:16]


def _records(text):
    for ln, raw in enumerate(text.splitlines(), 1):
        s = raw.strip()
        if s and not s.startswith("#"):
            yield ln, s.split()


def _parse_rep_records(recs):
    flags, line, objs, seen = set(), None, [], {}
    for ln, toks in recs:
        k = toks[0]
        if k == "flags":
            flags = set(toks[1:])
        elif k == "line":
            if len(toks) != 3 or toks[1] not in (H, V):
                raise ParseError("expected 'line h|v <value>/2'", ln)
            line = Line(toks[1], _half(toks[2], ln, 3))
        elif k in ("obj", "curve"):
            o = parse_object(toks, ln)
            if o.id in seen:
                raise ParseError(f"duplicate object id {o.id} (first on line {seen[o.id]})", ln, 2)
            seen[o.id] = ln
            objs.append(o)
        else:
            raise ParseError(f"unknown record {k!r}", ln, 1)
    return Representation(tuple(objs), flags, line)


def parse_representation(text: str) -> Representation:
    return _parse_rep_records(_records(text))


# ---------------------------------------------------------------------------
# parts


def _cert_lines(c):
    if isinstance(c, OuterstringGroups):
        out = [f"rotated {int(c.rotated)}"]
        for g in c.groups:
            ln = "-" if g.line2 is None else fmt_half(g.line2)
            out.append(" ".join(["group", ln, g.side] + [str(v) for v in g.members]))
        return out
    if isinstance(c, (PermutationPair, Dim3Triple)):
        return [" ".join([f"p{k + 1}"] + [str(v) for v in p]) for k, p in enumerate(c.perms)]
    if isinstance(c, Cornered):
        out = [
            f"corner {fmt_half(c.corner[0])} {fmt_half(c.corner[1])}",
            f"rays {c.r1} {c.r2}",
            " ".join(["order1"] + [str(v) for v in c.order1]),
            " ".join(["order2"] + [str(v) for v in c.order2]),
        ]
        return out + ["geometry"] + _rep_lines(c.geometry) + ["endgeometry"]
    if isinstance(c, (Centered, Grounded)):
        return [f"line2 {fmt_half(c.line2)}", "geometry"] + _rep_lines(c.geometry) + ["endgeometry"]
    if isinstance(c, SingleVerticalPair):
        return [f"rotated {int(c.rotated)}"]
    raise TypeError(f"cannot serialize {type(c).__name__}")


def serialize_parts(dec: Decomposition) -> str:
    out = [
        PARTS_HEADER,
        f"source {dec.source}",
        f"strategy {dec.strategy}",
        f"n {dec.n}",
        f"bound {dec.bound!r}",
        f"parts {len(dec.parts)}",
    ]
    for k, p in enumerate(dec.parts):
        out.append(" ".join(["part", str(k), "members"] + [str(v) for v in p.members]))
        out.append(f"cert {p.cert.kind}")
        out += _cert_lines(p.cert)
        out.append("end")
    if dec.edge_record:
        rows = sorted((tuple(sorted(e)), s) for e, s in dec.edge_record.items())
        out += [f"edge {u} {v} {s}" for (u, v), s in rows]
    return "\n".join(out) + "\n"


def _expect(recs, key):
    ln, toks = next(recs, (None, None))
    if toks is None:
        raise ParseError(f"unexpected end of file, expected {key!r}")
    if toks[0] != key:
        raise ParseError(f"expected {key!r}, got {toks[0]!r}", ln, 1)
    return ln, toks


def _parse_cert(kind, recs, ln0):
    if kind not in CERT_KINDS:
        raise ParseError(f"unknown certificate kind {kind!r}", ln0, 2)
    body = []
    geo = None
    for ln, toks in recs:
        if toks[0] == "end":
            break
        if toks[0] == "geometry":
            sub = []
            for ln2, t2 in recs:
                if t2[0] == "endgeometry":
                    break
                sub.append((ln2, t2))
            else:
                raise ParseError("geometry block not closed", ln)
            geo = _parse_rep_records(iter(sub))
            continue
        body.append((ln, toks))
    else:
        raise ParseError("part not closed with 'end'", ln0)
    f = {}
    groups = []
    for ln, toks in body:
        if toks[0] == "group":
            if len(toks) < 3:
                raise ParseError("expected 'group <line>|- <side> <ids>'", ln)
            line2 = None if toks[1] == "-" else _half(toks[1], ln, 2)
            groups.append(Group(line2, toks[2], _ids(toks[3:], ln, 4)))
        else:
            f[toks[0]] = (ln, toks[1:])

    def need(key):
        if key not in f:
            raise ParseError(f"{kind} certificate lacks {key!r}", ln0)
        return f[key]

    def perm(key):
        ln, t = need(key)
        return _ids(t, ln, 2)

    def flag(key):
        ln, t = need(key)
        if t not in (["0"], ["1"]):
            raise ParseError(f"{key} must be 0 or 1", ln, 2)
        return t == ["1"]

    if kind == "OuterstringGroups":
        return OuterstringGroups(tuple(groups), flag("rotated"))
    if kind == "PermutationPair":
        return PermutationPair(perm("p1"), perm("p2"))
    if kind == "Dim3Triple":
        return Dim3Triple(perm("p1"), perm("p2"), perm("p3"))
    if kind == "SingleVerticalPair":
        return SingleVerticalPair(flag("rotated"))
    if geo is None:
        raise ParseError(f"{kind} certificate lacks a geometry block", ln0)
    if kind == "Cornered":
        ln, t = need("corner")
        if len(t) != 2:
            raise ParseError("expected 'corner <x>/2 <y>/2'", ln)
        corner = (_half(t[0], ln, 2), _half(t[1], ln, 3))
        ln, t = need("rays")
        if len(t) != 2:
            raise ParseError("expected 'rays <r1> <r2>'", ln)
        return Cornered(corner, t[0], t[1], perm("order1"), perm("order2"), geo)
    ln, t = need("line2")
    line2 = _half(t[0], ln, 2)
    return (Centered if kind == "Centered" else Grounded)(line2, geo)


def parse_parts(text: str) -> Decomposition:
    recs = _records(text)
    _, t = _expect(recs, "source")
    source = t[1] if len(t) > 1 else ""
    _, t = _expect(recs, "strategy")
    strategy = t[1]
    ln, t = _expect(recs, "n")
    n = _int(t[1], ln, 2)
    ln, t = _expect(recs, "bound")
    try:
        bound = float(t[1])
    except ValueError:
        raise ParseError(f"bad bound {t[1]!r}", ln, 2) from None
    ln, t = _expect(recs, "parts")
    count = _int(t[1], ln, 2)
    parts, edges = [], {}
    for ln, toks in recs:
        if toks[0] == "part":
            if len(toks) < 3 or toks[2] != "members":
                raise ParseError("expected 'part <k> members <ids>'", ln)
            members = _ids(toks[3:], ln, 4)
            lc, tc = _expect(recs, "cert")
            parts.append(Part(members, _parse_cert(tc[1], recs, lc)))
        elif toks[0] == "edge":
            if len(toks) != 4 or toks[3] not in ("above", "below", "both"):
                raise ParseError("expected 'edge <u> <v> above|below|both'", ln)
            edges[frozenset(_ids(toks[1:3], ln, 2))] = toks[3]
        else:
            raise ParseError(f"unknown record {toks[0]!r}", ln, 1)
    if len(parts) != count:
        raise ParseError(f"header announces {count} parts, found {len(parts)}")
    return Decomposition(tuple(parts), source, n, bound, strategy, edge_record=edges or None)


# ---------------------------------------------------------------------------
# solutions


def serialize_solution(sol: Solution) -> str:
    out = [SOLUTION_HEADER, f"problem {sol.problem}", f"value {fmt_frac(sol.value)}"]
    if sol.problem == COLORING:
        out += [f"color {v} {c}" for v, c in sorted(sol.payload.items())]
    elif sol.problem == COVER:
        out += [" ".join(["clique"] + [str(v) for v in c]) for c in sol.payload]
    else:
        out.append(" ".join(["set"] + [str(v) for v in sol.payload]))
    return "\n".join(out) + "\n"


def parse_solution(text: str) -> Solution:
    recs = _records(text)
    ln, t = _expect(recs, "problem")
    problem = t[1] if len(t) > 1 else ""
    if problem not in PROBLEMS:
        raise ParseError(f"unknown problem {problem!r}", ln, 2)
    ln, t = _expect(recs, "value")
    value = _frac(t[1], ln, 2)
    payload = {} if problem == COLORING else []
    for ln, toks in recs:
        k = toks[0]
        if k == "color" and problem == COLORING:
            if len(toks) != 3:
                raise ParseError("expected 'color <id> <c>'", ln)
            payload[_int(toks[1], ln, 2)] = _int(toks[2], ln, 3)
        elif k == "clique" and problem == COVER:
            payload.append(_ids(toks[1:], ln, 2))
        elif k == "set" and problem not in (COLORING, COVER):
            payload = _ids(toks[1:], ln, 2)
        else:
            raise ParseError(f"unexpected record {k!r} for {problem}", ln, 1)
    if problem == COVER:
        payload = tuple(payload)
    elif problem not in (COLORING,):
        payload = tuple(payload)
    return Solution(problem, payload, value)

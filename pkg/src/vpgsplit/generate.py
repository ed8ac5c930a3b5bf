"""Seeded random instances in strict general position."""
from __future__ import annotations

from bisect import bisect_left, insort
from dataclasses import dataclass

import numpy as np

from .geometry import (
    Obj,
    OrthoCurve,
    Representation,
    Segment,
    SingleVerticalObject,
    object_pair_intersections,
)

KINDS = ("b1", "b2", "b2-1string", "single-vertical")


class InfeasibleSpec(ValueError):
    pass


@dataclass(frozen=True)
class InstanceSpec:
    kind: str
    n: int
    grid: int | None = None
    max_horizontals: int = 2
    weights: tuple = (1, 1)
    seed: int = 0
    span: float = 0.35

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InfeasibleSpec(f"unknown kind {self.kind!r}")
        if self.n < 1:
            raise InfeasibleSpec("n must be at least 1")
        if self.grid is not None and self.grid < 2 * self.n:
            raise InfeasibleSpec(f"grid {self.grid} too small for n={self.n} (need >= {2 * self.n})")
        lo, hi = self.weights
        if not 0 <= lo <= hi:
            raise InfeasibleSpec(f"bad weight range {self.weights}")

    @property
    def size(self):
        if self.grid is not None:
            return self.grid
        per = 2 + self.max_horizontals if self.kind == "single-vertical" else 3
        return per * self.n + 8


class _Pool:
    """Free grid values; ``take`` removes the free value nearest a target."""

    def __init__(self, size):
        self.free = list(range(size))
        self.size = size

    def take(self, target):
        if not self.free:
            raise InfeasibleSpec("grid too small for distinct coordinates")
        i = bisect_left(self.free, target)
        cands = [j for j in (i - 1, i) if 0 <= j < len(self.free)]
        j = min(cands, key=lambda j: (abs(self.free[j] - target), self.free[j]))
        return self.free.pop(j)

    def take_within(self, lo, hi, rng):
        a, b = bisect_left(self.free, lo), bisect_left(self.free, hi + 1)
        if a >= b:
            return None
        return self.free.pop(a + int(rng.integers(b - a)))

    def put(self, values):
        for v in values:
            insort(self.free, v)


class _Builder:
    def __init__(self, spec, rng):
        self.rng = rng
        self.size = spec.size
        self.xs = _Pool(self.size)
        self.ys = _Pool(self.size)
        self.reach = max(2, int(spec.span * self.size))
        self.taken = ([], [])

    def _len(self):
        return int(self.rng.integers(1, self.reach + 1))

    def _dir(self):
        return 1 if self.rng.random() < 0.5 else -1

    def x(self, near=None):
        v = self.xs.take(int(self.rng.integers(self.size)) if near is None else near)
        self.taken[0].append(v)
        return v

    def y(self, near=None):
        v = self.ys.take(int(self.rng.integers(self.size)) if near is None else near)
        self.taken[1].append(v)
        return v

    def far_x(self, x):
        """Free end of a horizontal; may coincide with other columns."""
        d = self._dir()
        e = x + d * self._len()
        if not 0 <= e < self.size:
            e = x - d * self._len()
        e = min(max(e, 0), self.size - 1)
        if e == x:
            e = x + 1 if x + 1 < self.size else x - 1
        return e

    def rollback(self):
        self.xs.put(self.taken[0])
        self.ys.put(self.taken[1])
        self.reset()

    def reset(self):
        self.taken = ([], [])

    def curve(self, bends):
        rng = self.rng
        if bends == 0:
            if rng.random() < 0.5:
                x = self.x()
                y0 = self.y()
                y1 = self.y(y0 + self._dir() * self._len())
                return OrthoCurve(((x, y0), (x, y1)))
            # the left end stands in for the column of a horizontal-only curve
            x0 = self.x()
            y = self.y()
            return OrthoCurve(((x0, y), (x0 + self._len(), y)))
        if bends == 1:
            x = self.x()
            y0 = self.y()
            y1 = self.y(y0 + self._dir() * self._len())
            xe = self.far_x(x)
            pts = ((x, y0), (x, y1), (xe, y1))
            return OrthoCurve(pts if rng.random() < 0.5 else pts[::-1])
        if rng.random() < 0.5:
            # vertical, horizontal, vertical
            x0 = self.x()
            y0 = self.y()
            y1 = self.y(y0 + self._dir() * self._len())
            x1 = self.x(x0 + self._dir() * self._len())
            y2 = self.y(y1 + self._dir() * self._len())
            pts = ((x0, y0), (x0, y1), (x1, y1), (x1, y2))
        else:
            x1 = self.x()
            ya = self.y()
            yb = self.y(ya + self._dir() * self._len())
            pts = ((self.far_x(x1), ya), (x1, ya), (x1, yb), (self.far_x(x1), yb))
        return OrthoCurve(pts if rng.random() < 0.5 else pts[::-1])

    def single_vertical(self, max_h):
        rng = self.rng
        x = self.x()
        y0 = self.y()
        y1 = self.y(y0 + self._dir() * self._len())
        lo, hi = min(y0, y1), max(y0, y1)
        hs = []
        for _ in range(int(rng.integers(max_h + 1))):
            y = self.ys.take_within(lo, hi, rng)
            if y is None:
                break
            self.taken[1].append(y)
            a = int(rng.integers(self.reach + 1))
            b = int(rng.integers(self.reach + 1)) if a else int(rng.integers(1, self.reach + 1))
            if rng.random() < 0.5:
                a, b = b, a
            hs.append(Segment.horizontal(y, x - a, x + b))
        return SingleVerticalObject(Segment.vertical(x, lo, hi), tuple(sorted(hs)))


def _multi_contact(geom, placed):
    return any(len(object_pair_intersections(geom, g)) > 1 for g in placed)


def generate_instance(spec: InstanceSpec) -> Representation:
    """Random representation of the requested kind.

    Vertical x-coordinates are distinct grid columns; every y-coordinate
    (horizontals and vertical end points) belongs to one object only.
    Output depends only on ``spec``.
    """
    rng = np.random.default_rng(spec.seed)
    b = _Builder(spec, rng)
    lo, hi = spec.weights
    objs, placed = [], []
    for i in range(spec.n):
        if spec.kind == "single-vertical":
            g = b.single_vertical(spec.max_horizontals)
        else:
            top = 1 if spec.kind == "b1" else 2
            for _ in range(200):
                g = b.curve(int(rng.integers(top + 1)))
                if spec.kind != "b2-1string" or not _multi_contact(g, placed):
                    break
                b.rollback()
            else:
                raise InfeasibleSpec("could not place a curve without repeated contacts")
        b.reset()
        placed.append(g)
        w = int(rng.integers(lo, hi + 1))
        objs.append(Obj(i, w, g))
    flags = {
        "b1": {"b1", "b2"},
        "b2": {"b2"},
        "b2-1string": {"b2", "1-string"},
        "single-vertical": {"single-vertical"},
    }[spec.kind]
    return Representation(tuple(objs), flags)

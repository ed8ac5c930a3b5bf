import pytest
from hypothesis import HealthCheck, settings

from vpgsplit.geometry import Obj, OrthoCurve, Representation, Segment, SingleVerticalObject

settings.register_profile(
    "repo", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("repo")


def curve(*pts, id=0, w=1):
    return Obj(id, w, OrthoCurve(tuple(pts)))


def sv(x, y1, y2, *hs, id=0, w=1):
    return Obj(
        id,
        w,
        SingleVerticalObject(
            Segment.vertical(x, y1, y2), tuple(Segment.horizontal(*h) for h in hs)
        ),
    )


def rep_of(*objs, flags=(), line=None):
    return Representation(tuple(objs), frozenset(flags), line)


@pytest.fixture
def helpers():
    class _H:
        pass

    h = _H()
    h.curve, h.sv, h.rep = curve, sv, rep_of
    return h

import pytest
from hypothesis import given, strategies as st

from conftest import curve, rep_of, sv
from vpgsplit.generate import InstanceSpec, generate_instance
from vpgsplit.geometry import (
    H,
    V,
    GeometryError,
    Line,
    Overlap,
    OrthoCurve,
    Segment,
    apply_transform,
    classify_b2_shape,
    compress_groups,
    extend_segment,
    object_pair_intersections,
    segments_intersect,
    validate_representation,
)
from vpgsplit.graph import build_intersection_graph, naive_intersection_edges


def test_crossing_point():
    a = Segment.vertical(2, 0, 4)
    b = Segment.horizontal(1, 0, 5)
    assert segments_intersect(a, b) == (2, 1)


def test_endpoint_contact_counts():
    assert segments_intersect(Segment.vertical(2, 0, 4), Segment.horizontal(4, 2, 5)) == (2, 4)


def test_parallel_disjoint():
    assert segments_intersect(Segment.horizontal(1, 0, 2), Segment.horizontal(3, 0, 2)) is None


def test_collinear_overlap():
    r = segments_intersect(Segment.horizontal(1, 0, 4), Segment.horizontal(1, 2, 6))
    assert isinstance(r, Overlap) and r.endpoints == ((2, 1), (4, 1))


def test_pair_intersections_examples():
    assert object_pair_intersections(
        OrthoCurve(((1, 0), (1, 2))), OrthoCurve(((3, 0), (3, 2)))
    ) == []
    L = OrthoCurve(((1, 0), (1, 2), (4, 2)))
    assert object_pair_intersections(L, OrthoCurve(((3, 1), (3, 3)))) == [(3, 2)]
    U = OrthoCurve(((0, 3), (0, 0), (4, 0), (4, 3)))
    bar = OrthoCurve(((-1, 2), (5, 2)))
    assert len(object_pair_intersections(U, bar)) == 2
    rep = rep_of(curve(*U.points, id=0), curve(*bar.points, id=1), flags={"b2"})
    assert not validate_representation(rep, "1-string").ok


def test_validation_examples():
    assert validate_representation(rep_of(sv(0, 0, 3)), "single-vertical").ok
    U = curve((0, 3), (0, 0), (4, 0), (4, 3))
    assert not validate_representation(rep_of(U), "single-vertical").ok
    r = validate_representation(
        rep_of(curve((0, 1), (3, 1), id=0), curve((5, 1), (9, 1), id=1)), "b0"
    )
    assert not r.ok and "general position" in r.violations[0]


def test_strict_position_flags_shared_endpoint_y():
    r = rep_of(curve((0, 0), (0, 5), id=0), curve((2, 5), (2, 9), id=1))
    assert validate_representation(r, "b0").ok
    assert not validate_representation(r, "b0", strict=True).ok


def test_bends_limit():
    Z = curve((0, 0), (0, 2), (3, 2), (3, 4), (5, 4))
    assert not validate_representation(rep_of(Z), "b2").ok


def test_classify_shapes():
    assert classify_b2_shape(OrthoCurve(((0, 0), (4, 0)))) == (0, "segment-h")
    assert classify_b2_shape(OrthoCurve(((0, 2), (0, 0), (3, 0), (3, 2))))[0] == 2
    assert classify_b2_shape(OrthoCurve(((3, 0), (0, 0), (0, 2), (3, 2))))[0] == 1


def test_transform_examples():
    r = rep_of(curve((0, 3), (0, 0), (4, 0), (4, 3)))
    assert apply_transform(r, "translate-y", dy=0) == r
    rot = apply_transform(r, "rotate-90")
    assert classify_b2_shape(rot.objects[0].geom)[0] == 1
    g = extend_segment(OrthoCurve(((1, 2), (1, 4))), 0, 0)
    assert g.segments[0] == Segment.vertical(1, 0, 4)


def test_fold_is_rejected():
    L = OrthoCurve(((1, 0), (1, 2), (4, 2)))
    with pytest.raises(GeometryError):
        extend_segment(L, 0, 5)


def test_line_follows_rotation():
    r = rep_of(sv(0, -1, 1), line=Line(H, 1))
    assert apply_transform(r, "rotate-90").line == Line(V, -1)
    assert apply_transform(r, "rotate-180").line == Line(H, -1)


seeds = st.integers(0, 10_000)
kinds = st.sampled_from(["b1", "b2", "single-vertical"])


@given(seeds, kinds, st.sampled_from(["mirror-x", "rotate-180", "translate"]))
def test_rigid_transforms_keep_graph(seed, kind, t):
    rep = generate_instance(InstanceSpec(kind, 10, seed=seed))
    out = apply_transform(rep, t, dx=3, dy=-7)
    assert build_intersection_graph(out).edge_set() == build_intersection_graph(rep).edge_set()


@given(seeds)
def test_rotate_90_keeps_graph(seed):
    rep = generate_instance(InstanceSpec("b2", 10, seed=seed))
    out = apply_transform(rep, "rotate-90")
    assert naive_intersection_edges(out) == naive_intersection_edges(rep)


@given(seeds, st.integers(1, 4))
def test_compress_groups_is_disjoint_union(seed, k):
    reps = [generate_instance(InstanceSpec("b2", 5, seed=seed + i)) for i in range(k)]
    groups = [{(i, o.id): o.geom for o in r.objects} for i, r in enumerate(reps)]
    geoms, _ = compress_groups(groups)
    from vpgsplit.geometry import Obj, Representation

    merged = Representation(tuple(Obj(key, 1, g) for key, g in geoms.items()))
    want = set()
    for i, r in enumerate(reps):
        want |= {frozenset((i, v) for v in e) for e in naive_intersection_edges(r)}
    assert naive_intersection_edges(merged) == want

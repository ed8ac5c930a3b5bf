import re
import xml.etree.ElementTree as ET

import pytest
from hypothesis import given, strategies as st

from conftest import curve, rep_of, sv
from vpgsplit import cli
from vpgsplit.decompose import decompose_b2_full, split_single_vertical_outerstring
from vpgsplit.fileio import (
    ParseError,
    parse_parts,
    parse_representation,
    parse_solution,
    serialize_parts,
    serialize_representation,
    serialize_solution,
)
from vpgsplit.generate import InfeasibleSpec, InstanceSpec, generate_instance
from vpgsplit.geometry import H, Line, Representation, validate_representation
from vpgsplit.graph import WIS, coloring_solution, cover_solution
from vpgsplit.render import render_svg

SVG = "{http://www.w3.org/2000/svg}"


def test_generator_examples():
    r = generate_instance(InstanceSpec("b1", 1, seed=7))
    assert len(r) == 1 and r.objects[0].geom.bends <= 1
    assert serialize_representation(r) == serialize_representation(generate_instance(InstanceSpec("b1", 1, seed=7)))
    big = generate_instance(InstanceSpec("b2", 50, seed=3))
    assert validate_representation(big, "b2", strict=True).ok


def test_generator_rejects_small_grid():
    with pytest.raises(InfeasibleSpec):
        InstanceSpec("b2", 10, grid=5)
    with pytest.raises(InfeasibleSpec):
        InstanceSpec("b3", 10)


@given(st.integers(0, 10_000), st.sampled_from(["b1", "b2", "b2-1string", "single-vertical"]))
def test_generated_kinds_validate(seed, kind):
    r = generate_instance(InstanceSpec(kind, 20, seed=seed, weights=(1, 9)))
    cls = {"b1": "b1", "b2": "b2", "b2-1string": "1-string", "single-vertical": "single-vertical"}[kind]
    assert validate_representation(r, cls, strict=True).ok


def test_empty_representation_round_trip():
    text = serialize_representation(Representation(()))
    assert parse_representation(text) == Representation(())


@given(st.integers(0, 10_000), st.sampled_from(["b2", "single-vertical"]))
def test_representation_round_trip(seed, kind):
    r = generate_instance(InstanceSpec(kind, 30, seed=seed, weights=(0, 7)))
    text = serialize_representation(r)
    assert parse_representation(text) == r
    assert serialize_representation(parse_representation(text)) == text


def test_line_and_degenerate_curve_round_trip():
    r = rep_of(curve((2, 3), (2, 3), id=4), sv(0, -2, 2, (1, -3, 4), id=1), line=Line(H, 1))
    text = serialize_representation(r)
    assert "line h 1/2" in text
    back = parse_representation(text)
    assert back.line == r.line and back.by_id() == r.by_id()


@given(st.integers(0, 10_000))
def test_parts_round_trip(seed):
    r = generate_instance(InstanceSpec("b2", 20, seed=seed))
    for dec in (decompose_b2_full(r), split_single_vertical_outerstring(
        generate_instance(InstanceSpec("single-vertical", 20, seed=seed))
    )):
        text = serialize_parts(dec)
        back = parse_parts(text)
        assert back == dec
        assert serialize_parts(back) == text


def test_geometry_certificates_round_trip():
    from vpgsplit.decompose import split_grounded_to_cornered, split_to_centered

    r = generate_instance(InstanceSpec("b1", 25, seed=5))
    for d in (split_to_centered(r),):
        assert parse_parts(serialize_parts(d)) == d
    geo = split_to_centered(r).parts[0].cert.geometry
    from vpgsplit.decompose import cut_at_center

    d = split_grounded_to_cornered(cut_at_center(geo).upper)
    assert parse_parts(serialize_parts(d)) == d


def test_solution_round_trip():
    for sol in (
        coloring_solution({1: 2, 0: 1}),
        cover_solution([(0, 1), (2,)]),
    ):
        assert parse_solution(serialize_solution(sol)) == sol
    from vpgsplit.graph import Solution
    from fractions import Fraction

    s = Solution(WIS, (1, 4), Fraction(7, 3))
    assert parse_solution(serialize_solution(s)) == s


def test_duplicate_id_is_named():
    text = "curve 3 1/1 0 0 u 2\ncurve 3 1/1 5 0 u 2\n"
    with pytest.raises(ParseError, match="duplicate object id 3"):
        parse_representation(text)


def test_syntax_diagnostics():
    with pytest.raises(ParseError, match="line 1, field 6"):
        parse_representation("curve 0 1/1 0 0 x 2\n")
    with pytest.raises(ParseError, match="num/den"):
        parse_representation("curve 0 1 0 0 u 2\n")


def _svg(rep, dec=None):
    return ET.fromstring(render_svg(rep, dec).split("\n", 1)[1])


def test_svg_counts():
    root = _svg(Representation(()))
    assert root.findall(f"{SVG}polyline") == [] and len(root.findall(f"{SVG}line")) == 2
    r = rep_of(*(curve((i, 0), (i, 3), (i + 2, 3), id=i) for i in range(3)))
    assert len(_svg(r).findall(f"{SVG}polyline")) == 3


def test_svg_part_colors():
    r = generate_instance(InstanceSpec("single-vertical", 40, seed=2))
    d = split_single_vertical_outerstring(r)
    root = _svg(r, d)
    colors = {e.get("stroke") for e in root.findall(f"{SVG}path") + root.findall(f"{SVG}polyline")}
    assert len(colors) == len(d.parts)


# -- command line -------------------------------------------------------------


def run(*args):
    return cli.main([str(a) for a in args])


def test_cli_pipeline(tmp_path, capsys):
    inst, parts = tmp_path / "i.txt", tmp_path / "p.txt"
    assert run("generate", "--kind", "b2", "--n", 1, "--seed", 4, "-o", inst) == 0
    assert run("decompose", inst, "--strategy", "b2-full", "-o", parts) == 0
    assert parse_parts(parts.read_text()).parts and len(parse_parts(parts.read_text()).parts) == 1
    assert run("verify", inst, parts) == 0


def test_cli_oracle_report(tmp_path):
    inst, rep = tmp_path / "i.txt", tmp_path / "r.json"
    run("generate", "--kind", "single-vertical", "--n", 12, "--seed", 8, "--weights", "1:50", "-o", inst)
    assert run("solve", inst, "--problem", "wis", "--oracle", "--report", rep, "-o", tmp_path / "s.txt") == 0
    import json
    from fractions import Fraction

    r = json.loads(rep.read_text())
    assert Fraction(r["oracle"]["ratio"]) >= Fraction(1, r["k"])
    assert "seconds" not in r


def test_cli_corrupted_parts(tmp_path):
    inst, parts = tmp_path / "i.txt", tmp_path / "p.txt"
    run("generate", "--kind", "b2", "--n", 40, "--seed", 1, "-o", inst)
    run("decompose", inst, "--strategy", "b2-full", "-o", parts)
    text = parts.read_text()
    # swap the first two entries of the first permutation with at least two
    m = re.search(r"^p1 (\d+) (\d+)", text, re.M)
    text = text[: m.start()] + f"p1 {m.group(2)} {m.group(1)}" + text[m.end():]
    parts.write_text(text)
    assert run("verify", inst, parts) == cli.EXIT_VERIFY


def test_cli_exit_codes(tmp_path, monkeypatch):
    assert run("nonsense") == cli.EXIT_USAGE
    assert run("generate", "--kind", "b2") == cli.EXIT_USAGE
    assert run("verify", tmp_path / "missing", tmp_path / "missing") == cli.EXIT_IO
    bad = tmp_path / "bad.txt"
    bad.write_text("curve 0 1/1 0 0 q 1\n")
    assert run("decompose", bad, "--strategy", "b2-full") == cli.EXIT_INVALID
    big = tmp_path / "big.txt"
    run("generate", "--kind", "single-vertical", "--n", 25, "-o", big)
    assert run("solve", big, "--problem", "wis", "--oracle", "-o", tmp_path / "s") == cli.EXIT_CAP
    monkeypatch.setenv(cli.SEED_ENV, "x")
    assert run("generate", "--kind", "b1", "--n", 2) == cli.EXIT_USAGE


def test_seed_from_environment(tmp_path, monkeypatch):
    a, b = tmp_path / "a", tmp_path / "b"
    monkeypatch.setenv(cli.SEED_ENV, "17")
    run("generate", "--kind", "b2", "--n", 9, "-o", a)
    monkeypatch.delenv(cli.SEED_ENV)
    run("generate", "--kind", "b2", "--n", 9, "--seed", 17, "-o", b)
    assert a.read_bytes() == b.read_bytes()


def test_render_and_report(tmp_path):
    inst = tmp_path / "i.txt"
    run("generate", "--kind", "b1", "--n", 10, "--seed", 2, "-o", inst)
    run("decompose", inst, "--strategy", "b1-full", "-o", tmp_path / "p.txt")
    assert run("render", inst, "--parts", tmp_path / "p.txt", "-o", tmp_path / "x.svg") == 0
    ET.fromstring((tmp_path / "x.svg").read_text().split("\n", 1)[1])
    runs = tmp_path / "runs"
    runs.mkdir()
    for p in ("wis", "clique", "coloring", "clique-cover"):
        args = ["solve", inst, "--problem", p, "--oracle", "--report", runs / f"{p}.json", "-o", tmp_path / "s"]
        if p in ("clique", "clique-cover"):
            args += ["--pipeline", "b1"]
        assert run(*args) == 0
    assert run("report", runs, "-o", tmp_path / "sum.json") == 0
    import json

    summary = json.loads((tmp_path / "sum.json").read_text())
    assert summary["runs"] == 4

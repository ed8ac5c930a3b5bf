"""Command line: generate, decompose, solve, verify, render, report.

Exit codes: 0 ok, 1 usage, 2 I/O, 3 validation, 4 verification failed,
5 size cap exceeded.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from . import approx
from .decompose import (
    DecompositionError,
    centered_to_parts,
    decompose_b1_full,
    decompose_b2_full,
    split_to_centered,
    verify_decomposition,
)
from .fileio import (
    ParseError,
    fmt_frac,
    parse_parts,
    parse_representation,
    representation_digest,
    serialize_parts,
    serialize_representation,
    serialize_solution,
    write_atomic,
)
from .generate import KINDS, InfeasibleSpec, InstanceSpec, generate_instance
from .geometry import GeometryError
from .graph import CLIQUE, COLORING, COVER, WIS, CapExceeded, brute_force_solve, build_intersection_graph
from .render import render_svg

SEED_ENV = "VPGSPLIT_SEED"

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_INVALID, EXIT_VERIFY, EXIT_CAP = range(6)

STRATEGIES = ("outerstring", "centered", "cocomp", "permutation", "b1-full", "b2-full")
PROBLEM_NAMES = {"wis": WIS, "clique": CLIQUE, "coloring": COLORING, "clique-cover": COVER}


class UsageError(Exception):
    pass


class VerificationFailed(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _default_seed():
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def _weights(text):
    lo, sep, hi = text.partition(":")
    try:
        return (int(lo), int(hi)) if sep else (int(lo), int(lo))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}") from None


def _read(path):
    with open(path, encoding="utf-8") as f:
        return f.read()


def _emit(text, path):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        write_atomic(path, text)


def _load_rep(path):
    return parse_representation(_read(path))


def _jsonable(x):
    if isinstance(x, Fraction):
        return fmt_frac(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def dump_report(report):
    return json.dumps(_jsonable(report), indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# verbs


def cmd_generate(a):
    seed = a.seed if a.seed is not None else _default_seed()
    spec = InstanceSpec(a.kind, a.n, a.grid, a.max_horizontals, a.weights, seed)
    _emit(serialize_representation(generate_instance(spec)), a.output)
    return EXIT_OK


def decompose_with(rep, strategy, onestring=False):
    if strategy == "outerstring":
        return approx.outerstring_decomposition(rep)
    if strategy == "centered":
        return split_to_centered(rep)
    if strategy == "cocomp":
        if rep.line is None:
            raise DecompositionError("cocomp needs a centered representation with a horizontal line")
        return centered_to_parts(rep, onestring)
    if strategy == "permutation":
        return decompose_b2_full(rep, onestring=True)
    if strategy == "b1-full":
        return decompose_b1_full(rep)
    return decompose_b2_full(rep, onestring)


def cmd_decompose(a):
    rep = _load_rep(a.input)
    dec = decompose_with(rep, a.strategy, a.onestring)
    _emit(serialize_parts(dec), a.output)
    return EXIT_OK


def _verification(dec, rep, G):
    r = verify_decomposition(dec, rep, G)
    return {
        "ok": r.ok,
        "parts": len(dec.parts),
        "bound": dec.bound,
        "strategy": dec.strategy,
        "errors": r.errors,
    }


def cmd_solve(a):
    rep = _load_rep(a.input)
    G = build_intersection_graph(rep)
    problem = PROBLEM_NAMES[a.problem]
    stages, times = {}, {}
    t0 = time.perf_counter()
    if problem == WIS:
        res = approx.approx_wis(rep, G)
    elif problem == CLIQUE:
        res = approx.approx_weighted_clique(rep, a.onestring, a.pipeline, G)
    elif problem == COVER:
        res = approx.approx_clique_cover(rep, a.onestring, a.pipeline, G)
    else:
        res = approx.approx_coloring(G, approx.wis_solver_for(rep))
    times["solve"] = time.perf_counter() - t0
    if res.decomposition is not None:
        stages["decomposition"] = _verification(res.decomposition, rep, G)
    report = {
        "instance": representation_digest(rep),
        "n": G.n,
        "edges": len(G.edges()),
        "problem": problem,
        "value": res.solution.value,
        "size": res.solution.size,
        "k": res.k,
        "factor": res.factor,
        "formula": res.formula,
        "notes": list(res.notes),
        "stages": stages,
    }
    if a.oracle:
        t0 = time.perf_counter()
        opt = brute_force_solve(G, problem)
        times["oracle"] = time.perf_counter() - t0
        entry = {"opt": opt.value}
        if problem in (WIS, CLIQUE):
            entry["ratio"] = res.solution.value / opt.value if opt.value else Fraction(1)
            entry["within_k"] = res.solution.value * res.k >= opt.value
        else:
            entry["ratio"] = res.solution.value / opt.value if opt.value else Fraction(1)
        report["oracle"] = entry
    if a.timings:
        report["seconds"] = {k: round(v, 6) for k, v in times.items()}
    _emit(serialize_solution(res.solution), a.output)
    if a.report:
        write_atomic(a.report, dump_report(report))
    return EXIT_OK


def cmd_verify(a):
    rep = _load_rep(a.input)
    dec = parse_parts(_read(a.parts))
    G = build_intersection_graph(rep)
    result = _verification(dec, rep, G)
    digest = representation_digest(rep)
    if dec.source != digest:
        result["ok"] = False
        result["errors"].insert(0, f"parts file was made for instance {dec.source}, not {digest}")
    lines = [f"parts {result['parts']} bound {result['bound']:.3f}"]
    lines += [f"FAIL {e}" for e in result["errors"]]
    lines.append("OK" if result["ok"] else "VERIFICATION FAILED")
    sys.stdout.write("\n".join(lines) + "\n")
    if not result["ok"]:
        raise VerificationFailed()
    return EXIT_OK


def cmd_render(a):
    rep = _load_rep(a.input)
    dec = parse_parts(_read(a.parts)) if a.parts else None
    _emit(render_svg(rep, dec), a.output)
    return EXIT_OK


def cmd_report(a):
    runs = []
    for name in sorted(os.listdir(a.directory)):
        if name.endswith(".json"):
            with open(os.path.join(a.directory, name), encoding="utf-8") as f:
                try:
                    runs.append((name, json.load(f)))
                except json.JSONDecodeError as e:
                    raise ParseError(f"{name}: {e}") from None
    summary = {"runs": len(runs), "by_problem": {}}
    for name, r in runs:
        p = summary["by_problem"].setdefault(
            r.get("problem", "?"),
            {"runs": 0, "max_k_over_factor": 0.0, "certificate_failures": 0, "oracle_runs": 0, "min_ratio": None},
        )
        p["runs"] += 1
        if r.get("factor"):
            p["max_k_over_factor"] = max(p["max_k_over_factor"], r["k"] / r["factor"])
        for st in r.get("stages", {}).values():
            if not st.get("ok", True):
                p["certificate_failures"] += 1
        if "oracle" in r:
            p["oracle_runs"] += 1
            ratio = float(Fraction(r["oracle"]["ratio"]))
            p["min_ratio"] = ratio if p["min_ratio"] is None else min(p["min_ratio"], ratio)
    _emit(dump_report(summary), a.output)
    return EXIT_OK


def build_parser():
    p = _Parser(prog="vpgsplit", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", help="write a random instance")
    g.add_argument("--kind", choices=KINDS, required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--grid", type=int)
    g.add_argument("--max-horizontals", type=int, default=2)
    g.add_argument("--weights", type=_weights, default=(1, 1), help="LO:HI integer range")
    g.add_argument("--seed", type=int, help=f"default: ${SEED_ENV} or 0")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_generate)

    d = sub.add_parser("decompose", help="write a parts file")
    d.add_argument("input")
    d.add_argument("--strategy", choices=STRATEGIES, required=True)
    d.add_argument("--onestring", action="store_true")
    d.add_argument("-o", "--output")
    d.set_defaults(func=cmd_decompose)

    s = sub.add_parser("solve", help="approximate a problem, optionally against the exact oracle")
    s.add_argument("input")
    s.add_argument("--problem", choices=tuple(PROBLEM_NAMES), required=True)
    s.add_argument("--pipeline", choices=("b1", "b2"), default="b2")
    s.add_argument("--onestring", action="store_true")
    s.add_argument("--oracle", action="store_true")
    s.add_argument("--timings", action="store_true", help="add wall-clock seconds to the report")
    s.add_argument("--report")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="check a parts file against its instance")
    v.add_argument("input")
    v.add_argument("parts")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("render", help="draw an instance as SVG")
    r.add_argument("input")
    r.add_argument("--parts")
    r.add_argument("-o", "--output")
    r.set_defaults(func=cmd_render)

    rp = sub.add_parser("report", help="aggregate run reports in a directory")
    rp.add_argument("directory")
    rp.add_argument("-o", "--output")
    rp.set_defaults(func=cmd_report)
    return p


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except VerificationFailed:
        return EXIT_VERIFY
    except CapExceeded as e:
        print(f"cap exceeded: {e}", file=sys.stderr)
        return EXIT_CAP
    except (ParseError, DecompositionError, GeometryError, InfeasibleSpec) as e:
        print(f"invalid input: {e}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as e:
        print(f"i/o error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface: ``chromlag <subcommand> ...``.

Exit status is 0 on success, 1 when the input is well-formed but the
computation rejects it (bad graph, invalid phase, ...), and 2 on usage
errors.  Randomized checks take their seed from ``--seed`` or the
``CHROMLAG_SEED`` environment variable, and the seed in use is printed.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional

from . import io
from .chromatic import (
    brute_force_moduli_count,
    chromatic_polynomial,
    fillability_obstruction,
    moduli_count_poly,
)
from .homlattice import (
    DEFAULT_GAUGES,
    PHASE_PRESETS,
    PhaseError,
    blowup_lattice_split,
    h1_presentation,
    preset_phase,
    validate_phase_framing,
)
from .periods import build_chart, chromatic_lagrangian_relations, format_edge_table
from .ribbon import NAMED_GRAPHS, GraphError, RibbonGraph, blow_up, dual, edge_move, named_graph, validate
from .superpot import DEFAULT_ORDER, DEFAULT_SEED, bps_invert, li2_form, pipeline

SEED_ENV = "CHROMLAG_SEED"

log = logging.getLogger("chromlag")


class UsageError(Exception):
    pass


# -- argument helpers ----------------------------------------------------------------


def _load_graph(src: str) -> RibbonGraph:
    if src in NAMED_GRAPHS:
        return named_graph(src)
    if Path(src).is_file():
        return io.load_graph(src)
    raise UsageError(f"--graph {src!r} is neither a preset ({', '.join(sorted(NAMED_GRAPHS))}) nor a file")


def _parse_matrix(text: str, name: str):
    try:
        m = json.loads(text)
    except json.JSONDecodeError:
        raise UsageError(f"{name} must be a JSON array such as [[0,1],[1,0]], got {text!r}") from None
    if not isinstance(m, list) or not all(isinstance(r, list) and all(isinstance(x, int) for x in r) for r in m):
        raise UsageError(f"{name} must be a list of integer rows")
    return m


def _parse_vector(text: str, name: str):
    text = text.strip()
    try:
        v = json.loads(text) if text.startswith("[") else [int(x) for x in text.split(",")]
    except (json.JSONDecodeError, ValueError):
        raise UsageError(f"{name} must look like 1,-1 or [1,-1], got {text!r}") from None
    return [int(x) for x in v]


def _parse_gauge(text: Optional[str]):
    if text is None:
        return None
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 3:
        raise UsageError(f"--gauge needs three comma-separated faces, got {text!r}")
    return tuple(int(p) if p.lstrip("-").isdigit() else p for p in parts)


def _seed(args) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get(SEED_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"{SEED_ENV}={env!r} is not an integer") from None
    return DEFAULT_SEED


def _resolve_phase(args, graph_src: Optional[str]):
    framing = None
    if args.framing is not None and args.framing != "zero":
        framing = _parse_matrix(args.framing, "--framing")
    signs = _parse_vector(args.signs, "--signs") if args.signs else None
    if args.phase in PHASE_PRESETS:
        gname, pf = preset_phase(args.phase)
        g = pf.g
        if framing is None:
            framing = [[0] * g for _ in range(g)]
        pf = pf.with_framing(framing, signs)
        graph_src = graph_src or gname
        return graph_src, pf, args.phase
    if args.phase and Path(args.phase).is_file():
        pf = io.load_phase(args.phase)
        if args.framing == "zero":
            pf = pf.with_framing([[0] * pf.g for _ in range(pf.g)], signs if signs is not None else pf.signs)
        elif framing is not None or signs is not None:
            pf = pf.with_framing(framing if framing is not None else pf.framing, signs if signs is not None else pf.signs)
        return graph_src, pf, None
    raise UsageError(f"--phase {args.phase!r} is neither a preset ({', '.join(PHASE_PRESETS)}) nor a file")


def _emit(args, doc: dict, lines: List[str]) -> None:
    if args.json:
        sys.stdout.write(io.dumps(doc))
    else:
        for line in lines:
            print(line)
    out = getattr(args, "out", None)
    if out:
        Path(out).write_text(io.dumps(doc))


# -- subcommands ---------------------------------------------------------------------


def cmd_validate(args):
    g = _load_graph(args.graph)
    stats = validate(g).as_dict()
    _emit(args, stats, [json.dumps(stats)])


def cmd_chromatic(args):
    g = _load_graph(args.graph)
    d = dual(g)
    p = chromatic_polynomial(d)
    m = moduli_count_poly(g)
    doc = {
        "dual_vertices": d.vertex_count,
        "dual_edges": len(d.edges),
        "chromatic_polynomial": p.format("x"),
        "chromatic_coefficients": list(p.coefficients),
        "moduli_count": m.format("q"),
        "moduli_coefficients": list(m.coefficients),
    }
    _emit(args, doc, [f"P_dual(x) = {doc['chromatic_polynomial']}", f"#M(F_q) = {doc['moduli_count']}"])


def cmd_count(args):
    g = _load_graph(args.graph)
    m = moduli_count_poly(g)
    rows = []
    for q in args.q:
        brute = brute_force_moduli_count(g, q)
        rows.append({"q": q, "brute_force": brute, "polynomial": m(q), "agree": brute == m(q)})
    doc = {"moduli_count": m.format("q"), "counts": rows}
    lines = [f"#M(F_q) = {doc['moduli_count']}"]
    lines += [f"q={r['q']}: brute force {r['brute_force']}, polynomial {r['polynomial']}" for r in rows]
    _emit(args, doc, lines)
    if not all(r["agree"] for r in rows):
        raise AssertionError("brute-force count disagrees with the chromatic polynomial")


def cmd_fillability(args):
    g = _load_graph(args.graph)
    rep = fillability_obstruction(g)
    doc = rep.as_dict()
    verdict = "no torus chart" if rep.obstructed else "not obstructed by this count"
    doc["verdict"] = verdict
    lines = [
        f"#M(F_q)    = {doc['moduli_poly']}",
        f"(q-1)^{rep.genus}  = {doc['torus_poly']}",
        f"q^{rep.genus - 1} coefficients: {rep.second_coeff_moduli} vs {rep.second_coeff_torus}",
        f"verdict: {verdict}",
    ]
    _emit(args, doc, lines)


def cmd_lattice(args):
    g = _load_graph(args.graph)
    pres = h1_presentation(g)
    doc = {
        "rank": pres.rank,
        "face_invariant_factors": pres.face_invariant_factors,
        "form": pres.form,
        "basis": [list(b) for b in pres.basis],
        "induced_form": pres.induced_form,
    }
    lines = [f"H_1 rank {pres.rank}", f"face quotient torsion: {pres.face_torsion or 'none'}"]
    lines += ["basis:"] + [f"  {list(b)}" for b in pres.basis]
    lines += ["induced form:"] + [f"  {r}" for r in pres.induced_form]
    if args.phase:
        _, pf, _ = _resolve_phase(args, args.graph)
        check = validate_phase_framing(pres, pf)
        doc["phase"] = {
            "valid": True,
            "duality_sign": check.duality_sign,
            "lift_kernel_pairings": check.lift_kernel_pairings,
        }
        lines.append(f"phase valid (duality sign {check.duality_sign:+d})")
    _emit(args, doc, lines)


def cmd_periods(args):
    g = _load_graph(args.graph)
    gauge = _parse_gauge(args.gauge)
    if gauge is None and args.graph in DEFAULT_GAUGES:
        gauge = DEFAULT_GAUGES[args.graph]
    chart = build_chart(g, gauge)
    table = format_edge_table(chart)
    doc = {
        "gauge": [g.face_label(i) for i in chart.gauge],
        "variables": list(chart.variables),
        "edges": dict(table),
    }
    lines = [f"gauge 0, 1, oo at faces {', '.join(doc['gauge'])}; free: {', '.join(chart.variables) or '-'}"]
    lines += [f"{s} = {v}" for s, v in table]
    if args.check:
        res = chromatic_lagrangian_relations(chart, args.check)
        doc["checked"] = [r for r, _ in res]
        lines += [f"relation holds: {r}" for r, _ in res]
    _emit(args, doc, lines)


def cmd_superpotential(args):
    seed = _seed(args)
    graph_src, pf, preset = _resolve_phase(args, args.graph)
    if graph_src is None:
        raise UsageError("--graph is required with a phase file")
    g = _load_graph(graph_src)
    gauge = _parse_gauge(args.gauge)
    if gauge is None and graph_src in DEFAULT_GAUGES:
        gauge = DEFAULT_GAUGES[graph_src]
    rep = pipeline(g, gauge, pf, order=args.order, twist=args.twist, seed=seed)
    doc = rep.as_dict()
    lines = [f"seed: {seed}", "zero-framing relations:"] + [f"  {r} = 0" for r in rep.relations]
    lines.append(f"framing {[list(r) for r in rep.framing]}, signs {list(rep.signs)}, twist {rep.twist:+d}")
    lines.append(f"integral: {str(rep.integral).lower()}")
    if rep.integral:
        lines.append(f"W = {rep.li2_form}")
    else:
        lines.append("BPS numbers (non-integral):")
        lines += [f"  a{e} = {io.frac_str(c)}" for e, c in sorted(rep.a.items(), key=lambda kv: (sum(kv[0]), kv[0]))]
        if preset:
            lines.append("hint: try the opposite sign convention with --twist -1 or explicit --signs")
    _emit(args, doc, lines)


def cmd_bps(args):
    doc_in = json.loads(Path(args.input).read_text())
    kdoc = doc_in.get("K", doc_in)
    K = {}
    for key, val in kdoc.items():
        e = tuple(int(x) for x in str(key).split(","))
        K[e] = Fraction(val)
    if not K:
        raise ValueError("no K coefficients in input")
    nvars = len(next(iter(K)))
    order = args.order or max(sum(e) for e in K)
    a, integral = bps_invert(K, order, nvars)
    names = [f"U{i + 1}" for i in range(nvars)]
    doc = {
        "order": order,
        "a": {",".join(map(str, e)): io.frac_str(c) for e, c in sorted(a.items(), key=lambda kv: (sum(kv[0]), kv[0]))},
        "integral": integral,
        "li2_form": li2_form(a, names) if integral else None,
    }
    lines = [f"integral: {str(integral).lower()}"]
    lines += [f"a({k}) = {v}" for k, v in doc["a"].items()]
    _emit(args, doc, lines)


def cmd_blowup(args):
    g = _load_graph(args.graph)
    b = blow_up(g, args.vertex)
    doc = io.graph_to_dict(b)
    stats = validate(b).as_dict()
    split = blowup_lattice_split(g, args.vertex) if all(
        g.vertex_of()[x] != g.vertex_of()[y] for x, y in g.edge_pairs()
    ) else None
    lines = [json.dumps(stats)]
    if split is not None:
        lines.append(f"lattice split orthogonal: {split.ok}")
    if args.out:
        lines.append(f"wrote {args.out}")
    _emit(args, doc if args.json or args.out else stats, lines)


def cmd_edgemove(args):
    g = _load_graph(args.graph)
    m = edge_move(g, args.edge)
    doc = io.graph_to_dict(m)
    stats = validate(m).as_dict()
    lines = [json.dumps(stats), f"simple: {str(m.is_simple()).lower()}"]
    if args.out:
        lines.append(f"wrote {args.out}")
    _emit(args, doc if args.json or args.out else stats, lines)


# -- parser --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="chromlag", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=func)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        return sp

    def graph_arg(sp, required=True):
        sp.add_argument("--graph", required=required, help="preset name or graph JSON file")

    sp = add("validate", cmd_validate, "print v, e, f, g")
    graph_arg(sp)
    sp = add("chromatic", cmd_chromatic, "dual chromatic polynomial and point count")
    graph_arg(sp)
    sp = add("count", cmd_count, "brute-force point counts over F_q")
    graph_arg(sp)
    sp.add_argument("--q", type=int, nargs="+", default=[2, 3, 4])
    sp = add("fillability", cmd_fillability, "point-count obstruction to torus charts")
    graph_arg(sp)
    sp = add("lattice", cmd_lattice, "H_1 presentation and intersection form")
    graph_arg(sp)
    sp.add_argument("--phase", help="optional phase to validate")
    sp.add_argument("--framing")
    sp.add_argument("--signs")
    sp = add("periods", cmd_periods, "cross-ratio edge coordinates on a gauge-fixed chart")
    graph_arg(sp)
    sp.add_argument("--gauge", help="three faces (labels or indices) sent to 0, 1, oo")
    sp.add_argument("--check", nargs="*", help="relations in x1..xe to verify")
    sp = add("superpotential", cmd_superpotential, "superpotential and BPS numbers")
    graph_arg(sp, required=False)
    sp.add_argument("--gauge")
    sp.add_argument("--phase", required=True, help=f"preset ({', '.join(PHASE_PRESETS)}) or phase JSON file")
    sp.add_argument("--framing", help='"zero" or a JSON matrix such as "[[0,1],[1,0]]"')
    sp.add_argument("--signs", help="twist signs, e.g. 1,-1")
    sp.add_argument("--twist", type=int, choices=(1, -1), default=1, help="orientation of the framing twist")
    sp.add_argument("--order", type=int, default=DEFAULT_ORDER)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--out")
    sp = add("bps", cmd_bps, "multiple-cover inversion of K coefficients")
    sp.add_argument("--input", required=True, help='JSON with {"K": {"1,0": "1", ...}} or a report')
    sp.add_argument("--order", type=int)
    sp = add("blowup", cmd_blowup, "blow up a vertex")
    graph_arg(sp)
    sp.add_argument("--vertex", type=int, required=True)
    sp.add_argument("--out")
    sp = add("edgemove", cmd_edgemove, "Whitehead move on an edge")
    graph_arg(sp)
    sp.add_argument("--edge", type=int, required=True)
    sp.add_argument("--out")
    return p


DOMAIN_ERRORS = (GraphError, PhaseError, io.DocumentError, ValueError, ArithmeticError, AssertionError, RuntimeError, OSError)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"chromlag: error: {exc}", file=sys.stderr)
        return 2
    except DOMAIN_ERRORS as exc:
        print(f"chromlag: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

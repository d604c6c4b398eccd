"""Command-line interface.

Exit codes: 0 success, 1 a checked inequality or invariant failed,
2 usage error (bad flags, unknown family, unreadable input).
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys

import numpy as np

from . import constructions as C
from . import eigen, feasible, starop, structure
from . import graphcore as gc
from .errors import Graph6Error, InvalidArgument, NumericalFailure, PreconditionFailure, UnsupportedOrder
from .svg import region_svg, vectors_svg
from .verify import verify_order, verify_stream

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def num(x):
    """Round to 12 significant digits for stable output."""
    if x is None:
        return None
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    x = float(x)
    if not math.isfinite(x):
        return None if math.isnan(x) else ("inf" if x > 0 else "-inf")
    v = float(f"{x:.12g}")
    return 0.0 if v == 0 else v


def _clean(obj):
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (float, int, np.floating, np.integer, bool, np.bool_)) or obj is None:
        return num(obj)
    return obj


def emit(obj, out=None):
    out = out or sys.stdout
    json.dump(_clean(obj), out, indent=2, sort_keys=False)
    out.write("\n")


def write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for r in rows:
            w.writerow([f"{v:.12g}" if isinstance(v, float) else v for v in r])


# --- graph sources ----------------------------------------------------------

def _ints(parts, family):
    try:
        return [int(p) for p in parts if p != ""]
    except ValueError:
        raise UsageError(f"{family}: parameters must be integers") from None


def construct(text: str) -> gc.Graph:
    """Build a graph from ``family[:params]``; params are integers separated
    by ``:`` or ``,`` (for circulant the first one is the order)."""
    family, _, rest = text.partition(":")
    family = family.strip().lower()
    p = _ints(rest.replace(",", ":").split(":"), family) if rest else []

    def need(k):
        if len(p) != k:
            raise UsageError(f"{family} takes {k} parameter(s), got {len(p)}")

    try:
        if family in ("complete", "cycle", "path", "empty", "pivalous", "star"):
            need(1)
            f = {"complete": gc.complete, "cycle": gc.cycle, "path": gc.path,
                 "empty": gc.empty, "pivalous": C.pivalous, "star": gc.star}[family]
            return f(p[0])
        if family == "circulant":
            if len(p) < 2:
                raise UsageError("circulant takes an order and at least one residue")
            return gc.circulant(p[0], p[1:])
        if family == "hab":
            need(2)
            return C.h_ab(*p)
        if family == "c6mult":
            need(3)
            return C.c6_multiplication(C.C6MultParams(*p))
        if family == "cliques":
            need(2)
            return C.disjoint_cliques(*p)
        if family in ("g4", "g6"):
            need(0)
            return C.g4() if family == "g4" else C.g6()
    except InvalidArgument as exc:
        raise UsageError(f"{family}: {exc}") from None
    raise UsageError(f"unknown family {family!r}")


FAMILIES = "complete:n cycle:n path:n empty:n star:k circulant:n:s1,s2,.. pivalous:n hab:a:b c6mult:a:b:c cliques:k:m g4 g6"


def add_source(p):
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--graph6", help="graph in graph6 encoding")
    g.add_argument("--file", help="file with one graph6 line (the first graph is used)")
    g.add_argument("--construct", metavar="FAMILY:PARAMS", help=f"named family ({FAMILIES})")
    p.add_argument("--complement", action="store_true", help="use the complement of the graph")


def load_graph(args) -> gc.Graph:
    try:
        if args.graph6 is not None:
            g = gc.parse_graph6(args.graph6)
        elif args.file is not None:
            try:
                with open(args.file, "rb") as fh:
                    first = next(gc.read_graph6_lines(fh), None)
            except OSError as exc:
                raise UsageError(f"cannot read {args.file}: {exc.strerror}") from None
            if first is None:
                raise UsageError(f"{args.file} contains no graphs")
            g = first[1]
        else:
            g = construct(args.construct)
    except Graph6Error as exc:
        raise UsageError(f"graph6: {exc} (offset {exc.offset})") from None
    return gc.complement(g) if args.complement else g


def add_output(p, csv_ok=False, svg_ok=False):
    p.add_argument("--json", action="store_true", help="JSON output (default)")
    if csv_ok:
        p.add_argument("--csv", metavar="PATH", help="also write a CSV file")
    if svg_ok:
        p.add_argument("--svg", metavar="PATH", help="also write an SVG file")


# --- shared records ---------------------------------------------------------

def spectral_record(g: gc.Graph) -> dict:
    d = eigen.graph_decomposition(g)
    rec = {
        "order": g.n,
        "spectrum": [0.0 if abs(v) <= 1e-12 * max(1.0, d.norm) else v for v in d.values],
        "last_two_sum": float(d.values[-1] + d.values[-2]) if g.n >= 2 else None,
        "ratios": None,
    }
    if g.n >= 3:
        r = eigen.ratios(g)
        rec["ratios"] = {
            "lambda3_over_n": r.lambda3_over_n,
            "abs_last2_over_n": r.abs_last2_over_n,
            "last_two_sum_over_n": r.last_two_sum_over_n,
        }
    return rec


# --- subcommands ------------------------------------------------------------

def cmd_verify(args) -> int:
    inject = bool(args.inject_violation)
    try:
        if args.order is not None:
            if args.order < 1:
                raise UsageError("order must be positive")
            rep = verify_order(args.order, args.jobs, inject)
        else:
            try:
                with open(args.file, "rb") as fh:
                    rep = verify_stream(fh, args.jobs, inject)
            except OSError as exc:
                raise UsageError(f"cannot read {args.file}: {exc.strerror}") from None
    except Graph6Error as exc:
        raise UsageError(f"graph6: {exc}") from None
    emit(rep.as_dict())
    return EXIT_OK if rep.holds else EXIT_VIOLATION


def cmd_spectrum(args) -> int:
    g = load_graph(args)
    emit(spectral_record(g))
    return EXIT_OK


def cmd_construct(args) -> int:
    g = construct(args.family)
    if args.complement:
        g = gc.complement(g)
    emit(spectral_record(g))
    return EXIT_OK


def cmd_star(args) -> int:
    g = load_graph(args)
    if g.n < 3:
        raise UsageError("star needs at least 3 vertices")
    if args.k == 2:
        pair = starop.pair_of(g)
        h = starop.apply_star(g, pair)
        order = list(pair.order)
    else:
        if not 1 <= args.k <= g.n:
            raise UsageError(f"k must lie in 1..{g.n}")
        h = starop.apply_star_k(g, args.k)
        order = None
    before = eigen.last_two_sum(g)
    after = eigen.last_two_sum(h)
    rec = spectral_record(h)
    rec["detail"] = detail = {
        "k": args.k,
        "graph6": gc.write_graph6(h).decode(),
        "input_graph6": gc.write_graph6(g).decode(),
        "before": before,
        "after": after,
        "monotone": after <= before + 1e-9 if args.k == 2 else None,
        "fixpoint": h == g,
        "uniqueness": starop.uniqueness_class(g).value,
    }
    if order is not None:
        detail["angular_order"] = order
    emit(rec)
    return EXIT_OK if args.k != 2 or after <= before + 1e-9 else EXIT_VIOLATION


def cmd_fixpoint(args) -> int:
    g = load_graph(args)
    if g.n < 3:
        raise UsageError("fixpoint needs at least 3 vertices")
    if args.max_iter < 0:
        raise UsageError("--max-iter must be non-negative")
    tr = starop.fixpoint_iterate(g, args.max_iter)
    rec = spectral_record(tr.final)
    rec["detail"] = {
        "graph6": gc.write_graph6(tr.final).decode(),
        "terminal": tr.terminal.value,
        "cycle_length": tr.cycle_length,
        "steps": tr.steps,
        "trace": [{"graph6": gc.write_graph6(h).decode(), "last_two_sum": s} for h, s in tr.iterates],
        "monotone": tr.is_monotone(),
    }
    emit(rec)
    return EXIT_OK if tr.is_monotone() else EXIT_VIOLATION


def cmd_structure(args) -> int:
    g = load_graph(args)
    rec = spectral_record(g)
    rec["detail"] = d = {"graph6": gc.write_graph6(g).decode()}
    ok = True
    if g.n >= 3:
        pair = starop.pair_of(g)
        h = starop.apply_star(g, pair)
        run = structure.run_labelling(h, pair.order)
        d["star_graph6"] = gc.write_graph6(h).decode()
        d["run_labelling"] = bool(run)
        ok &= bool(run)
        d["quadrant_colors"] = len(set(structure.quadrant_coloring(pair.vectors)))
        if h.n <= structure.EXACT_MAX_ORDER:
            w = structure.clique_number(h)
            four = structure.is_k_colorable(h, 4)
            d["star_clique_number"] = w
            d["star_4_colorable"] = four
            ok &= w <= 3 and four
        d["obtuse_gap_3_coloring"] = structure.obtuse_gap_three_coloring(pair, h) is not None
    if g.n <= structure.EXACT_MAX_ORDER:
        d["clique_number"] = structure.clique_number(g)
        d["chromatic_number"] = structure.chromatic_number(g)
    d["chordal"] = structure.find_peo(g) is not None
    if g.n >= 4 and g.n % 2 == 0 and all(d == g.n // 2 for d in g.degrees) :
        pair = starop.pair_of(g)
        try:
            fmb = structure.canonical_rotation(g, pair)
        except PreconditionFailure as exc:
            d["fmb"] = {"error": str(exc)}
        else:
            x, y = structure.top_half_vectors(pair, fmb)
            d["fmb"] = {
                "front": list(fmb.front), "middle": list(fmb.middle), "back": list(fmb.back),
                "perm": list(fmb.perm),
                "degrees_monotone": fmb.degrees_monotone(),
                "spectrum_split": structure.spectrum_split_check(g, fmb.q),
                "complement_q_peo": structure.peo_check(gc.complement(fmb.q), range(fmb.size)),
                "x_type": structure.classify_type(x, fmb).tag.value,
                "y_type": structure.classify_type(y, fmb).tag.value,
            }
            ok &= d["fmb"]["spectrum_split"]
    emit(rec)
    return EXIT_OK if ok else EXIT_VIOLATION


def _params_arg(text):
    try:
        vals = [float(v) for v in text.split(",")]
    except ValueError:
        raise UsageError("--params expects X,Z,T") from None
    if len(vals) != 3:
        raise UsageError("--params expects X,Z,T")
    return vals


def _type_arg(text) -> structure.Type:
    t = {"type1": structure.Type.TYPE1, "1": structure.Type.TYPE1,
         "type2": structure.Type.TYPE2, "2": structure.Type.TYPE2}.get(text.lower())
    if t is None:
        raise UsageError("--type must be Type1 or Type2")
    return t


def cmd_feasible(args) -> int:
    if args.params:
        X, Z, T = _params_arg(args.params)
        try:
            ph = feasible.phase_classify(X, Z, T)
        except InvalidArgument as exc:
            raise UsageError(str(exc)) from None
        rec = {
            "order": None, "spectrum": None, "last_two_sum": None, "ratios": None,
            "phase": {"phase": ph.phase.value, "phi": ph.phi, "boundary": ph.boundary,
                      "thresholds": ph.thresholds.as_dict()},
        }
        if args.csv:
            t = _type_arg(args.type)
            a = np.linspace(-0.5, 2.0, 101)
            c = np.linspace(-1.5, 1.5, 121)
            mask = feasible.region_sample(X, Z, T, t, a, c)
            write_csv(args.csv, ["a", "c", "feasible"],
                      [(float(av), float(cv), int(mask[i, j])) for i, cv in enumerate(c) for j, av in enumerate(a)])
        emit(rec)
        return EXIT_OK
    if args.graph6 is None and args.file is None and args.construct is None:
        raise UsageError("give a graph source or --params X,Z,T")
    g = load_graph(args)
    try:
        an = feasible.analyze_fixpoint(g)
    except (PreconditionFailure, InvalidArgument) as exc:
        raise UsageError(f"feasibility analysis needs an n/2-regular fixpoint: {exc}") from None
    rec = spectral_record(g)
    flat = {}
    params = []
    phase = None
    for which, e in zip(("x", "y"), an.eigs):
        sl = e.slacks.applicable() if e.slacks is not None else {}
        sl.update(e.extra)
        for k, v in sl.items():
            flat[f"{which}.{k}"] = v
        p = e.params
        params.append({"vector": which, "type": e.type.value, "mu": e.mu, "nu": p.nu, "X": p.X,
                       "Y": p.Y, "Z": p.Z, "T": p.T, "a": p.a, "c": p.c})
        if e.type is structure.Type.TYPE1 and 0 < p.X and 0 < p.Z and p.X + p.Z <= 1:
            ph = feasible.phase_classify(p.X, p.Z, p.T)
            phase = {"phase": ph.phase.value, "phi": ph.phi, "boundary": ph.boundary,
                     "thresholds": ph.thresholds.as_dict()}
    nu1, nu2 = an.nu_pair
    flat["floor"] = feasible.floor_slack(nu1, nu2)
    if args.inject_violation:
        key = next(iter(flat))
        flat[key] = -abs(flat[key]) - 1.0
    worst = min(flat.values())
    rec["slacks"] = flat
    rec["phase"] = phase
    rec["detail"] = {
        "front": list(an.fmb.front), "middle": list(an.fmb.middle), "back": list(an.fmb.back),
        "eigenvectors": params, "nu1": nu1, "nu2": nu2, "min_slack": worst,
    }
    if args.csv:
        write_csv(args.csv, ["name", "slack"], [(k, float(v)) for k, v in flat.items()])
    emit(rec)
    return EXIT_OK if worst >= -1e-8 else EXIT_VIOLATION


def cmd_scan(args) -> int:
    try:
        if args.which == "IIa":
            r = feasible.scan_IIa(args.grid_step, keep_rows=bool(args.csv))
            rec = {"scan": "IIa", "minimum": r.minimum, "argmin": vars(r.argmin), "points": r.points}
            ok = r.minimum > 0
            rows = r.rows()
        else:
            r = feasible.scan_IIb(args.grid_step, keep_rows=bool(args.csv))
            rec = {
                "scan": "IIb",
                "lower": {"minimum": r.lower.minimum, "argmin": vars(r.lower.argmin), "points": r.lower.points},
                "upper": {"minimum": r.upper.minimum, "argmin": vars(r.upper.argmin), "points": r.upper.points},
                "zero_locus": list(r.zero_locus),
            }
            ok = (r.lower.minimum >= 0.001 - 1e-6 and r.upper.minimum >= -1e-9
                  and all(abs(t - 0.125) <= args.grid_step for t in r.zero_locus))
            rows = r.lower.rows() + r.upper.rows()
    except InvalidArgument as exc:
        raise UsageError(str(exc)) from None
    if args.inject_violation:
        ok = False
    if args.csv:
        write_csv(args.csv, ["T", "S", "value", "branch"], [(p.T, p.S, p.value, p.label) for p in rows])
    rec["holds"] = ok
    emit(rec)
    return EXIT_OK if ok else EXIT_VIOLATION


def _curves(X, Z, T, t):
    Y = 1 - X - Z
    c = np.linspace(-1.5, 1.5, 301)
    a = np.linspace(-0.5, 2.0, 301)
    kinds = ["mean_c", "mean_a"] if t is structure.Type.TYPE2 else list(feasible.BOUNDARY_KINDS)
    out = []
    for kind in kinds:
        h = feasible.boundary(kind, X, Y, Z, T)
        qs = {"mean_c": 0.0, "smoothing_c": 2 * T / Z - 2 * X, "mean_a": 0.0, "smoothing_a": 2 * T / X - 2 * Z}
        with np.errstate(divide="ignore", invalid="ignore"):
            if kind.endswith("_c"):
                av = np.array([h.a_on_plane(cv, Y, Z, qs[kind]) if abs(X * cv + h.p - X) > 1e-9 else np.nan for cv in c])
                out.append((kind, av, c))
            else:
                cv = np.array([h.a_on_plane(x, Y, X, qs[kind]) if abs(Z * x + h.p - Z) > 1e-9 else np.nan for x in a])
                out.append((kind, a, cv))
    return out


def cmd_plot(args) -> int:
    if args.kind == "vectors":
        if args.graph6 is None and args.file is None and args.construct is None and args.vectors is None:
            raise UsageError("vectors plot needs a graph source or --vectors")
        if args.vectors is not None:
            try:
                vals = [float(v) for v in args.vectors.replace(";", ",").split(",") if v.strip()]
            except ValueError:
                raise UsageError("--vectors expects x0,y0;x1,y1;...") from None
            if not vals or len(vals) % 2:
                raise UsageError("empty or odd-length vector list")
            v = np.array(vals).reshape(-1, 2)
        else:
            g = load_graph(args)
            if g.n < 2:
                raise UsageError("need at least two vertices")
            v = starop.pair_of(g).vectors
        doc = vectors_svg(v)
        meta = {"kind": "vectors", "points": len(v)}
    else:
        if not args.params:
            raise UsageError("region plot needs --params X,Z,T and --type")
        X, Z, T = _params_arg(args.params)
        t = _type_arg(args.type)
        a = np.linspace(-0.5, 2.0, 101)
        c = np.linspace(-1.5, 1.5, 121)
        mask = feasible.region_sample(X, Z, T, t, a, c)
        doc = region_svg(a, c, mask, _curves(X, Z, T, t),
                         title=f"{t.value} region X={X} Z={Z} T={T}")
        meta = {"kind": "region", "feasible_cells": int(mask.sum())}
    try:
        with open(args.svg, "w") as fh:
            fh.write(doc)
    except OSError as exc:
        print(f"error: cannot write {args.svg}: {exc.strerror}", file=sys.stderr)
        return EXIT_USAGE
    meta["path"] = args.svg
    emit(meta)
    return EXIT_OK


# --- parser -----------------------------------------------------------------

class _ArgParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    p = _ArgParser(prog="starspec", description="Spectral star operation toolkit")
    p.add_argument("--tol", type=float, help="eigen residual tolerance (overrides SPECTRAL_TOL)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_ArgParser)
    hidden = dict(action="store_true", help=argparse.SUPPRESS)

    s = sub.add_parser("verify", help="check lambda_{n-1}+lambda_n >= -2n/3 exhaustively")
    src = s.add_mutually_exclusive_group(required=True)
    src.add_argument("--order", type=int, help="all graphs of this order (at most 8)")
    src.add_argument("--file", help="graph6 stream, one graph per line")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--inject-violation", **hidden)
    add_output(s)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("spectrum", help="adjacency spectrum and ratios")
    add_source(s)
    add_output(s)
    s.set_defaults(func=cmd_spectrum)

    s = sub.add_parser("construct", help="build a named graph and print its spectrum")
    s.add_argument("family", metavar="FAMILY:PARAMS", help=FAMILIES)
    s.add_argument("--complement", action="store_true")
    add_output(s)
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("star", help="apply the star operation once")
    add_source(s)
    s.add_argument("--k", type=int, default=2, help="number of eigenvectors (default 2)")
    add_output(s)
    s.set_defaults(func=cmd_star)

    s = sub.add_parser("fixpoint", help="iterate the star operation")
    add_source(s)
    s.add_argument("--max-iter", type=int, default=50)
    add_output(s)
    s.set_defaults(func=cmd_fixpoint)

    s = sub.add_parser("structure", help="structural checks on the graph and its star image")
    add_source(s)
    add_output(s)
    s.set_defaults(func=cmd_structure)

    s = sub.add_parser("feasible", help="inequality slacks of an n/2-regular fixpoint, or phases")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--graph6")
    g.add_argument("--file")
    g.add_argument("--construct", metavar="FAMILY:PARAMS")
    s.add_argument("--complement", action="store_true")
    s.add_argument("--params", metavar="X,Z,T", help="classify the phase at these parameters")
    s.add_argument("--type", default="Type1", help="Type1 or Type2 (for --csv region masks)")
    s.add_argument("--inject-violation", **hidden)
    add_output(s, csv_ok=True)
    s.set_defaults(func=cmd_feasible)

    s = sub.add_parser("scan", help="grid scans of the cubic at the two intersection cases")
    s.add_argument("which", choices=["IIa", "IIb"])
    s.add_argument("--grid-step", type=float, default=1e-3)
    s.add_argument("--inject-violation", **hidden)
    add_output(s, csv_ok=True)
    s.set_defaults(func=cmd_scan)

    s = sub.add_parser("plot", help="SVG of plane vectors or of a feasible region")
    s.add_argument("kind", choices=["vectors", "region"])
    g = s.add_mutually_exclusive_group()
    g.add_argument("--graph6")
    g.add_argument("--file")
    g.add_argument("--construct", metavar="FAMILY:PARAMS")
    g.add_argument("--vectors", metavar="x0,y0;x1,y1;...")
    s.add_argument("--complement", action="store_true")
    s.add_argument("--params", metavar="X,Z,T")
    s.add_argument("--type", default="Type1")
    s.add_argument("--svg", metavar="PATH", required=True)
    s.set_defaults(func=cmd_plot)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    if args.tol is not None:
        if not args.tol > 0:
            print("starspec: error: --tol must be positive", file=sys.stderr)
            return EXIT_USAGE
        os.environ["SPECTRAL_TOL"] = repr(args.tol)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"starspec: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UnsupportedOrder as exc:
        print(f"starspec: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvalidArgument as exc:
        print(f"starspec: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalFailure as exc:
        # a residual check failed: the result cannot be trusted
        print(f"starspec: numerical failure: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())

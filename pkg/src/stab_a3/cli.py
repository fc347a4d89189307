"""Command line interface: ``stab-a3 <command> [options]``.

Exit status is 0 on success, 1 when a checked invariant or table comparison fails, and
2 on bad input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from . import tables
from .charts import CentralCharge, StabPoint
from .exccol import LABELS

EXIT_OK, EXIT_FALSIFIED, EXIT_INPUT = 0, 1, 2


class InputError(ValueError):
    pass


def parse_complex(text: str) -> complex:
    """'a+bi' with optional whitespace; 'i' and 'j' both work, as do '3', '-i', '1e-3-2.5i'."""
    s = "".join(text.split()).lower().replace("i", "j")
    try:
        z = complex(s)
    except ValueError:
        raise InputError(f"cannot parse complex number {text!r}") from None
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise InputError(f"charge values must be finite, got {text!r}")
    return z


def parse_charge(text: str) -> CentralCharge:
    parts = text.split(",")
    if len(parts) != 3:
        raise InputError(f"a charge needs three comma-separated values Z(S1),Z(S2),Z(S3), got {text!r}")
    return CentralCharge.of([parse_complex(p) for p in parts])


def parse_point(text: str) -> StabPoint:
    """'A:m1,m2,m3:phi1,phi2,phi3'."""
    try:
        label, m, phi = text.split(":")
        label = label.strip().upper()
        if label not in LABELS:
            raise ValueError
        point = StabPoint(label, tuple(float(x) for x in m.split(",")),
                          tuple(float(x) for x in phi.split(",")))
    except ValueError:
        raise InputError(f"expected CHART:m1,m2,m3:phi1,phi2,phi3, got {text!r}") from None
    if len(point.m) != 3 or len(point.phi) != 3 or min(point.m) <= 0:
        raise InputError(f"bad chart point {text!r}")
    return point


def parse_window(text: str):
    try:
        lo, hi = (float(x) for x in text.split(","))
    except ValueError:
        raise InputError(f"expected LO,HI, got {text!r}") from None
    if hi <= lo:
        raise InputError("window must have LO < HI")
    return lo, hi


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(str(exc)) from None


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _csv(header: Sequence[str], rows: List[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _point_json(p: StabPoint) -> dict:
    return {"chart": p.chart, "m": list(p.m), "phi": list(p.phi)}


def _charge_json(Z: CentralCharge) -> list:
    return [{"re": z.real, "im": z.imag} for z in Z]


def _report_diff(lines: List[str]) -> int:
    for line in lines:
        print(f"MISMATCH {line}", file=sys.stderr)
    print("tables agree" if not lines else f"{len(lines)} mismatches", file=sys.stderr)
    return EXIT_OK if not lines else EXIT_FALSIFIED


# -- commands -------------------------------------------------------------

def cmd_tables(args) -> int:
    which = args.which
    if which == "facets":
        from .atlas import facet_census
        cells = facet_census(samples=args.samples or 10, seed=args.seed)
        if args.diff:
            return _report_diff(tables.diff_facets(cells))
        doc = tables.cell_document(cells)
        if args.format == "csv":
            rows = [[d["chart"], d["facet"], " ".join(d["shared"]), " ".join(d["covers"]),
                     " ".join(d["seen"]), d["samples"]] for d in doc]
            _emit(args, _csv(["chart", "facet", "shared", "covers", "seen", "samples"], rows))
        else:
            _emit(args, _json(doc))
        return EXIT_OK
    if args.diff:
        lines = {"exc": tables.diff_exc, "alpha": tables.diff_alpha, "ineq": tables.diff_ineq}[which]()
        return _report_diff(lines)
    if which == "ineq":
        doc = tables.table_ineq()
        if args.format == "csv":
            _emit(args, _csv(["X", "phi1,phi2", "phi2,phi3", "phi1,phi3"],
                             [[lab, *doc[lab]] for lab in LABELS]))
        else:
            _emit(args, _json(doc))
        return EXIT_OK
    doc = tables.table_exc() if which == "exc" else tables.table_alpha()
    key = "k" if which == "exc" else "alpha"
    if args.format == "csv":
        rows = [[lab, *doc[lab]["objects"], doc[lab]["type"],
                 *("" if doc[lab][key][p] is None else doc[lab][key][p] for p in ("12", "23", "13"))]
                for lab in LABELS]
        _emit(args, _csv(["X", "E1", "E2", "E3", "type", f"{key}12", f"{key}23", f"{key}13"], rows))
    else:
        _emit(args, _json(doc))
    return EXIT_OK


def cmd_graph(args) -> int:
    if args.diff:
        return _report_diff(tables.diff_graph())
    doc = tables.graph_document()
    _emit(args, tables.graph_dot(doc) if args.format == "dot" else _json(doc))
    return EXIT_OK


def cmd_lift(args) -> int:
    from .atlas import surjectivity_lifts
    from .atlas.hyperplanes import ZeroCharge, hyperplane_id
    Z = parse_charge(args.charge)
    try:
        lifts = surjectivity_lifts(Z, args.tol)
    except ZeroCharge as exc:
        raise InputError(str(exc)) from None
    doc = {"charge": _charge_json(Z), "hyperplanes": sorted(hyperplane_id(Z, args.tol)),
           "lifts": [dict(_point_json(l.point), pvec=list(l.pvec)) for l in lifts]}
    if args.format == "csv":
        rows = [[d["chart"], *d["pvec"], *d["m"], *d["phi"]] for d in doc["lifts"]]
        _emit(args, _csv(["chart", "p1", "p2", "p3", "m1", "m2", "m3", "phi1", "phi2", "phi3"], rows))
    else:
        _emit(args, _json(doc))
    return EXIT_OK


def _load_path(args):
    from .atlas import load_path
    try:
        return load_path(_read(args.file))
    except (KeyError, TypeError, json.JSONDecodeError, ValueError) as exc:
        raise InputError(f"bad path file {args.file}: {exc}") from None


def _start(args, path) -> StabPoint:
    """--start, else a "start" entry of the path file, else the first surjectivity lift."""
    from .atlas import surjectivity_lift
    from .atlas.hyperplanes import ZeroCharge
    if args.start:
        return parse_point(args.start)
    doc = json.loads(_read(args.file)) if getattr(args, "file", None) else None
    if isinstance(doc, dict) and "start" in doc:
        st = doc["start"]
        try:
            return parse_point(f"{st['chart']}:{','.join(map(repr, st['m']))}:{','.join(map(repr, st['phi']))}")
        except (KeyError, TypeError):
            raise InputError("path file has a malformed start entry") from None
    try:
        return surjectivity_lift(path(0.0)).point
    except ZeroCharge as exc:
        raise InputError(str(exc)) from None


def cmd_path(args) -> int:
    from .atlas import lift_path, trace_to_csv
    from .atlas.paths import COMPLETE, HIT, verify_crossings
    from .engine import Stability, same_condition
    path = _load_path(args)
    start = _start(args, path)
    try:
        trace = lift_path(path, start, tol=args.tol)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.format == "csv":
        _emit(args, trace_to_csv(trace))
    elif args.format == "svg":
        from .plot import trace_svg
        _emit(args, trace_svg(trace))
    else:
        doc = trace.to_json()
        if trace.status == COMPLETE and path.is_closed(1e-9):
            doc["closed_lift"] = same_condition(Stability(start), Stability(trace.end))
        doc["crossings_verified"] = verify_crossings(trace)
        _emit(args, _json(doc))
    if not verify_crossings(trace):
        return EXIT_FALSIFIED
    return EXIT_OK if trace.status in (COMPLETE, HIT) else EXIT_FALSIFIED


def cmd_fiber(args) -> int:
    from .atlas import NonGenericCharge, fiber
    from .atlas.fibers import deck_orbits
    Z = parse_charge(args.charge)
    try:
        pts = fiber(Z, parse_window(args.window), generic=not args.non_generic)
    except NonGenericCharge as exc:
        raise InputError(f"{exc} (use --non-generic to enumerate anyway)") from None
    doc = {"charge": _charge_json(Z), "window": list(parse_window(args.window)),
           "size": len(pts), "points": [_point_json(p) for p in pts],
           "shift_orbits": deck_orbits(pts)}
    if args.format == "csv":
        _emit(args, _csv(["index", "chart", "m1", "m2", "m3", "phi1", "phi2", "phi3"],
                         [[i, p.chart, *p.m, *p.phi] for i, p in enumerate(pts)]))
    else:
        _emit(args, _json(doc))
    return EXIT_OK


def cmd_monodromy(args) -> int:
    from .atlas import Ambiguous, HitHyperplane, monodromy
    from .engine import Stability, distance, same_condition
    path = _load_path(args)
    if not path.is_closed(1e-9):
        raise InputError("monodromy needs a closed path (first and last points equal)")
    start = _start(args, path)
    try:
        end = monodromy(path, start, tol=args.tol)
    except HitHyperplane as exc:
        raise InputError(str(exc)) from None
    except Ambiguous as exc:
        print(f"lift failed: {exc}", file=sys.stderr)
        return EXIT_FALSIFIED
    s0, s1 = Stability(start), Stability(end)
    doc = {"start": _point_json(start), "end": _point_json(end),
           "closed": same_condition(s0, s1), "distance": distance(s0, s1)}
    _emit(args, _json(doc))
    return EXIT_OK


def cmd_plot(args) -> int:
    from .plot import charge_svg, trace_svg
    if args.charge:
        _emit(args, charge_svg(parse_charge(args.charge), title=args.title or ""))
    elif args.trace:
        from .atlas import LiftTrace
        try:
            trace = LiftTrace.from_json(_read(args.trace))
        except (KeyError, TypeError, json.JSONDecodeError) as exc:
            raise InputError(f"bad trace file {args.trace}: {exc}") from None
        _emit(args, trace_svg(trace))
    elif args.file:
        from .atlas import lift_path
        path = _load_path(args)
        _emit(args, trace_svg(lift_path(path, _start(args, path), tol=args.tol)))
    else:
        raise InputError("plot needs --charge, --trace or --file")
    return EXIT_OK


def cmd_check(args) -> int:
    from .checks import SUITES, Config, run_suite
    names = args.suite or list(SUITES)
    for n in names:
        if n not in SUITES:
            raise InputError(f"unknown suite {n!r}; choose from {', '.join(SUITES)}")
    cfg = Config(samples=args.samples or 100, seed=args.seed, tol=args.tol)
    results = [r for n in names for r in run_suite(n, cfg)]
    lines = [r.line() for r in results]
    if args.format == "json":
        _emit(args, _json([{"suite": r.suite, "check": r.name, "passed": r.passed,
                            "detail": r.detail} for r in results]))
    else:
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if all(r.passed for r in results) else EXIT_FALSIFIED


# -- parser ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-9, help="numerical tolerance")
    common.add_argument("--seed", type=int, default=0, help="RNG seed for sampled computations")
    common.add_argument("--samples", type=int, default=None, help="sample count for sampled checks")
    common.add_argument("--format", choices=["json", "csv", "svg", "dot"], default=None)
    common.add_argument("--out", help="write output to this file instead of stdout")

    p = argparse.ArgumentParser(prog="stab-a3", description="Stability conditions on D^b(A3).")
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("tables", parents=[common], help="reproduce the classification tables")
    t.add_argument("which", choices=["exc", "alpha", "ineq", "facets"])
    t.add_argument("--diff", action="store_true", help="compare with the bundled transcriptions")
    t.set_defaults(func=cmd_tables)

    g = sub.add_parser("graph", parents=[common], help="mutation graph as DOT or JSON")
    g.add_argument("--diff", action="store_true")
    g.set_defaults(func=cmd_graph)

    lf = sub.add_parser("lift", parents=[common], help="preimages of a central charge")
    lf.add_argument("--charge", required=True, help='Z(S1),Z(S2),Z(S3), e.g. "0,1,i"')
    lf.set_defaults(func=cmd_lift)

    for name, func, text in (("path", cmd_path, "lift a path of charges"),
                             ("monodromy", cmd_monodromy, "lift a closed loop of charges")):
        q = sub.add_parser(name, parents=[common], help=text)
        q.add_argument("--file", required=True, help="path JSON")
        q.add_argument("--start", help="start point CHART:m1,m2,m3:phi1,phi2,phi3")
        q.set_defaults(func=func)

    f = sub.add_parser("fiber", parents=[common], help="windowed fiber over a charge")
    f.add_argument("--charge", required=True)
    f.add_argument("--window", default="-2,4", help="phase window LO,HI")
    f.add_argument("--non-generic", action="store_true", help="allow charges on walls of parallelism")
    f.set_defaults(func=cmd_fiber)

    pl = sub.add_parser("plot", parents=[common], help="SVG of charge rays or a lift timeline")
    pl.add_argument("--charge")
    pl.add_argument("--trace", help="trace JSON written by 'path'")
    pl.add_argument("--file", help="path JSON; lifted and drawn as a timeline")
    pl.add_argument("--start")
    pl.add_argument("--title")
    pl.set_defaults(func=cmd_plot)

    c = sub.add_parser("check", parents=[common], help="run invariant suites")
    c.add_argument("--suite", action="append",
                   choices=["repcore", "exccol", "charts", "engine", "atlas"])
    c.set_defaults(func=cmd_check)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

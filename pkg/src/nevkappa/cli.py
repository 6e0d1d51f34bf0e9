"""Command-line front end.

    nevkappa classify SPEC
    nevkappa pick --points "re,im;re,im" SPEC
    nevkappa witness SPEC
    nevkappa verify [SPEC] --suite UPPER_BOUND
    nevkappa catalog list | catalog show NAME
    nevkappa trace SPEC --eta-range 1e-6:1e-1:20

SPEC is a path to a FunctionSpec JSON file, ``-`` for standard input, or
``catalog:NAME``.  Exit status is 0 on success, 1 on a domain failure
(no witness, failed trials, invalid data) and 2 on a usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import catalog, serialize
from .classify import FORM_1, FORM_2, Classification, classify, to_theorem_form
from .errors import NevKappaError
from .harness import GenConfig, SuiteId, run_suite
from .nevfun import KappaForm, NevanlinnaFunction, PhiFunction, PhiRep
from .pick import eigenvalues, inertia, pick_matrix
from .witness import ETA_DEPTH, delta_gap, witness_boundary, witness_interior


class UsageError(Exception):
    pass


# --------------------------------------------------------------------------
# spec loading


def _read_json(path):
    if path == "-":
        text, name = sys.stdin.read(), "<stdin>"
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise UsageError(f"cannot read {path}: {e.strerror}") from None
        name = path
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError(f"{name}:{e.lineno}:{e.colno}: malformed JSON: {e.msg}") from None


def load_spec(spec):
    """Resolve SPEC to a PhiRep, KappaForm, NevanlinnaFunction or CatalogEntry."""
    if spec.startswith("catalog:"):
        try:
            return catalog.get(spec.split(":", 1)[1])
        except KeyError as e:
            raise UsageError(e.args[0]) from None
    data = _read_json(spec)
    try:
        return serialize.function_from_dict(data)
    except (KeyError, TypeError) as e:
        raise UsageError(f"{spec}: invalid function spec: {e!r}") from None
    except ValueError as e:
        raise UsageError(f"{spec}: invalid function spec: {e}") from None


def handle_of(obj):
    if isinstance(obj, catalog.CatalogEntry):
        return obj.handle
    if isinstance(obj, PhiRep):
        return PhiFunction(obj)
    return obj


def rep_of(obj):
    """Phi-representation behind ``obj``, or None for formula-only entries."""
    if isinstance(obj, catalog.CatalogEntry):
        return obj.rep
    if isinstance(obj, PhiRep):
        return obj
    if isinstance(obj, KappaForm):
        return to_theorem_form(obj)
    if isinstance(obj, NevanlinnaFunction):
        raise UsageError("classification applies to phi = Phi/z; use kind 'phi_rep'")
    return None


def classification_of(obj):
    rep = rep_of(obj)
    if rep is not None:
        return classify(rep)
    # formula-only catalog entry: documented metadata
    op = "witness_boundary" if obj.theorem_form == FORM_1 else "witness_interior"
    return Classification(obj.kappa, obj.theorem_form, obj.case, obj.phi_zero_minus,
                          {"operation": op, "kappa": obj.kappa, "lambdas": [], "source": "catalog"})


def parse_points(items):
    pts = []
    for item in items:
        for chunk in item.replace(";", " ").split():
            try:
                re_, im = chunk.split(",")
                pts.append(complex(float(re_), float(im)))
            except ValueError:
                raise UsageError(f"bad point {chunk!r}; expected 're,im'") from None
    if not pts:
        raise UsageError("no points given")
    return pts


def parse_eta_range(text):
    parts = text.split(":")
    try:
        lo, hi = float(parts[0]), float(parts[1])
        n = int(parts[2]) if len(parts) > 2 else 20
    except (ValueError, IndexError):
        raise UsageError(f"bad --eta-range {text!r}; expected LO:HI[:N]") from None
    if not (0 < lo < hi and n >= 1 and len(parts) <= 3):
        raise UsageError("--eta-range needs 0 < LO < HI and N >= 1")
    return list(np.geomspace(hi, lo, n))


# --------------------------------------------------------------------------
# output


def _csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([serialize.dumps(v) if isinstance(v, (dict, list)) else _cell(v) for v in r])
    return buf.getvalue().rstrip("\n")


def _cell(v):
    if isinstance(v, float):
        return serialize._float(v).strip('"')
    return "" if v is None else str(v)


def _fmt(x):
    return "inf" if x == math.inf else f"{x:.10g}"


class Output:
    def __init__(self, fmt, stream):
        self.fmt = fmt
        self.stream = stream

    def emit(self, report, csv_table, text):
        if self.fmt == "json":
            out = serialize.dumps(report, indent=2)
        elif self.fmt == "csv":
            out = _csv(*csv_table)
        else:
            out = text
        self.stream.write(out + "\n")


# --------------------------------------------------------------------------
# commands


def cmd_classify(args, out):
    obj = load_spec(args.spec)
    c = classification_of(obj)
    d = serialize.classification_to_dict(c)
    text = (f"kappa = {c.kappa}\ntheorem form = {c.theorem_form}\ncase = {c.case_label}\n"
            f"Phi(0-) = {_fmt(c.phi_zero_minus)}\nwitness = {c.certificate['operation']}")
    table = (["kappa", "theorem_form", "case", "phi_zero_minus", "witness"],
             [[c.kappa, d["theorem_form"], c.case_label, c.phi_zero_minus,
               c.certificate["operation"]]])
    out.emit(d, table, text)
    return 0


def cmd_pick(args, out):
    h = handle_of(load_spec(args.spec))
    pts = parse_points(args.points)
    P = pick_matrix(h, pts)
    ev = eigenvalues(P)
    inr = inertia(P, args.tol)
    d = serialize.pick_to_dict(P, inr, ev)
    rows = [[m, n, P.entries[m, n].real, P.entries[m, n].imag]
            for m in range(P.size) for n in range(P.size)]
    lines = ["points: " + ", ".join(f"{z.real:g}{z.imag:+g}i" for z in P.points), "matrix:"]
    for row in P.entries:
        lines.append("  " + "  ".join(f"{v.real:+.6e}{v.imag:+.6e}i" for v in row))
    lines.append("eigenvalues: " + ", ".join(f"{v:.6e}" for v in ev))
    lines.append(f"inertia (n-, n0, n+) = {inr.as_tuple()}  tol = {inr.tolerance_used:.3e}")
    out.emit(d, (["row", "col", "re", "im"], rows), "\n".join(lines))
    return 0


def _run_witness(obj, args):
    c = classification_of(obj)
    h = handle_of(obj)
    depth = ETA_DEPTH if args.max_depth is None else args.max_depth
    if c.theorem_form == FORM_2:
        return c, witness_interior(h, c.kappa, args.tol, args.eta0, depth)
    return c, witness_boundary(h, c.kappa, args.tol, args.eta0, depth)


def cmd_witness(args, out):
    c, w = _run_witness(load_spec(args.spec), args)
    d = serialize.witness_to_dict(w)
    rows = [[i, z.real, z.imag, w.eta, w.mu, w.inertia.n_minus] for i, z in enumerate(w.points)]
    lines = [f"kappa = {c.kappa} ({w.kind} witness)", f"eta = {w.eta:.6e}"]
    if w.mu is not None:
        lines.append(f"mu = {w.mu:.6e}")
    lines += [f"  z = {z.real:.10g} {z.imag:+.10g}i" for z in w.points]
    lines.append(f"inertia (n-, n0, n+) = {w.inertia.as_tuple()}  min eigenvalue = {w.min_eigenvalue:.6e}")
    if w.rho_diagnostics:
        lines.append("rho = " + ", ".join(f"{r:.6e}" for r in w.rho_diagnostics))
    out.emit(d, (["index", "re", "im", "eta", "mu", "n_minus"], rows), "\n".join(lines))
    return 0


def _target(obj):
    if isinstance(obj, catalog.CatalogEntry):
        return obj
    c = classification_of(obj)
    return catalog.CatalogEntry("spec", "user function", handle_of(obj), rep_of(obj),
                                c.kappa, c.theorem_form, c.case_label, c.phi_zero_minus)


def cmd_verify(args, out):
    target = _target(load_spec(args.spec)) if args.spec else None
    names = args.suite or [s.value for s in SuiteId]
    try:
        suites = [SuiteId(s.upper()) for s in names]
    except ValueError:
        raise UsageError(f"unknown suite in {names}; choose from {[s.value for s in SuiteId]}") from None
    if target is not None and any(s not in (SuiteId.UPPER_BOUND, SuiteId.EXACTNESS) for s in suites):
        raise UsageError("a SPEC can only be verified with UPPER_BOUND and EXACTNESS")
    cfg = GenConfig(seed=args.seed, trials=args.trials, tol=args.tol)
    reports = [run_suite(cfg, s, target) for s in suites]
    d = {"seed": args.seed, "trials": args.trials, "suites": [r.to_dict() for r in reports]}
    rows = [[r.suite, r.trials, r.passed, r.failed, r.elapsed] for r in reports]
    text = "\n".join(f"{r.suite:<12} {r.passed}/{r.trials} passed  ({r.elapsed:.2f} s)"
                     + ("" if r.ok else f"  first failure: trial {r.failures[0]['trial']}")
                     for r in reports)
    out.emit(d, (["suite", "trials", "passed", "failed", "elapsed"], rows), text)
    return 0 if all(r.ok for r in reports) else 1


def cmd_catalog(args, out):
    if args.action == "list":
        entries = list(catalog.CATALOG.values())
    else:
        if not args.name:
            raise UsageError("catalog show needs a NAME")
        try:
            entries = [catalog.get(args.name)]
        except KeyError as e:
            raise UsageError(e.args[0]) from None
    data = []
    for e in entries:
        item = {"name": e.name, "kappa": e.kappa, "theorem_form": e.theorem_form[-1],
                "case": e.case, "phi_zero_minus": e.phi_zero_minus, "description": e.description}
        if args.action == "show":
            item["spec"] = serialize.function_to_dict(e.rep if e.rep is not None else e)
        data.append(item)
    rows = [[i["name"], i["kappa"], i["theorem_form"], i["case"], i["phi_zero_minus"],
             i["description"]] for i in data]
    text = "\n".join(f"{i['name']:<16} kappa={i['kappa']}  form {i['theorem_form']}  case {i['case']}"
                     f"  Phi(0-)={_fmt(i['phi_zero_minus'])}  {i['description']}" for i in data)
    report = {"entries": data} if args.action == "list" else data[0]
    out.emit(report, (["name", "kappa", "theorem_form", "case", "phi_zero_minus", "description"], rows),
             text)
    return 0


def cmd_trace(args, out):
    obj = load_spec(args.spec)
    h = handle_of(obj)
    lams = sorted((l for l, _ in h.negative_poles()), reverse=True)
    if not lams:
        raise UsageError("trace needs a function with negative poles")
    etas = parse_eta_range(args.eta_range) if args.eta_range else \
        [delta_gap(lams) * 2.0 ** -j for j in range(21)]
    rows = []
    for eta in etas:
        P = pick_matrix(h, [complex(l, eta) for l in lams])
        rows.append([float(eta)] + [float(v) for v in eigenvalues(P)])
    header = ["eta"] + [f"eig_{i + 1}" for i in range(len(lams))]
    d = {"lambdas": lams, "columns": header, "rows": rows}
    text = "\n".join(["  ".join(header)] + ["  ".join(f"{v:+.6e}" for v in r) for r in rows])
    out.emit(d, (header, rows), text)
    return 0


# --------------------------------------------------------------------------
# parser


def _common():
    p = argparse.ArgumentParser(add_help=False)
    S = argparse.SUPPRESS
    p.add_argument("--tol", type=float, default=S, help="inertia zero band (default 1e-8*max(1,||P||))")
    p.add_argument("--seed", type=int, default=S, help="harness seed (default 0)")
    p.add_argument("--trials", type=int, default=S, help="harness trials per suite (default 100)")
    p.add_argument("--eta0", type=float, default=S, help="override the first eta of the witness grid")
    p.add_argument("--max-depth", type=int, default=S, help="eta grid depth (default 60)")
    p.add_argument("--format", choices=("json", "csv", "text"), default=S, help="output format (default json)")
    return p


DEFAULTS = {"tol": None, "seed": 0, "trials": 100, "eta0": None, "max_depth": None, "format": "json"}


def build_parser():
    common = _common()
    parser = argparse.ArgumentParser(prog="nevkappa", parents=[common],
                                     description="Negative squares of N_kappa^+ functions.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    p = sub.add_parser("classify", parents=[common], help="kappa, form (1 or 2) and A/B/C case")
    p.add_argument("spec")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("pick", parents=[common], help="Pick matrix and inertia at given points")
    p.add_argument("--points", action="append", required=True, help='"re,im" pairs separated by ";"')
    p.add_argument("spec")
    p.set_defaults(func=cmd_pick)

    p = sub.add_parser("witness", parents=[common], help="point set attaining kappa negative squares")
    p.add_argument("spec")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("verify", parents=[common], help="run seeded harness suites")
    p.add_argument("spec", nargs="?")
    p.add_argument("--suite", action="append", help="suite name (repeatable; default all)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("catalog", parents=[common], help="list or show catalog functions")
    p.add_argument("action", choices=("list", "show"))
    p.add_argument("name", nargs="?")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("trace", parents=[common], help="Pick eigenvalues along z_n = lambda_n + i eta")
    p.add_argument("spec")
    p.add_argument("--eta-range", help="LO:HI[:N], log-spaced, descending")
    p.set_defaults(func=cmd_trace)
    return parser


def main(argv=None, stdout=None):
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    for k, v in DEFAULTS.items():
        if not hasattr(args, k):
            setattr(args, k, v)
    if args.tol is not None and not args.tol > 0:
        parser.print_usage(sys.stderr)
        print("nevkappa: error: --tol must be positive", file=sys.stderr)
        return 2
    if args.trials < 1 or (args.max_depth is not None and args.max_depth < 0):
        print("nevkappa: error: --trials must be >= 1 and --max-depth >= 0", file=sys.stderr)
        return 2
    try:
        return args.func(args, Output(args.format, stdout))
    except UsageError as e:
        print(f"nevkappa: error: {e}", file=sys.stderr)
        return 2
    except NevKappaError as e:
        print(f"nevkappa: {type(e).__name__}: {e}", file=sys.stderr)
        return 1

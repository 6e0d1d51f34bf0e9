"""JSON for function specs and reports.

Floats are written with 17 significant digits and dictionaries keep their
insertion order, so output is byte-stable.  Infinite values are written as
the string ``"inf"``.
"""
from __future__ import annotations

import json
import math

import numpy as np

from . import catalog
from .classify import Classification
from .measure import _parse_num, measure_from_dict, measure_to_dict
from .nevfun import KappaForm, NevanlinnaFunction, PhiFunction, PhiRep
from .pick import Inertia, PickMatrix
from .witness import WitnessResult


def _float(x):
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    s = format(x, ".17g")
    if "e" not in s and "." not in s:
        s += ".0"
    return s


def _encode(obj, indent, level):
    pad = "" if indent is None else "\n" + " " * (indent * (level + 1))
    end = "" if indent is None else "\n" + " " * (indent * level)
    colon = ":" if indent is None else ": "
    if obj is None or isinstance(obj, (bool, np.bool_)):
        return json.dumps(None if obj is None else bool(obj))
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [json.dumps(str(k)) + colon + _encode(v, indent, level + 1) for k, v in obj.items()]
        return "{" + pad + ("," + pad).join(items) + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        if len(obj) == 0:
            return "[]"
        items = [_encode(v, indent, level + 1) for v in obj]
        return "[" + pad + ("," + pad).join(items) + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, indent=None):
    """Serialize plain data with 17-digit floats and fixed key order."""
    return _encode(obj, indent, 0)


def loads(text):
    return json.loads(text)


def num(x):
    return float(x) if isinstance(x, str) else x


def _cplx(z):
    return {"re": float(z.real), "im": float(z.imag)}


def _from_cplx(d):
    return complex(num(d["re"]), num(d["im"]))


# --------------------------------------------------------------------------
# function specs


def function_to_dict(fun):
    if isinstance(fun, catalog.CatalogEntry):
        return {"kind": "catalog", "name": fun.name}
    if isinstance(fun, catalog.Psi):
        return {"kind": "catalog", "name": "psi"}
    if isinstance(fun, (PhiFunction, NevanlinnaFunction)):
        d = function_to_dict(fun.rep)
        if isinstance(fun, NevanlinnaFunction):
            d["kind"] = "nevanlinna"
        return d
    if isinstance(fun, PhiRep):
        return {
            "kind": "phi_rep",
            "b": fun.b,
            "a": fun.a,
            "neg_poles": [{"lambda": l, "sigma": s} for l, s in fun.neg_poles],
            "measure": measure_to_dict(fun.measure),
        }
    if isinstance(fun, KappaForm):
        d = {"kind": "kappa_" + fun.case, "s0": fun.s0}
        if fun.case != "A":
            d["s1"] = fun.s1
            d["s2"] = fun.s2
        d["poles"] = [{"alpha": a, "gamma": g} for a, g in fun.poles]
        d["nu_or_sigma"] = measure_to_dict(fun.nu_or_sigma)
        return d
    raise TypeError(f"cannot serialize function {type(fun).__name__}")


def function_from_dict(d):
    """Parse a FunctionSpec into a PhiRep, KappaForm or CatalogEntry."""
    if not isinstance(d, dict):
        raise ValueError("function spec must be a JSON object")
    kind = d.get("kind", "phi_rep")
    if kind == "catalog":
        return catalog.get(d["name"])
    if kind in ("phi_rep", "nevanlinna"):
        rep = PhiRep(
            num(d.get("b", 0.0)),
            num(d.get("a", 0.0)),
            tuple((num(p["lambda"]), num(p["sigma"])) for p in d.get("neg_poles", [])),
            measure_from_dict(d.get("measure")),
        )
        return NevanlinnaFunction(rep) if kind == "nevanlinna" else rep
    if kind in ("kappa_A", "kappa_B", "kappa_C"):
        return KappaForm(
            kind[-1],
            num(d.get("s0", 0.0)),
            None if d.get("s1") is None else num(d["s1"]),
            None if d.get("s2") is None else num(d["s2"]),
            tuple((num(p["alpha"]), num(p["gamma"])) for p in d.get("poles", [])),
            measure_from_dict(d.get("nu_or_sigma", d.get("measure"))),
        )
    raise ValueError(f"unknown function kind {kind!r}")


# --------------------------------------------------------------------------
# reports


def classification_to_dict(c):
    return {
        "kappa": c.kappa,
        "theorem_form": c.theorem_form[-1],
        "case": c.case_label,
        "phi_zero_minus": c.phi_zero_minus,
        "certificate": dict(c.certificate),
    }


def classification_from_dict(d):
    return Classification(int(d["kappa"]), "FORM_" + str(d["theorem_form"]), d["case"],
                          _parse_num(d["phi_zero_minus"]), dict(d.get("certificate", {})))


def inertia_to_dict(i):
    return {"n_minus": i.n_minus, "n_zero": i.n_zero, "n_plus": i.n_plus, "tol": i.tolerance_used}


def inertia_from_dict(d):
    return Inertia(int(d["n_minus"]), int(d["n_zero"]), int(d["n_plus"]), num(d["tol"]))


def pick_to_dict(P, inertia, eigenvalues):
    return {
        "points": [_cplx(z) for z in P.points],
        "entries": [[_cplx(v) for v in row] for row in P.entries],
        "eigenvalues": [float(v) for v in eigenvalues],
        "inertia": inertia_to_dict(inertia),
    }


def pick_from_dict(d):
    pts = tuple(_from_cplx(p) for p in d["points"])
    E = np.array([[_from_cplx(v) for v in row] for row in d["entries"]], dtype=complex)
    E = E.reshape(len(pts), len(pts))
    return PickMatrix(E, pts), inertia_from_dict(d["inertia"]), [num(v) for v in d["eigenvalues"]]


def _plain(v):
    if isinstance(v, dict):
        return {k: _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, (np.floating, np.integer, np.bool_)):
        return v.item()
    return v


def witness_to_dict(w):
    return {
        "points": [_cplx(z) for z in w.points],
        "eta": w.eta,
        "mu": w.mu,
        "inertia": inertia_to_dict(w.inertia),
        "rho": list(w.rho_diagnostics),
        "min_eigenvalue": w.min_eigenvalue,
        "kind": w.kind,
        "diagnostics": _plain(w.diagnostics),
    }


def witness_from_dict(d):
    return WitnessResult(
        tuple(_from_cplx(p) for p in d["points"]),
        num(d["eta"]),
        None if d.get("mu") is None else num(d["mu"]),
        inertia_from_dict(d["inertia"]),
        tuple(num(r) for r in d.get("rho", [])),
        num(d.get("min_eigenvalue", 0.0)),
        d.get("kind", "interior"),
        d.get("diagnostics", {}),
    )

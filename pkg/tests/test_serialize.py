import json
import math

import numpy as np
import pytest

from nevkappa import catalog, serialize
from nevkappa.classify import classify
from nevkappa.measure import Atom, DensityPiece, StieltjesMeasure
from nevkappa.nevfun import KappaForm, NevanlinnaFunction, PhiRep
from nevkappa.pick import eigenvalues, inertia, pick_matrix
from nevkappa.witness import witness_interior

REP = PhiRep(0.5, -1.25, ((-1.0, 2.0), (-3.0, 0.1)),
             StieltjesMeasure((Atom(0.0, 0.25),), (DensityPiece(1.0, math.inf, 2.0, 0.5, -0.5),)))


def test_dumps_float_format_and_order():
    s = serialize.dumps({"b": 0.1, "a": 1.0, "c": math.inf, "d": [1, None, True]})
    assert s == '{"b":0.10000000000000001,"a":1.0,"c":"inf","d":[1,null,true]}'
    assert json.loads(s)["b"] == 0.1


def test_dumps_numpy_scalars():
    assert serialize.dumps([np.float64(2.5), np.int64(3), np.bool_(False)]) == "[2.5,3,false]"


def test_dumps_is_stable():
    d = serialize.function_to_dict(REP)
    assert serialize.dumps(d, indent=2) == serialize.dumps(serialize.loads(serialize.dumps(d)), indent=2)


@pytest.mark.parametrize("fun", [
    REP,
    NevanlinnaFunction(REP),
    KappaForm("A", s0=1.0, poles=((-1.0, -0.5),), nu_or_sigma=StieltjesMeasure.atom(2.0, 1.0)),
    KappaForm("B", s1=0.5, s2=1.0),
    KappaForm("C", s1=-1.0, nu_or_sigma=StieltjesMeasure(pieces=(DensityPiece(0.0, 1.0, 1.0, -0.5),))),
])
def test_function_round_trip(fun):
    d = serialize.loads(serialize.dumps(serialize.function_to_dict(fun)))
    back = serialize.function_from_dict(d)
    assert back == fun
    assert type(back) is type(fun)


def test_catalog_spec():
    e = serialize.function_from_dict({"kind": "catalog", "name": "psi"})
    assert e is catalog.get("psi")
    assert serialize.function_to_dict(e) == {"kind": "catalog", "name": "psi"}


def test_string_numbers_accepted():
    d = {"kind": "phi_rep", "a": "1.5", "b": 0, "neg_poles": [], "measure": {
        "atoms": [], "pieces": [{"lo": 0, "hi": "inf", "scale": 1, "exp_lo": 0, "exp_inf": -0.5}]}}
    rep = serialize.function_from_dict(d)
    assert rep.a == 1.5 and math.isinf(rep.measure.pieces[0].hi)


def test_bad_spec():
    with pytest.raises(ValueError):
        serialize.function_from_dict({"kind": "mystery"})
    with pytest.raises(ValueError):
        serialize.function_from_dict([1, 2])


def test_classification_round_trip():
    c = classify(catalog.get("sqrt_divergent").rep)
    d = serialize.loads(serialize.dumps(serialize.classification_to_dict(c)))
    assert d["theorem_form"] == "1" and d["phi_zero_minus"] == "inf"
    assert serialize.classification_from_dict(d) == c


def test_pick_report_round_trip():
    P = pick_matrix(REP, [1j, -1 + 0.1j, 2 + 0.5j])
    inr, ev = inertia(P), eigenvalues(P)
    d = serialize.loads(serialize.dumps(serialize.pick_to_dict(P, inr, ev)))
    P2, inr2, ev2 = serialize.pick_from_dict(d)
    assert np.array_equal(P2.entries, P.entries) and P2.points == P.points
    assert inr2 == inr and ev2 == list(ev)


def test_witness_report_round_trip():
    w = witness_interior(catalog.get("two_pole").rep, 2)
    d = serialize.loads(serialize.dumps(serialize.witness_to_dict(w)))
    w2 = serialize.witness_from_dict(d)
    assert w2.points == w.points and w2.eta == w.eta and w2.inertia == w.inertia
    assert w2.rho_diagnostics == w.rho_diagnostics

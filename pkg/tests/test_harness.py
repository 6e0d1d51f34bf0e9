import math

import numpy as np
import pytest

from nevkappa import catalog
from nevkappa.classify import FORM_1, classify
from nevkappa.errors import PreconditionFailed
from nevkappa.harness import (
    GenConfig,
    SuiteId,
    eps_zero,
    gap_intervals,
    gen_kappa_form,
    gen_phi_rep,
    run_suite,
    run_trial,
    sample_points,
    trial_rng,
)
from nevkappa.measure import DensityPiece, StieltjesMeasure
from nevkappa.nevfun import PhiRep, eval_Phi, eval_Phi_prime
from nevkappa.pick import pick_matrix


def test_config_validation():
    with pytest.raises(ValueError):
        GenConfig(im_min=0.0)
    with pytest.raises(ValueError):
        GenConfig(trials=0)
    with pytest.raises(ValueError):
        GenConfig(pole_lo=-1.0, pole_hi=0.5)


def test_trial_rng_independent_of_order():
    a = trial_rng(7, 3).random(4)
    trial_rng(7, 2).random(100)
    assert np.array_equal(a, trial_rng(7, 3).random(4))
    assert not np.array_equal(a, trial_rng(7, 4).random(4))


def test_trial_replay():
    cfg = GenConfig(seed=11, trials=5)
    assert run_trial(cfg, SuiteId.UPPER_BOUND, 3) == run_trial(cfg, SuiteId.UPPER_BOUND, 3)


@pytest.mark.parametrize("target", ["A", "B", "C"])
def test_gen_phi_rep_targets(target):
    cfg = GenConfig()
    for i in range(10):
        rep = gen_phi_rep(trial_rng(0, i), cfg, target)
        assert classify(rep).case_label == target


def test_generated_poles_are_separated():
    cfg = GenConfig()
    for i in range(20):
        lams = [l for l, _ in gen_phi_rep(trial_rng(1, i), cfg).neg_poles]
        assert all(a - b >= cfg.min_pole_gap for a, b in zip(lams, lams[1:]))


@pytest.mark.parametrize("case", ["A", "B", "C"])
def test_gen_kappa_form_case(case):
    f = gen_kappa_form(trial_rng(2, 0), GenConfig(), case)
    assert f.case == case


def test_sample_points_in_box():
    cfg = GenConfig()
    h = catalog.get("two_pole").handle
    pts = sample_points(trial_rng(0, 0), cfg, 200, h)
    assert all(cfg.im_min <= z.imag <= cfg.im_max and abs(z.real) <= cfg.re_max for z in pts)
    assert all(h.singular_distance(z) >= 1e-3 for z in pts)


def test_gap_intervals():
    rep = PhiRep(a=1.0, neg_poles=((-1.0, 2.0),), measure=StieltjesMeasure(
        pieces=(DensityPiece(1.0, 2.0, 1.0, 0.0),)))
    gaps = gap_intervals(rep)
    assert (-math.inf, -1.0) in gaps and (-1.0, 0.0) in gaps
    assert (0.0, 1.0) in gaps and (2.0, math.inf) in gaps


def test_monotone_example_by_hand():
    rep = PhiRep(a=1.0, neg_poles=((-1.0, 2.0),))
    assert eval_Phi(rep, -3.0).real == pytest.approx(2.0)
    assert eval_Phi(rep, -2.0).real == pytest.approx(3.0)
    assert eval_Phi_prime(rep, -2.5).real > 0


def test_eps_zero():
    # Phi = 1 + 2/(-1-z) vanishes at z = 1, so on (-1, 0) it is negative: not applicable
    with pytest.raises(PreconditionFailed):
        eps_zero(PhiRep(a=1.0, neg_poles=((-1.0, 2.0),)))
    # Phi = 3 + 1/(-1-z) is zero at z = -2/3
    assert eps_zero(PhiRep(a=3.0, neg_poles=((-1.0, 1.0),))) == pytest.approx(2 / 3, rel=1e-13)
    assert eps_zero(PhiRep(a=1.0)) == 2.0


def test_upper_bound_spot_check_by_hand():
    cfg = GenConfig(seed=1, trials=100)
    rep = gen_phi_rep(trial_rng(1, 0), cfg, "A")
    pts = sample_points(trial_rng(1, 99), cfg, 4, rep)
    P = pick_matrix(rep, pts).entries
    tol = 1e-8 * max(1.0, np.abs(P).sum(axis=1).max())
    assert np.count_nonzero(np.linalg.eigvalsh(P) < -tol) <= classify(rep).kappa


@pytest.mark.parametrize("suite", list(SuiteId))
def test_suites_pass(suite):
    r = run_suite(GenConfig(seed=1, trials=30), suite)
    assert r.ok, r.failures[:1]
    assert r.passed == 30


def test_exactness_on_psi():
    r = run_suite(GenConfig(seed=0, trials=2), SuiteId.EXACTNESS, catalog.get("psi"))
    assert r.ok


def test_report_records_failures():
    # kappa declared too low: random point sets will exceed it
    e = catalog.get("two_pole")
    lying = catalog.CatalogEntry("liar", "", e.handle, e.rep, 0, e.theorem_form, e.case, e.phi_zero_minus)
    r = run_suite(GenConfig(seed=0, trials=20), SuiteId.UPPER_BOUND, lying)
    assert not r.ok
    f = r.failures[0]
    assert {"trial", "seed", "detail", "instance"} <= set(f)
    assert r.to_dict()["failed"] == r.failed


def test_regularize_suite_forms():
    cfg = GenConfig(seed=3, trials=5)
    for i in range(5):
        ok, detail, _ = run_trial(cfg, SuiteId.REGULARIZE, i)
        assert ok, detail
        assert detail["form_eps"] == "FORM_2"


def test_form1_generator():
    from nevkappa.harness import gen_form1_finite

    rep = gen_form1_finite(trial_rng(0, 0), GenConfig())
    c = classify(rep)
    assert c.theorem_form == FORM_1 and math.isfinite(c.phi_zero_minus)

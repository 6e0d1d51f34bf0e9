"""Acceptance criteria 1-10.

Each test prints exactly one ``[criterion N] PASS|FAIL`` line with the
tolerance it ran at and its wall time, then asserts.
"""
import math
import time

import numpy as np
import pytest
from scipy.stats import unitary_group

from nevkappa import catalog
from nevkappa.catalog import eval_counterexample_psi
from nevkappa.classify import FORM_1, classify
from nevkappa.harness import GenConfig, SuiteId, gen_phi_rep, run_suite, trial_rng
from nevkappa.nevfun import PhiRep
from nevkappa.pick import default_tol, inertia, inertia_ldl, negative_squares
from nevkappa.witness import WindowPlan, rho_sq, witness_boundary, witness_interior

SEED = 2026


@pytest.fixture
def verdict(capsys):
    def emit(n, ok, detail, elapsed):
        with capsys.disabled():
            print(f"\n[criterion {n}] {'PASS' if ok else 'FAIL'}  {detail}  ({elapsed:.2f} s)")
        return ok
    return emit


def test_criterion_01_upper_bound(verdict):
    t0 = time.perf_counter()
    bad = {}
    for name in catalog.names():
        e = catalog.get(name)
        r = run_suite(GenConfig(seed=SEED, trials=1000), SuiteId.UPPER_BOUND, e)
        if not r.ok:
            bad[name] = r.failed
    dt = time.perf_counter() - t0
    ok = not bad and dt < 120
    verdict(1, ok, f"6 catalog functions x 1000 point sets, n_minus <= kappa at tol 1e-8*max(1,||P||); "
                   f"violations {bad or 'none'}", dt)
    assert ok


@pytest.mark.parametrize("name", ["one_pole", "two_pole"])
def test_criterion_02_interior_exactness(verdict, name):
    e = catalog.get(name)
    t0 = time.perf_counter()
    w = witness_interior(e.rep, e.kappa)
    tol = w.inertia.tolerance_used
    lams = [z.real for z in w.points]
    further = [negative_squares(e.rep, [complex(l, w.eta * 2.0 ** -j) for l in lams]) for j in (1, 2)]
    dt = time.perf_counter() - t0
    ok = (w.inertia.n_minus == e.kappa and w.min_eigenvalue <= -10 * tol
          and further == [e.kappa, e.kappa] and dt < 5)
    verdict(2, ok, f"{name}: kappa {e.kappa}, n_minus {w.inertia.n_minus}, min eig {w.min_eigenvalue:.3e} "
                   f"<= -10 tol ({-10 * tol:.1e}), halvings {further}", dt)
    assert ok


@pytest.mark.parametrize("name, fun, kappa", [
    ("inv_z", catalog.get("inv_z").rep, 1),
    ("sqrt_divergent", catalog.get("sqrt_divergent").rep, 1),
    ("psi", catalog.get("psi").handle, 1),
    ("one pole, Phi(0-) = 0.5", PhiRep(a=1.0, neg_poles=((-1.0, 0.5),)), 2),
])
def test_criterion_03_boundary_exactness(verdict, name, fun, kappa):
    t0 = time.perf_counter()
    w = witness_boundary(fun, kappa)
    dt = time.perf_counter() - t0
    ok = w.inertia.n_minus == kappa and dt < 30
    verdict(3, ok, f"{name}: n_minus {w.inertia.n_minus} == {kappa} at eta {w.eta:.3e}, mu {w.mu:.3e}", dt)
    assert ok


def _psi_classification():
    """Classify psi from its values.  There are no negative poles, and
    Phi(-x) = -x psi(-x) grows like x^-1/2 as x -> 0+: Phi(0-) = inf without
    an atom at 0 (which would give x^-1), hence case C."""
    xs = [1e-4, 1e-6, 1e-8]
    Phi = [(-x * eval_counterexample_psi(-x)).real for x in xs]
    slope = math.log(Phi[2] / Phi[1]) / math.log(xs[2] / xs[1])
    if Phi[0] < Phi[1] < Phi[2] and abs(slope + 0.5) < 1e-2:
        return 1, FORM_1, "C", math.inf
    return None


def test_criterion_04_classification(verdict):
    t0 = time.perf_counter()
    mismatches = []
    for name in catalog.names():
        e = catalog.get(name)
        if e.rep is None:
            got = _psi_classification()
        else:
            c = classify(e.rep)
            got = (c.kappa, c.theorem_form, c.case_label, c.phi_zero_minus)
        want = (e.kappa, e.theorem_form, e.case, e.phi_zero_minus)
        same = got is not None and got[:3] == want[:3] and (
            got[3] == want[3] if math.isinf(want[3]) else abs(got[3] - want[3]) <= 1e-9)
        if not same:
            mismatches.append((name, got, want))
    dt = time.perf_counter() - t0
    ok = not mismatches
    verdict(4, ok, f"6 entries match (kappa, form, case); Phi(0-) to 1e-9; mismatches {mismatches or 'none'}", dt)
    assert ok


def test_criterion_05_monotonicity(verdict):
    t0 = time.perf_counter()
    r = run_suite(GenConfig(seed=SEED, trials=50), SuiteId.MONOTONE)
    dt = time.perf_counter() - t0
    verdict(5, r.ok, f"50 PhiReps, 20 ordered pairs per gap, phi' >= -1e-12: {r.passed}/50", dt)
    assert r.ok


def test_criterion_06_round_trip(verdict):
    t0 = time.perf_counter()
    # trials cycle A, B, C: 150 trials give 50 forms of each case, 100 points each
    r = run_suite(GenConfig(seed=SEED, trials=150, eval_points=100), SuiteId.ROUNDTRIP)
    dt = time.perf_counter() - t0
    verdict(6, r.ok, f"50 forms each of A/B/C x 100 points at 1e-9*(1+|phi|): {r.passed}/150", dt)
    assert r.ok


def test_criterion_07_regularization(verdict):
    t0 = time.perf_counter()
    r = run_suite(GenConfig(seed=SEED, trials=20), SuiteId.REGULARIZE)
    dt = time.perf_counter() - t0
    verdict(7, r.ok, f"20 FORM_1 reps, eps = eps0/2: Phi_eps(0-) <= 1e-9, same kappa, FORM_2: {r.passed}/20", dt)
    assert r.ok


def test_criterion_08_inertia_oracle(verdict):
    t0 = time.perf_counter()
    rng = np.random.default_rng(SEED)
    checked = disagree = wrong = 0
    for _ in range(500):
        n = int(rng.integers(1, 9))
        signs = rng.integers(-1, 2, n)
        mags = np.exp(rng.uniform(math.log(1e-6), math.log(10.0), n))
        d = signs * mags
        U = unitary_group.rvs(n, random_state=rng) if n > 1 else np.eye(1)
        A = U @ np.diag(d) @ U.conj().T
        A = (A + A.conj().T) / 2
        tol = default_tol(A)
        if np.any((d != 0) & (np.abs(d) <= 10 * tol)):
            continue  # spectral gap not above 10 tol: no exact-match claim
        checked += 1
        want = (int(np.sum(d < 0)), int(np.sum(d == 0)), int(np.sum(d > 0)))
        a, b = inertia(A, tol).as_tuple(), inertia_ldl(A, tol).as_tuple()
        disagree += a != b
        wrong += a != want
    dt = time.perf_counter() - t0
    ok = disagree == 0 and wrong == 0 and checked >= 400
    verdict(8, ok, f"{checked}/500 matrices with gap > 10 tol: eig vs LDL disagreements {disagree}, "
                   f"wrong signatures {wrong}", dt)
    assert ok


def test_criterion_09_rho_scaling(verdict):
    t0 = time.perf_counter()
    cfg = GenConfig(max_pieces=0, max_atoms=0)
    worst = worst_abs = 0.0
    reps = [catalog.get("two_pole").rep, PhiRep(neg_poles=((-2.0, 4.0),))]
    reps += [r for r in (gen_phi_rep(trial_rng(SEED, i), cfg, "A") for i in range(10)) if r.neg_poles]
    for rep in reps:
        lams = [l for l, _ in rep.neg_poles]
        plan = WindowPlan.from_lambdas(lams)
        for n, (lam, w) in enumerate(rep.neg_poles, 1):
            for j in range(10):
                eta = plan.delta * 2.0 ** -j
                mass = w / abs(lam)
                dev = abs(eta ** 2 * rho_sq(rep, n, eta, plan) - mass)
                worst, worst_abs = max(worst, dev / mass), max(worst_abs, dev)
    dt = time.perf_counter() - t0
    ok = worst <= 1e-12 and worst_abs <= 1e-12
    verdict(9, ok, f"{len(reps)} atomic reps x 10 eta values: eta^2 rho^2 vs w/|lambda| max rel dev "
                   f"{worst:.1e}, abs dev {worst_abs:.1e}, both <= 1e-12", dt)
    assert ok


def test_criterion_10_counterexample(verdict):
    t0 = time.perf_counter()
    at_minus_one = abs(eval_counterexample_psi(-1.0))
    negatives = []
    for j in range(1, 21):
        eta = 2.0 ** -j
        for l in range(1, 21):
            mu = math.sqrt(eta) * 2.0 ** -l
            z0 = complex(-math.sqrt(eta), mu)
            v = eval_counterexample_psi(z0).imag
            if v < -1e-10:
                negatives.append((z0, v))
    upper = run_suite(GenConfig(seed=SEED, trials=1000), SuiteId.UPPER_BOUND, catalog.get("psi"))
    dt = time.perf_counter() - t0
    ok = at_minus_one <= 1e-12 and bool(negatives) and upper.ok
    first = negatives[0] if negatives else None
    verdict(10, ok, f"|psi(-1)| = {at_minus_one:.1e} <= 1e-12; Im psi(z0) < -1e-10 at {len(negatives)} probes "
                    f"(first {first}); upper bound kappa=1 {upper.passed}/1000", dt)
    assert ok

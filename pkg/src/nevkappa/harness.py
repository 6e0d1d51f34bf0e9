"""Seeded random checks of the global claims.

Every trial draws from its own generator, spawned from the configured seed,
so trial ``i`` can be replayed alone and results do not depend on the order
trials run in.

Suites
------
UPPER_BOUND  random point sets never give more than kappa negative squares
EXACTNESS    the witness search attains kappa
MONOTONE     Phi increases on every gap of its singular set
ROUNDTRIP    canonical forms and Phi-representations evaluate identically
REGULARIZE   phi_eps has Phi_eps(0-) <= 0 and keeps kappa
"""
from __future__ import annotations

import enum
import math
import time
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .classify import FORM_1, FORM_2, classify, from_theorem_form, to_theorem_form
from .errors import NevKappaError, PreconditionFailed
from .measure import Atom, DensityPiece, StieltjesMeasure
from .nevfun import (
    KappaForm,
    NevanlinnaFunction,
    PhiFunction,
    PhiRep,
    as_handle,
    eval_Phi,
    eval_phi_prime,
    phi_limit_at_zero_minus,
    regularize_eps,
)
from .pick import inertia, pick_matrix
from .witness import witness_boundary, witness_interior

SINGULAR_GUARD = 1e-3


class SuiteId(enum.Enum):
    UPPER_BOUND = "UPPER_BOUND"
    EXACTNESS = "EXACTNESS"
    MONOTONE = "MONOTONE"
    ROUNDTRIP = "ROUNDTRIP"
    REGULARIZE = "REGULARIZE"


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    trials: int = 100
    max_points: int | None = None
    re_max: float = 10.0
    im_min: float = 1e-3
    im_max: float = 10.0
    max_atoms: int = 4
    max_pieces: int = 2
    exp_min: float = -0.9
    exp_max: float = 2.0
    scale_max: float = 10.0
    max_poles: int = 3
    pole_lo: float = -10.0
    pole_hi: float = -0.1
    weight_max: float = 10.0
    min_pole_gap: float = 0.05
    eval_points: int = 100
    tol: float | None = None

    def __post_init__(self):
        if not self.im_min > 0:
            raise ValueError("im_min must be positive")
        if not (self.im_max > self.im_min and self.re_max > 0):
            raise ValueError("point box is empty")
        caps = (self.trials, self.max_atoms + 1, self.max_pieces + 1, self.max_poles + 1,
                self.scale_max, self.weight_max)
        if any(not c > 0 for c in caps):
            raise ValueError("caps must be positive")
        if not self.pole_lo < self.pole_hi < 0:
            raise ValueError("pole range must lie in the negative axis")


@dataclass
class Report:
    suite: str
    seed: int
    trials: int
    passed: int = 0
    failures: list = field(default_factory=list)
    elapsed: float = 0.0
    summary: dict = field(default_factory=dict)

    @property
    def failed(self):
        return len(self.failures)

    @property
    def ok(self):
        return not self.failures

    def to_dict(self):
        return {
            "suite": self.suite,
            "seed": self.seed,
            "trials": self.trials,
            "passed": self.passed,
            "failed": self.failed,
            "elapsed": self.elapsed,
            "summary": self.summary,
            "failures": self.failures,
        }


# --------------------------------------------------------------------------
# generators


def trial_rng(seed, index):
    """Generator for trial ``index``; independent of every other trial."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def _uniform_pos(rng, hi):
    # (0, hi]
    return float(hi * (1.0 - rng.random()))


def gen_poles(rng, cfg, count):
    """``count`` poles in the configured range with gaps at least ``min_pole_gap``."""
    while True:
        lams = np.sort(rng.uniform(cfg.pole_lo, cfg.pole_hi, count))[::-1]
        if count < 2 or np.min(-np.diff(lams)) >= cfg.min_pole_gap:
            break
    return tuple((float(l), _uniform_pos(rng, cfg.weight_max)) for l in lams)


def _exponent(rng, cfg, lo=None, hi=None):
    lo = cfg.exp_min if lo is None else lo
    hi = cfg.exp_max if hi is None else hi
    return float(rng.uniform(lo, hi))


def gen_measure(rng, cfg, origin="regular", tail_max=0.9, atom_at_zero=False):
    """Random measure on ``[0, inf)``.

    ``origin`` controls the behaviour at 0: ``"regular"`` keeps
    ``int dsigma/t^2`` finite near 0 (exponent above 1), ``"finite"``
    keeps ``int dsigma/t`` finite, ``"divergent"`` forces it infinite and
    ``"any"`` leaves it free.  Unbounded pieces get tail exponent below
    ``tail_max``.
    """
    n_pieces = int(rng.integers(0, cfg.max_pieces + 1))
    if origin == "divergent":
        n_pieces = max(n_pieces, 1)
    cuts = np.sort(rng.uniform(0.0, 5.0, 2 * n_pieces))
    pieces = []
    prev = 0.0
    for i in range(n_pieces):
        lo = max(float(cuts[2 * i]), prev)
        hi = float(cuts[2 * i + 1])
        unbounded = i == n_pieces - 1 and rng.random() < 0.5
        e_lo = _exponent(rng, cfg)
        if i == 0 and origin != "any" and (origin == "divergent" or rng.random() < 0.5):
            lo = 0.0
            # Phi(-x) approaches Phi(0-) like x**e_lo; e_lo near 0 puts the
            # boundary witness out of double-precision reach on either side
            if origin == "divergent":
                e_lo = _exponent(rng, cfg, hi=-0.5)
            elif origin == "finite":
                e_lo = _exponent(rng, cfg, lo=0.5)
            else:
                e_lo = _exponent(rng, cfg, lo=1.05)
        hi = max(hi, lo + 0.05)
        prev = hi
        e_inf = None
        if unbounded:
            hi = math.inf
            e_inf = float(rng.uniform(max(cfg.exp_min, -2.5), tail_max))
        pieces.append(DensityPiece(lo, hi, _uniform_pos(rng, cfg.scale_max), e_lo, e_inf))
        if unbounded:
            break
    atoms = []
    taken = [(p.lo, p.hi) for p in pieces]
    for _ in range(int(rng.integers(0, cfg.max_atoms + 1))):
        t = float(rng.uniform(0.05, 10.0))
        if all(not (lo <= t < hi) for lo, hi in taken) and all(abs(t - a.t) > 1e-3 for a in atoms):
            atoms.append(Atom(t, _uniform_pos(rng, cfg.weight_max)))
    if atom_at_zero and not any(p.lo == 0 for p in pieces):
        atoms.append(Atom(0.0, _uniform_pos(rng, cfg.weight_max)))
    return StieltjesMeasure(tuple(atoms), tuple(pieces))


def _moment_shift(rep):
    """``Phi(0-) - a``: the pole and measure contributions to ``Phi(0-)``."""
    return phi_limit_at_zero_minus(PhiRep(rep.b, 0.0, rep.neg_poles, rep.measure))


def gen_phi_rep(rng, cfg, target=None):
    """Random PhiRep.

    ``target`` selects the type: ``"A"`` (``Phi(0-) < 0``), ``"B"``
    (finite ``Phi(0-) > 0``), ``"C"`` (divergent ``int dsigma/t``) or
    ``None`` for anything.
    """
    target = target or str(rng.choice(["A", "B", "C", "free"]))
    p = int(rng.integers(0, cfg.max_poles + 1))
    poles = gen_poles(rng, cfg, p)
    b = 0.0 if rng.random() < 0.5 else float(rng.uniform(0.0, 2.0))
    origin = {"A": "finite", "B": "finite", "C": "divergent"}.get(target, "any")
    measure = gen_measure(rng, cfg, origin=origin)
    rep = PhiRep(b, 0.0, poles, measure)
    if target in ("A", "B"):
        shift = _moment_shift(rep)
        gap = float(rng.uniform(0.1, 5.0))
        a = -shift - gap if target == "A" else -shift + gap
    else:
        a = float(rng.uniform(-5.0, 5.0))
    return PhiRep(b, a, poles, measure)


def gen_kappa_form(rng, cfg, case):
    p = int(rng.integers(0, cfg.max_poles + 1))
    poles = tuple((l, -s) for l, s in gen_poles(rng, cfg, p))
    s0 = 0.0 if rng.random() < 0.5 else float(rng.uniform(0.0, 2.0))
    if case == "A":
        m = gen_measure(rng, cfg, origin="any", tail_max=-0.05, atom_at_zero=rng.random() < 0.5)
        return KappaForm("A", s0=s0, poles=poles, nu_or_sigma=m)
    if case == "B":
        m = gen_measure(rng, cfg, origin="any", tail_max=-0.05)
        s2 = 0.0 if rng.random() < 0.5 else _uniform_pos(rng, 3.0)
        s1 = float(rng.uniform(-3.0, 3.0)) if s2 > 0 else _uniform_pos(rng, 3.0)
        return KappaForm("B", s0=s0, s1=s1, s2=s2, poles=poles, nu_or_sigma=m)
    m = gen_measure(rng, cfg, origin="divergent")
    s2 = 0.0 if rng.random() < 0.5 else _uniform_pos(rng, 3.0)
    return KappaForm("C", s0=s0, s1=float(rng.uniform(-3.0, 3.0)), s2=s2, poles=poles,
                     nu_or_sigma=m)


def sample_point(rng, cfg, handle=None):
    """Point of the configured box, log-uniform in height, off the singular set."""
    lo, hi = math.log(cfg.im_min), math.log(cfg.im_max)
    handle = None if handle is None else as_handle(handle)
    while True:
        z = complex(rng.uniform(-cfg.re_max, cfg.re_max), math.exp(rng.uniform(lo, hi)))
        if handle is None or handle.singular_distance(z) >= SINGULAR_GUARD:
            return z


def sample_points(rng, cfg, k, handle=None):
    pts = []
    while len(pts) < k:
        z = sample_point(rng, cfg, handle)
        if all(abs(z - w) >= SINGULAR_GUARD for w in pts):
            pts.append(z)
    return pts


# --------------------------------------------------------------------------
# trials


def _blob(**kw):
    from . import serialize

    out = {}
    for k, v in kw.items():
        if isinstance(v, (PhiRep, KappaForm)):
            out[k] = serialize.function_to_dict(v)
        elif isinstance(v, (list, tuple)) and v and isinstance(v[0], complex):
            out[k] = [{"re": z.real, "im": z.imag} for z in v]
        else:
            out[k] = v
    return out


def _upper_bound_trial(rng, cfg, target):
    if target is None:
        rep = gen_phi_rep(rng, cfg)
        handle, kappa = PhiFunction(rep), classify(rep).kappa
    else:
        handle, kappa, rep = target.handle, target.kappa, target.rep
    k = int(rng.integers(1, kappa + 5))
    if cfg.max_points:
        k = min(k, cfg.max_points)
    pts = sample_points(rng, cfg, k, handle)
    inr = inertia(pick_matrix(handle, pts), cfg.tol)
    ok = inr.n_minus <= kappa
    return ok, {"n_minus": inr.n_minus, "kappa": kappa}, _blob(rep=rep, points=pts)


def _witness(fun, cls_kappa, form, tol):
    if form == FORM_2:
        return witness_interior(fun, cls_kappa, tol)
    return witness_boundary(fun, cls_kappa, tol)


def _exactness_trial(rng, cfg, target):
    if target is None:
        rep = gen_phi_rep(rng, cfg)
        c = classify(rep)
        fun, kappa, form = rep, c.kappa, c.theorem_form
    else:
        fun, kappa, form, rep = target.handle, target.kappa, target.theorem_form, target.rep
    w = _witness(fun, kappa, form, cfg.tol)
    ok = w.inertia.n_minus == kappa
    return ok, {"n_minus": w.inertia.n_minus, "kappa": kappa, "eta": w.eta, "mu": w.mu}, _blob(rep=rep)


def gap_intervals(rep):
    """Open intervals of the real axis free of poles and support, with 0 excluded."""
    sing = sorted({l for l, _ in rep.neg_poles})
    sup = rep.measure.support()
    cuts = sing + [0.0]
    gaps = [(-math.inf, cuts[0])] + list(zip(cuts, cuts[1:]))
    # gaps between support components on the positive axis
    ends = []
    for lo, hi in sup:
        ends.append((lo, hi))
    for (lo1, hi1), (lo2, hi2) in zip(ends, ends[1:]):
        if hi1 < lo2:
            gaps.append((hi1, lo2))
    if ends and ends[0][0] > 0:
        gaps.append((0.0, ends[0][0]))
    if ends and math.isfinite(ends[-1][1]):
        gaps.append((ends[-1][1], math.inf))
    if not ends:
        gaps.append((0.0, math.inf))
    return [(lo, hi) for lo, hi in gaps if hi > lo]


def _samples_in(rng, lo, hi, n):
    if math.isinf(lo):
        lo = hi - 20.0
    if math.isinf(hi):
        hi = lo + 20.0
    m = 1e-3 * (hi - lo)
    return np.sort(rng.uniform(lo + m, hi - m, n))


def _monotone_trial(rng, cfg, target, pairs=20):
    while True:
        rep = gen_phi_rep(rng, cfg)
        if not rep.is_constant:
            break
    h = NevanlinnaFunction(rep)
    worst_d, bad = math.inf, []
    for lo, hi in gap_intervals(rep):
        xs = _samples_in(rng, lo, hi, 2 * pairs)
        vals = [eval_Phi(rep, x).real for x in xs]
        for i in range(pairs):
            x1, x2 = xs[2 * i], xs[2 * i + 1]
            if not vals[2 * i] < vals[2 * i + 1]:
                bad.append([float(x1), float(x2)])
        for x in xs:
            worst_d = min(worst_d, eval_phi_prime(h, float(x)))
    ok = not bad and worst_d >= -1e-12
    return ok, {"min_derivative": worst_d, "violations": bad[:5]}, _blob(rep=rep)


def _rel_err(a, b):
    return abs(a - b) / (1.0 + abs(a))


def _roundtrip_trial(rng, cfg, target, index=0):
    case = "ABC"[index % 3]
    form = gen_kappa_form(rng, cfg, case)
    rep = to_theorem_form(form)
    c = classify(rep)
    back = from_theorem_form(rep, c, check=False)
    f = PhiFunction(rep)
    worst = worst_back = 0.0
    for z in sample_points(rng, cfg, cfg.eval_points, form):
        v = form(z)
        worst = max(worst, _rel_err(v, f(z)))
        worst_back = max(worst_back, _rel_err(v, back(z)))
    ok = worst <= 1e-9 and worst_back <= 1e-9 and c.case_label == form.case and c.kappa == form.kappa
    detail = {"case": case, "classified": c.case_label, "kappa": form.kappa,
              "classified_kappa": c.kappa, "max_rel_err": worst, "max_rel_err_back": worst_back}
    return ok, detail, _blob(form=form)


def eps_zero(rep, cap=2.0):
    """Largest ``eps0 <= cap`` with ``Phi(-eps) > 0`` for all ``eps`` in ``(0, eps0)``.

    ``Phi`` increases on ``(lambda_1, 0)`` towards ``Phi(0-) > 0``, so this is
    its unique zero there, if any.
    """
    f = lambda x: eval_Phi(rep, x).real
    lam1 = max((l for l, _ in rep.neg_poles), default=-math.inf)
    if lam1 < -cap:
        left = -cap
        if f(left) > 0:
            return cap
    else:
        left = lam1 * (1 - 1e-9)
        if f(left) >= 0:
            return -left
    right = -1e-3
    while f(right) <= 0:
        right *= 1e-3
        if right > -1e-12:
            raise PreconditionFailed("Phi(-eps) is not positive near the origin")
    return -brentq(f, left, right, xtol=1e-15 * -right, rtol=4 * np.finfo(float).eps)


def gen_form1_finite(rng, cfg):
    return gen_phi_rep(rng, cfg, target="B")


def _regularize_trial(rng, cfg, target):
    rep = gen_form1_finite(rng, cfg)
    c = classify(rep)
    eps = 0.5 * eps_zero(rep)
    r = regularize_eps(rep, eps)
    phi0 = phi_limit_at_zero_minus(r)
    c2 = classify(r)
    ok = phi0 <= 1e-9 and c2.theorem_form == FORM_2 and c2.kappa == c.kappa and c.theorem_form == FORM_1
    return ok, {"eps": eps, "phi0_eps": phi0, "kappa": c.kappa, "kappa_eps": c2.kappa,
                "form_eps": c2.theorem_form}, _blob(rep=rep)


_TRIALS = {
    SuiteId.UPPER_BOUND: _upper_bound_trial,
    SuiteId.EXACTNESS: _exactness_trial,
    SuiteId.MONOTONE: _monotone_trial,
    SuiteId.REGULARIZE: _regularize_trial,
}


def run_trial(cfg, suite, index, target=None):
    """Run one trial; returns ``(ok, detail, instance)``."""
    suite = SuiteId(suite) if not isinstance(suite, SuiteId) else suite
    rng = trial_rng(cfg.seed, index)
    if suite is SuiteId.ROUNDTRIP:
        return _roundtrip_trial(rng, cfg, target, index)
    return _TRIALS[suite](rng, cfg, target)


def run_suite(cfg, suite, target=None):
    """Run ``cfg.trials`` trials of ``suite``.

    ``target`` (a catalog entry) fixes the function under test for the
    UPPER_BOUND and EXACTNESS suites instead of generating one per trial.
    Failures, including raised domain errors, are recorded in the report
    together with the instance that produced them.
    """
    suite = SuiteId(suite) if not isinstance(suite, SuiteId) else suite
    rep = Report(suite.value, cfg.seed, cfg.trials)
    t0 = time.perf_counter()
    for i in range(cfg.trials):
        try:
            ok, detail, instance = run_trial(cfg, suite, i, target)
        except NevKappaError as e:
            ok, detail, instance = False, {"error": type(e).__name__, "message": str(e)}, {}
        if ok:
            rep.passed += 1
        else:
            rep.failures.append({"trial": i, "seed": cfg.seed, "detail": detail, "instance": instance})
    rep.elapsed = time.perf_counter() - t0
    rep.summary = {"pass_rate": rep.passed / cfg.trials if cfg.trials else 1.0}
    return rep

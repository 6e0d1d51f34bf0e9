"""Point configurations on which a Pick matrix attains exactly kappa
negative squares.

Interior witnesses sit just above the negative poles,
``z_n = lambda_n + i eta``, where the window term of ``phi`` dominates like
``-rho_n(eta)^2``.  When ``Phi(0-) > 0`` one extra point
``z_0 = -sqrt(eta) + i mu`` close to the negative axis near the origin
supplies the last negative square.  Both searches scan geometric grids
and take the first grid point whose inertia is right.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels as K
from .errors import (
    EmptyWindow,
    InvalidWindows,
    NearSingularity,
    OriginSingularity,
    PoleOnSupport,
    PreconditionFailed,
    WitnessNotFound,
)
from .measure import StieltjesMeasure, integrate, restrict
from .nevfun import PhiRep, as_handle
from .pick import Inertia, check_points, default_tol, eigenvalues, form_value, inertia, pick_from_values

ETA_DEPTH = 60
MU_DEPTH = 40
MIN_DELTA = 1e-3
# Phi(0-) at or below this counts as nonpositive
ZERO_BAND = 1e-9


def delta_gap(lambdas):
    """``(1/3) * min(-lambda_1, min gap)`` for strictly decreasing negative ``lambdas``."""
    lams = [float(l) for l in lambdas]
    if not lams:
        raise InvalidWindows("no points given")
    if any(not l < 0 for l in lams):
        raise InvalidWindows("window centres must be negative")
    gaps = [a - b for a, b in zip(lams, lams[1:])]
    if any(not g > 0 for g in gaps):
        raise InvalidWindows("window centres must be strictly decreasing")
    return min([-lams[0]] + gaps) / 3.0


@dataclass(frozen=True)
class WindowPlan:
    lambdas: tuple
    delta: float

    @classmethod
    def from_lambdas(cls, lambdas):
        lams = tuple(float(l) for l in lambdas)
        return cls(lams, delta_gap(lams))

    @property
    def windows(self):
        return tuple((l - self.delta, l + self.delta) for l in self.lambdas)

    def window_of(self, t):
        """1-based index of the window containing ``t``, or 0 for the complement."""
        for n, (lo, hi) in enumerate(self.windows, 1):
            if lo < t < hi:
                return n
        return 0


@dataclass(frozen=True)
class WitnessResult:
    points: tuple
    eta: float
    mu: float | None
    inertia: Inertia
    rho_diagnostics: tuple = ()
    min_eigenvalue: float = 0.0
    kind: str = "interior"
    diagnostics: dict = field(default_factory=dict)


def _poles_and_measure(fun):
    if isinstance(fun, PhiRep):
        return fun.neg_poles, fun.measure
    h = as_handle(fun)
    rep = getattr(h, "rep", None)
    if rep is not None:
        return rep.neg_poles, rep.measure
    return tuple(h.negative_poles()), StieltjesMeasure()


def rho_sq(rep, n, eta, plan):
    """``int_{U_n} |t - (lambda_n + i eta)|^{-2} dsigma(t)/|t|``.

    For an atom ``(lambda_n, w)`` this is ``(w/|lambda_n|)/eta^2``.
    """
    poles, measure = _poles_and_measure(rep)
    if not 1 <= n <= len(plan.lambdas):
        raise IndexError(f"window index {n} outside 1..{len(plan.lambdas)}")
    lam = plan.lambdas[n - 1]
    lo, hi = lam - plan.delta, lam + plan.delta
    z = complex(lam, eta)
    total, mass = 0.0, False
    for l, s in poles:
        if lo < l < hi:
            mass = True
            total += (s / abs(l)) / abs(l - z) ** 2
    inner = restrict(measure, (lo, hi))
    if not inner.is_empty:
        mass = True
        total += integrate(inner, K.ABS_CAUCHY_SQ_OVER_T, z)
    if not mass:
        raise EmptyWindow(f"window {n} around {lam} carries no mass")
    return float(total)


def _select_lambdas(fun, count):
    poles, _ = _poles_and_measure(fun)
    lams = sorted((l for l, _ in poles), reverse=True)
    if len(lams) < count:
        raise PreconditionFailed(f"need {count} negative poles, found {len(lams)}")
    return lams[:count]


def _interior_diagnostics(fun, plan, eta, P):
    try:
        rho = [math.sqrt(rho_sq(fun, n, eta, plan)) for n in range(1, len(plan.lambdas) + 1)]
    except EmptyWindow:
        return (), {}
    k = len(rho)
    D = np.diag([1.0 / r for r in rho] + [1.0] * (P.size - k))
    S = D @ P.entries @ D
    inner = S[:k, :k]
    off = inner - np.diag(np.diag(inner))
    return tuple(rho), {
        "scaled_form_value": form_value(inner, np.ones(k)),
        "scaled_diagonal": [float(v) for v in np.diag(inner).real],
        "scaled_offdiag_max": float(np.abs(off).max()) if k > 1 else 0.0,
    }


def witness_interior(fun, kappa, tol=None, eta0=None, max_depth=ETA_DEPTH):
    """Scan ``eta = eta0 * 2**-j`` (``eta0`` defaults to delta) for a
    configuration ``z_n = lambda_n + i eta`` with ``n_minus = kappa``.

    Accepts the first ``eta`` whose smallest eigenvalue is also at most
    ``-10 tol``.

    Raises
    ------
    WitnessNotFound
        When the grid is exhausted, or delta is too small to scan safely.
    """
    h = as_handle(fun)
    kappa = int(kappa)
    if kappa == 0:
        return WitnessResult((), 0.0, None, Inertia(0, 0, 0, tol or 0.0))
    plan = WindowPlan.from_lambdas(_select_lambdas(fun, kappa))
    if plan.delta < MIN_DELTA:
        raise WitnessNotFound(f"delta = {plan.delta} is below {MIN_DELTA}")
    base = plan.delta if eta0 is None else float(eta0)
    for j in range(max_depth + 1):
        eta = base * 2.0 ** -j
        pts = [complex(l, eta) for l in plan.lambdas]
        P = pick_from_values(pts, _values(h, pts, eta))
        t = default_tol(P.entries) if tol is None else tol
        ev = eigenvalues(P)
        inr = inertia(P, t)
        if inr.n_minus == kappa and ev[0] <= -10 * t:
            rho, diag = _interior_diagnostics(fun, plan, eta, P)
            diag["grid_index"] = j
            diag["delta"] = plan.delta
            return WitnessResult(tuple(pts), eta, None, inr, rho, float(ev[0]), "interior", diag)
    raise WitnessNotFound(f"no eta in {max_depth + 1} grid steps gave {kappa} negative squares")


def _derivative_check(h, x, mu, value):
    """Compare ``Im phi(x + i mu)/mu`` with the analytic ``phi'(x)``."""
    try:
        d = h.derivative(complex(x, 0.0)).real
    except (PoleOnSupport, OriginSingularity, NearSingularity, ZeroDivisionError):
        return None
    fd = value.imag / mu
    return {"fd": fd, "analytic": d, "ok": abs(fd - d) <= abs(d) / 3}


def equilibrated_inertia(P):
    """Inertia of ``D P D`` with ``D = diag(|P_mm|^-1/2)``.

    The congruence leaves the inertia unchanged but brings every diagonal
    entry to +-1, so entries of very different size (window terms grow like
    1/eta^2, the boundary entry far more slowly) are resolved by one
    relative zero band.  Returns None when a diagonal entry vanishes.
    """
    d = np.abs(np.diag(P.entries).real)
    if not np.all(d > 0):
        return None
    D = 1.0 / np.sqrt(d)
    S = P.entries * np.outer(D, D)
    return inertia(S, default_tol(S))


def _values(h, pts, eta):
    try:
        return [h(z) for z in pts]
    except PoleOnSupport:
        raise WitnessNotFound(f"eta = {eta:.3e} reached the pole guard before a witness was found") from None


def witness_boundary(fun, kappa, tol=None, eta0=None, max_depth=ETA_DEPTH, mu_depth=MU_DEPTH):
    """Search for ``kappa - 1`` interior points plus ``z_0 = -sqrt(eta) + i mu``.

    ``eta`` runs over ``min(eps^2, delta^2) * 2**-j`` for ``j >= 1`` and,
    for each ``eta``, ``mu`` over ``sqrt(eta) * 2**-l``, ``l = 1..mu_depth``.
    Here ``eps`` is half the distance from 0 to the nearest negative
    singularity, capped at 1.  A candidate is accepted when either the
    plain inertia or the inertia of the diagonally equilibrated matrix
    (see ``equilibrated_inertia``; default tolerance only) equals kappa.

    Raises
    ------
    PreconditionFailed
        If ``Phi(0-) <= 0``.
    WitnessNotFound
        When both grids are exhausted.
    """
    h = as_handle(fun)
    kappa = int(kappa)
    phi0 = h.Phi_zero_minus()
    if not phi0 > ZERO_BAND:
        raise PreconditionFailed(f"Phi(0-) = {phi0} is not positive")
    if kappa < 1:
        raise PreconditionFailed("a boundary witness needs kappa >= 1")
    lams = _select_lambdas(fun, kappa - 1)
    plan = WindowPlan.from_lambdas(lams) if lams else None
    eps = h.regular_radius()
    if plan is not None and plan.delta < MIN_DELTA:
        raise WitnessNotFound(f"delta = {plan.delta} is below {MIN_DELTA}")
    base = min(eps, plan.delta if plan else eps) ** 2 if eta0 is None else float(eta0)
    for j in range(1, max_depth + 1):
        eta = base * 2.0 ** -j
        x = -math.sqrt(eta)
        inner = [complex(l, eta) for l in lams]
        inner_vals = _values(h, inner, eta)
        for l in range(1, mu_depth + 1):
            mu = math.sqrt(eta) * 2.0 ** -l
            z0 = complex(x, mu)
            pts = inner + [z0]
            check_points(pts)
            v0 = h(z0)
            P = pick_from_values(pts, inner_vals + [v0])
            t = default_tol(P.entries) if tol is None else tol
            inr = inertia(P, t)
            scaled = False
            if inr.n_minus != kappa and tol is None and len(pts) > 1:
                eq = equilibrated_inertia(P)
                if eq is not None and eq.n_minus == kappa:
                    inr, scaled = eq, True
            if inr.n_minus == kappa:
                ev = eigenvalues(P)
                rho, diag = (), {}
                if plan is not None:
                    rho, diag = _interior_diagnostics(fun, plan, eta, P)
                diag.update(grid_index=j, mu_index=l, eps=eps, equilibrated=scaled,
                            derivative_check=_derivative_check(h, x, mu, v0))
                if plan is not None:
                    diag["delta"] = plan.delta
                return WitnessResult(tuple(pts), eta, mu, inr, rho, float(ev[0]), "boundary", diag)
    raise WitnessNotFound(f"no (eta, mu) on the grid gave {kappa} negative squares")

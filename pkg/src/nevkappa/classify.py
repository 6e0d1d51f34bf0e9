"""Decide kappa and the canonical presentation from representation data.

With ``p`` negative poles, ``phi = Phi/z`` has ``kappa = p`` when
``Phi(0-) <= 0`` and ``kappa = p + 1`` otherwise.  In the second case the
presentation is B when ``int_0^1 dsigma/t`` converges away from an atom at
the origin and C when it diverges.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import kernels as K
from .errors import InternalInconsistency, NonIntegrableTail
from .measure import Integrability, TestId, integrability, integrate
from .nevfun import KappaForm, PhiRep, PhiFunction, phi_limit_at_zero_minus
from .witness import ZERO_BAND

FORM_1 = "FORM_1"
FORM_2 = "FORM_2"

ROUNDTRIP_TOL = 1e-9
_PROBES = (1j, 1 + 2j, -0.5 + 0.3j, -4 + 0.01j, 7 + 0.5j)


@dataclass(frozen=True)
class Classification:
    kappa: int
    theorem_form: str
    case_label: str
    phi_zero_minus: float
    certificate: dict = field(default_factory=dict, compare=False)


def _zero_scale(rep):
    s = abs(rep.a) + sum(abs(sg / l) for l, sg in rep.neg_poles)
    if not rep.measure.is_empty:
        s += abs(integrate(rep.measure, K.ZERO_MOMENT))
    return max(1.0, s)


def _is_nonpositive(rep, phi0):
    # Phi(0-) sums terms of both signs; values inside the rounding band count as 0
    return phi0 != math.inf and phi0 <= ZERO_BAND * _zero_scale(rep)


def classify(rep):
    """Return kappa, the form (FORM_1 or FORM_2), the A/B/C label and ``Phi(0-)``."""
    p = len(rep.neg_poles)
    phi0 = phi_limit_at_zero_minus(rep)
    lambdas = [l for l, _ in rep.neg_poles]
    if _is_nonpositive(rep, phi0):
        kappa, form, case = p, FORM_2, "A"
        op = "witness_interior" if kappa else "none"
    else:
        kappa, form = p + 1, FORM_1
        rest = rep.measure.without_atom_at(0.0)
        finite = integrability(rest, TestId.INT_DSIGMA_OVER_T_NEAR_0) is Integrability.FINITE
        case = "B" if finite else "C"
        op = "witness_boundary"
    cert = {"operation": op, "kappa": kappa, "lambdas": lambdas}
    return Classification(kappa, form, case, phi0, cert)


def _check_roundtrip(form, rep):
    f = PhiFunction(rep)
    for z in _PROBES:
        a, b = form(z), f(z)
        if abs(a - b) > ROUNDTRIP_TOL * (1 + abs(a)):
            raise InternalInconsistency(f"conversion mismatch at z={z}: {a} vs {b}")


def from_theorem_form(rep, cls=None, check=True):
    """Canonical (A)/(B)/(C) presentation of ``phi = Phi/z``.

    The moment constants ``a + sum sigma_n/lambda_n + int dsigma/(t+t^3)``
    collect into the ``1/z`` coefficient: an atom of ``nu`` at the origin in
    case A, ``s1`` in case B.
    """
    cls = classify(rep) if cls is None else cls
    poles = tuple((l, s / l) for l, s in rep.neg_poles)
    w0 = rep.measure.atom_weight(0.0)
    rest = rep.measure.without_atom_at(0.0)
    if cls.case_label == "A":
        nu = rest.reweighted(0.0, -1.0)
        phi0 = cls.phi_zero_minus
        if phi0 < 0:
            nu = nu.with_atom(0.0, -phi0)
        form = KappaForm("A", s0=rep.b, poles=poles, nu_or_sigma=nu)
    elif cls.case_label == "B":
        s1 = rep.a + sum(s / l for l, s in rep.neg_poles)
        if not rest.is_empty:
            s1 += integrate(rest, K.ZERO_MOMENT)
        form = KappaForm("B", s0=rep.b, s1=s1, s2=w0, poles=poles,
                         nu_or_sigma=rest.reweighted(0.0, -1.0))
    else:
        s1 = rep.a + sum(s / l for l, s in rep.neg_poles)
        form = KappaForm("C", s0=rep.b, s1=s1, s2=w0, poles=poles, nu_or_sigma=rest)
    if check:
        _check_roundtrip(form, rep)
    return form


def to_theorem_form(form):
    """Representation of ``Phi(z) = z phi(z)`` for a canonical form.

    Uses ``z/(alpha - z) = alpha/(alpha - z) - 1`` on the poles and
    ``z/(t - z) = t/(t - z) - 1`` under the integral, so that
    ``sigma = t dnu`` and ``a = -sum gamma_j - int dnu/(1 + t^2)`` (plus
    ``s1`` in cases B and C); ``s2`` becomes an atom of ``sigma`` at 0.
    """
    poles = tuple((al, ga * al) for al, ga in form.poles)
    a = -sum(ga for _, ga in form.poles)
    m = form.nu_or_sigma
    if form.case == "C":
        sigma = m
    else:
        if integrability(m, TestId.INT_DNU_OVER_1PT) is Integrability.INFINITE:
            raise NonIntegrableTail("int dnu/(1+t) diverges")
        sigma = m.reweighted(0.0, 1.0)
        if not m.is_empty:
            a -= integrate(m, K.INV_QUAD)
    if form.case != "A":
        a += form.s1
        if form.s2 > 0:
            sigma = sigma.with_atom(0.0, form.s2)
    return PhiRep(form.s0, a, poles, sigma)

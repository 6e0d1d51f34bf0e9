"""Fixed reference functions with known classification.

``psi`` is the cotangent example

    psi(z) = (1/z) * ((1/sqrt z) cot(1/sqrt z) - sqrt z cot sqrt z),

a member of N_1^+ whose ``z psi(z)`` has a divergent zero moment at the
origin.  The other entries are small rational controls.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import NearSingularity, OriginSingularity
from .measure import DensityPiece, StieltjesMeasure
from .nevfun import FunctionHandle, PhiFunction, PhiRep

COT_GUARD = 1e-10


def _cot(w):
    # exponential form keeps large |Im w| from overflowing sin/cos
    if w.imag == 0:
        x = w.real
        return complex(math.cos(x) / math.sin(x), 0.0)
    if w.imag > 0:
        q = cmath.exp(2j * w)
        return 1j * (q + 1) / (q - 1)
    q = cmath.exp(-2j * w)
    return 1j * (1 + q) / (1 - q)


def _check_cot_pole(w):
    k = round(w.real / math.pi)
    if k != 0 and abs(w - k * math.pi) < COT_GUARD:
        raise NearSingularity(f"argument {w} is within {COT_GUARD} of a cotangent pole")


def _parts(z):
    if z == 0:
        raise OriginSingularity("psi is singular at 0")
    w = cmath.sqrt(z)
    u = 1.0 / w
    _check_cot_pole(w)
    _check_cot_pole(u)
    return w, u, _cot(w), _cot(u)


def _psi_upper(z):
    w, u, cw, cu = _parts(z)
    return (u * cu - w * cw) / z


def eval_counterexample_psi(z):
    """Evaluate ``psi`` with the principal square root.

    Each cotangent term is even in ``sqrt z``, so the branch cut of the
    root is invisible; values below the axis come from conjugation.
    """
    z = complex(z)
    if z.imag < 0:
        return _psi_upper(z.conjugate()).conjugate()
    # keep a signed zero so that sqrt of a negative real lands on +i
    return _psi_upper(complex(z.real, 0.0) if z.imag == 0 else z)


def eval_counterexample_psi_prime(z):
    z = complex(z)
    if z.imag < 0:
        return eval_counterexample_psi_prime(z.conjugate()).conjugate()
    if z.imag == 0:
        z = complex(z.real, 0.0)
    w, u, cw, cu = _parts(z)
    F = u * cu - w * cw
    # d(w cot w)/dw = cot w - w csc^2 w, with dw/dz = 1/(2w) and du/dz = -u^3/2
    dF = (cu - u * (1 + cu * cu)) * (-0.5 * u ** 3) - (cw - w * (1 + cw * cw)) / (2 * w)
    return dF / z - F / (z * z)


class Psi(FunctionHandle):
    """Handle for the cotangent example."""

    kind = "catalog"
    name = "psi"

    def __repr__(self):
        return "Psi()"

    def __eq__(self, other):
        return isinstance(other, Psi)

    def __hash__(self):
        return hash("psi")

    def _eval(self, z):
        return eval_counterexample_psi(z)

    def _deriv(self, z):
        return eval_counterexample_psi_prime(z)

    def singular_distance(self, z):
        # poles at 1/(k pi)^2 and (k pi)^2 accumulate at 0; use [0, inf) as a cover
        z = complex(z)
        return abs(z) if z.real <= 0 else abs(z.imag)

    def Phi_zero_minus(self):
        return math.inf


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    description: str
    handle: FunctionHandle
    rep: PhiRep | None
    kappa: int
    theorem_form: str
    case: str
    phi_zero_minus: float


def _entry(name, description, rep, kappa, form, case, phi0, handle=None):
    return CatalogEntry(name, description, handle or PhiFunction(rep), rep, kappa, form, case, phi0)


CATALOG = {
    e.name: e
    for e in (
        _entry("psi", "(1/z)((1/sqrt z)cot(1/sqrt z) - sqrt z cot sqrt z)", None,
               1, "FORM_1", "C", math.inf, handle=Psi()),
        _entry("one_pole", "phi = (1 + 2/(-1-z))/z", PhiRep(a=1.0, neg_poles=((-1.0, 2.0),)),
               1, "FORM_2", "A", -1.0),
        _entry("two_pole", "phi = (1/(-1-z) + 1/(-3-z))/z",
               PhiRep(a=0.0, neg_poles=((-1.0, 1.0), (-3.0, 1.0))),
               2, "FORM_2", "A", -4.0 / 3.0),
        _entry("inv_z", "phi = 1/z", PhiRep(a=1.0), 1, "FORM_1", "B", 1.0),
        _entry("sqrt_divergent", "sigma with density t^(-1/2) on (0,1)",
               PhiRep(measure=StieltjesMeasure(pieces=(DensityPiece(0.0, 1.0, 1.0, -0.5),))),
               1, "FORM_1", "C", math.inf),
        _entry("stieltjes_atom", "phi = 1/(1-z)",
               PhiRep(a=-0.5, measure=StieltjesMeasure.atom(1.0, 1.0)),
               0, "FORM_2", "A", 0.0),
    )
}


def names():
    return list(CATALOG)


def get(name):
    try:
        return CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown catalog entry {name!r}; known: {', '.join(CATALOG)}") from None

"""Nonnegative Stieltjes measures built from atoms and power-law pieces.

A measure is a finite list of atoms ``w * delta_t`` plus a finite list of
absolutely continuous pieces on ``[lo, hi)``.  A piece has density::

    scale * (t - lo)**exp_lo * (1 + t - lo)**g * prod_j (t + c_j)**k_j

where the product runs over ``factors`` (each positive on the closed piece)
and, for unbounded pieces, ``g`` is chosen so that the density behaves like
``t**exp_inf`` at infinity (``g = 0`` for bounded pieces).  Because the
local and tail exponents are explicit, every integrability question reduces
to comparing exponents.

Integrals over ``[a, b)`` follow the left-closed, right-open convention: an
atom at ``a`` is included, an atom at ``b`` is not.
"""
from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from . import kernels as _k
from .errors import DivergentIntegral, PoleOnSupport, QuadratureFailure
from .kernels import Kernel

DEFAULT_TOL = 1e-10
SUPPORT_GUARD = 1e-13
# subintervals per QUADPACK call; a piece uses at most a handful of calls
QUAD_LIMIT = 5000


@dataclass(frozen=True)
class Atom:
    t: float
    w: float

    def __post_init__(self):
        object.__setattr__(self, "t", float(self.t))
        object.__setattr__(self, "w", float(self.w))
        if not (math.isfinite(self.t) and math.isfinite(self.w)):
            raise ValueError(f"atom must be finite, got {self}")
        if self.w <= 0:
            raise ValueError(f"atom weight must be positive, got {self.w}")


@dataclass(frozen=True)
class DensityPiece:
    lo: float
    hi: float
    scale: float
    exp_lo: float
    exp_inf: float | None = None
    factors: tuple = ()

    def __post_init__(self):
        for name in ("lo", "hi", "scale", "exp_lo"):
            object.__setattr__(self, name, float(getattr(self, name)))
        facs = tuple((float(c), float(k)) for c, k in self.factors if k != 0)
        object.__setattr__(self, "factors", facs)
        if not math.isfinite(self.lo) or not self.lo < self.hi:
            raise ValueError(f"need finite lo < hi, got [{self.lo}, {self.hi})")
        if not (self.scale > 0 and math.isfinite(self.scale)):
            raise ValueError("scale must be positive")
        if not self.exp_lo > -1:
            raise ValueError("exp_lo must exceed -1 (finite mass near lo)")
        if self.bounded:
            object.__setattr__(self, "exp_inf", None)
        else:
            if self.exp_inf is None:
                raise ValueError("unbounded piece needs exp_inf")
            object.__setattr__(self, "exp_inf", float(self.exp_inf))
            if not self.exp_inf < 1:
                raise ValueError("exp_inf must be < 1 so that int dsigma/(1+t^2) is finite")
        for c, _ in facs:
            if not self.lo + c > 0:
                raise ValueError(f"factor (t + {c}) must be positive on the piece")

    @property
    def bounded(self):
        return math.isfinite(self.hi)

    @property
    def tail_power(self):
        """Exponent of ``(1 + t - lo)`` in the density (0 for bounded pieces)."""
        if self.bounded:
            return 0.0
        return self.exp_inf - self.exp_lo - sum(k for _, k in self.factors)

    def smooth(self, t):
        """Density divided by ``(t - lo)**exp_lo``."""
        out = self.scale
        g = self.tail_power
        if g:
            out = out * (1.0 + t - self.lo) ** g
        for c, k in self.factors:
            out = out * (t + c) ** k
        return out

    def density(self, t):
        t = np.asarray(t, dtype=float)
        inside = (t >= self.lo) & (t < self.hi)
        tt = np.where(inside, t, self.lo + 1.0)
        val = (tt - self.lo) ** self.exp_lo * self.smooth(tt)
        return np.where(inside, val, 0.0)


class Integrability(enum.Enum):
    FINITE = "finite"
    INFINITE = "infinite"


class TestId(enum.Enum):
    __test__ = False  # not a pytest class

    INT_DSIGMA_OVER_T_NEAR_0 = "int_dsigma_over_t_near_0"
    INT_DSIGMA_OVER_1PT2 = "int_dsigma_over_1pt2"
    INT_DNU_OVER_1PT = "int_dnu_over_1pt"
    INT_ZERO_MOMENT = "int_zero_moment"


# (pole location, pole order, decay order at infinity)
_TESTS = {
    TestId.INT_DSIGMA_OVER_T_NEAR_0: (0.0, 1, None),
    TestId.INT_DSIGMA_OVER_1PT2: (0.0, 0, 2),
    TestId.INT_DNU_OVER_1PT: (-1.0, 1, 1),
    TestId.INT_ZERO_MOMENT: (0.0, 1, 3),
}


@dataclass(frozen=True)
class StieltjesMeasure:
    atoms: tuple = ()
    pieces: tuple = ()

    def __post_init__(self):
        atoms = tuple(sorted((a if isinstance(a, Atom) else Atom(*a) for a in self.atoms),
                             key=lambda a: a.t))
        pieces = tuple(sorted(self.pieces, key=lambda p: p.lo))
        for left, right in zip(pieces, pieces[1:]):
            if right.lo < left.hi:
                raise ValueError("density pieces must have disjoint interiors")
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "pieces", pieces)

    @classmethod
    def empty(cls):
        return cls()

    @classmethod
    def atom(cls, t, w):
        return cls(atoms=(Atom(t, w),))

    @property
    def is_empty(self):
        return not self.atoms and not self.pieces

    def support(self):
        """Closed support as a sorted list of ``(lo, hi)`` intervals."""
        parts = [(a.t, a.t) for a in self.atoms] + [(p.lo, p.hi) for p in self.pieces]
        parts.sort()
        merged = []
        for lo, hi in parts:
            if merged and lo <= merged[-1][1]:
                merged[-1] = (merged[-1][0], max(merged[-1][1], hi))
            else:
                merged.append((lo, hi))
        return merged

    def distance(self, z):
        """Distance from the complex point ``z`` to the support."""
        z = complex(z)
        d = math.inf
        for a in self.atoms:
            d = min(d, abs(z - a.t))
        for p in self.pieces:
            x = min(max(z.real, p.lo), p.hi)
            d = min(d, abs(z - x))
        return d

    def atom_weight(self, t):
        return sum(a.w for a in self.atoms if a.t == t)

    def without_atom_at(self, t):
        return StieltjesMeasure(tuple(a for a in self.atoms if a.t != t), self.pieces)

    def with_atom(self, t, w):
        if w == 0:
            return self
        return StieltjesMeasure(self.atoms + (Atom(t, w),), self.pieces)

    def scaled(self, c):
        if not c > 0:
            raise ValueError("scaling constant must be positive")
        return StieltjesMeasure(
            tuple(Atom(a.t, c * a.w) for a in self.atoms),
            tuple(DensityPiece(p.lo, p.hi, c * p.scale, p.exp_lo, p.exp_inf, p.factors)
                  for p in self.pieces),
        )

    def reweighted(self, c, k):
        """Measure ``(t + c)**k dsigma(t)``; the factor must be positive on the support."""
        return self.reweighted_by(((c, k),))

    def reweighted_by(self, factors):
        """Measure ``prod (t + c)**k dsigma(t)`` over ``factors = ((c, k), ...)``.

        Piece invariants are checked only for the final product, so a
        factor may be applied together with one that compensates it.
        """
        factors = tuple((float(c), float(k)) for c, k in factors)
        atoms = []
        for a in self.atoms:
            w = a.w
            for c, k in factors:
                base = a.t + c
                if base == 0:
                    if k > 0:
                        w = 0.0
                        break
                    raise DivergentIntegral(f"atom at {a.t} meets (t + {c})**{k}")
                if base < 0 and not k.is_integer():
                    raise ValueError("non-integer power of a negative factor")
                w *= base ** k
            if w != 0:
                atoms.append(Atom(a.t, w))
        pieces = []
        for p in self.pieces:
            exp_lo, exp_inf, extra = p.exp_lo, p.exp_inf, p.factors
            for c, k in factors:
                if not p.bounded:
                    exp_inf += k
                if p.lo == -c:
                    exp_lo += k
                elif p.lo + c > 0:
                    extra = extra + ((c, k),)
                else:
                    raise ValueError(f"factor (t + {c}) changes sign on [{p.lo}, {p.hi})")
            if not exp_lo > -1:
                raise DivergentIntegral("reweighting makes the piece non-integrable at its left end")
            pieces.append(DensityPiece(p.lo, p.hi, p.scale, exp_lo, exp_inf, extra))
        return StieltjesMeasure(tuple(atoms), tuple(pieces))

    # thin method wrappers over the module-level operations
    def integrate(self, kernel, z=None, tol=DEFAULT_TOL):
        return integrate(self, kernel, z, tol)

    def integrability(self, test):
        return integrability(self, test)

    def restrict(self, interval):
        return restrict(self, interval)

    def total_mass(self, interval):
        return total_mass(self, interval)


# --------------------------------------------------------------------------
# exponent tests


def _converges(measure, pole, order, decay):
    for a in measure.atoms:
        if order > 0 and a.t == pole:
            return False
    for p in measure.pieces:
        if order > 0:
            if p.lo < pole < p.hi or p.hi == pole:
                return False
            if p.lo == pole and p.exp_lo - order <= -1:
                return False
        if decay is not None and not p.bounded and p.exp_inf - decay >= -1:
            return False
    return True


def integrability(measure, test):
    """Decide finiteness of one of the named integrals from exponents alone.

    Parameters
    ----------
    measure : StieltjesMeasure
    test : TestId or str

    Returns
    -------
    Integrability
    """
    if not isinstance(test, TestId):
        test = TestId[str(test).upper()]
    pole, order, decay = _TESTS[test]
    ok = _converges(measure, pole, order, decay)
    return Integrability.FINITE if ok else Integrability.INFINITE


# --------------------------------------------------------------------------
# restriction and mass


def restrict(measure, interval):
    """Clip ``measure`` to the half-open interval ``[lo, hi)``."""
    lo, hi = (float(v) for v in interval)
    atoms = tuple(a for a in measure.atoms if lo <= a.t < hi)
    pieces = []
    for p in measure.pieces:
        a, b = max(p.lo, lo), min(p.hi, hi)
        if b <= a:
            continue
        pieces.append(_clip(p, a, b))
    return StieltjesMeasure(atoms, tuple(pieces))


def _clip(p, a, b):
    if a == p.lo and b == p.hi:
        return p
    factors = list(p.factors)
    g = p.tail_power
    if a > p.lo:
        # re-anchor at the new left end; the old local law becomes a factor
        factors.append((-p.lo, p.exp_lo))
        if g:
            factors.append((1.0 - p.lo, g))
        exp_lo = 0.0
    else:
        exp_lo = p.exp_lo
        if math.isfinite(b) and g:
            factors.append((1.0 - p.lo, g))
    exp_inf = p.exp_inf if not math.isfinite(b) else None
    return DensityPiece(a, b, p.scale, exp_lo, exp_inf, tuple(factors))


def total_mass(measure, interval):
    """Mass of ``[lo, hi)``; closed form for plain power pieces."""
    lo, hi = (float(v) for v in interval)
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise ValueError("total_mass needs a bounded interval")
    if hi <= lo:
        return 0.0
    mass = sum(a.w for a in measure.atoms if lo <= a.t < hi)
    for p in measure.pieces:
        a, b = max(p.lo, lo), min(p.hi, hi)
        if b <= a:
            continue
        if p.bounded and not p.factors:
            e1 = p.exp_lo + 1.0
            mass += p.scale * ((b - p.lo) ** e1 - (a - p.lo) ** e1) / e1
        else:
            piece = _clip(p, a, b)
            mass += _piece_integral(piece, _k.ONE, 0.0, DEFAULT_TOL * 1e-2, False)[0]
    return mass


# --------------------------------------------------------------------------
# quadrature


def _quad_real(f, a, b, tol, **kw):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        res = quad(f, a, b, epsabs=0.0, epsrel=max(0.1 * tol, 1e-13), limit=QUAD_LIMIT,
                   full_output=1, **kw)
    return res[0], res[1]


def _quad(f, a, b, tol, cplx, **kw):
    if kw.get("points") is not None and len(kw["points"]) == 0:
        kw.pop("points")
    if not cplx:
        return _quad_real(lambda t: f(t).real, a, b, tol, **kw)
    re, e1 = _quad_real(lambda t: f(t).real, a, b, tol, **kw)
    im, e2 = _quad_real(lambda t: f(t).imag, a, b, tol, **kw)
    return complex(re, im), e1 + e2


def _mesh(a, b, z):
    """Breakpoints in ``(a, b)`` clustering geometrically towards ``z``."""
    if z is None or not math.isfinite(b):
        return []
    length = b - a
    x0 = min(max(z.real, a), b)
    d = abs(z - x0)
    if d >= 0.25 * length:
        return []
    d = max(d, 1e-15 * max(1.0, abs(x0)))
    pts = set()
    if a < x0 < b:
        pts.add(x0)
    h = d
    while h < length:
        for x in (x0 - h, x0 + h):
            if a < x < b:
                pts.add(x)
        h *= 2.0
    return sorted(pts)


def _piece_integral(piece, kernel, z, tol, cplx):
    lo, hi = piece.lo, piece.hi
    order = kernel.pole_order
    if order and (lo < kernel.pole < hi or hi == kernel.pole):
        raise DivergentIntegral(f"{kernel.name} is singular inside [{lo}, {hi})")
    singular = order > 0 and lo == kernel.pole
    e = piece.exp_lo - (order if singular else 0)
    if e <= -1:
        raise DivergentIntegral(f"{kernel.name} diverges at the left end {lo}")
    zz = z if kernel.uses_z else None
    kz = z if kernel.uses_z else 0.0
    inner = kernel.near if singular else kernel.value

    def g(t):
        return piece.smooth(t) * inner(t, kz)

    def full(t):
        return (t - lo) ** piece.exp_lo * piece.smooth(t) * kernel.value(t, kz)

    parts = []
    near_end = min(hi, lo + 1.0)
    marks = _mesh(lo, near_end, zz)
    b1 = marks[0] if marks else near_end
    parts.append(_quad(g, lo, b1, tol, cplx, weight="alg", wvar=(e, 0.0)))
    if b1 < near_end:
        parts.append(_quad(full, b1, near_end, tol, cplx, points=marks[1:]))
    if hi > near_end:
        if piece.bounded:
            mid_end = hi
        else:
            mid_end = max(near_end, 1.0, 2.0 * abs(kz) if kernel.uses_z else 1.0)
        if mid_end > near_end:
            parts.append(_quad(full, near_end, mid_end, tol, cplx,
                               points=_mesh(near_end, mid_end, zz)))
        if not piece.bounded:
            parts.append(_tail(piece, kernel, kz, mid_end, tol, cplx))
    value = sum(v for v, _ in parts)
    err = sum(e for _, e in parts)
    scale = sum(abs(v) for v, _ in parts)
    return value, err, scale


def _tail(piece, kernel, z, m, tol, cplx):
    # t = lo + L/s maps [m, inf) onto (0, 1]; the integrand becomes
    # s**ep * G(s) with G smooth at s = 0.
    lo = piece.lo
    L = m - lo
    q = kernel.decay
    ep = q - piece.exp_inf - 2.0
    if ep <= -1:
        raise DivergentIntegral(f"{kernel.name} diverges at infinity")
    alpha, g = piece.exp_lo, piece.tail_power
    coef = piece.scale * L ** (alpha + 1.0)
    factors = piece.factors

    def G(s):
        den = lo * s + L
        out = coef
        if g:
            out = out * (s + L) ** g
        for c, k in factors:
            out = out * (s * (lo + c) + L) ** k
        return out * kernel.far(s / den, z) / den ** q

    return _quad(G, 0.0, 1.0, tol, cplx, weight="alg", wvar=(ep, 0.0))


def integrate(measure, kernel, z=None, tol=DEFAULT_TOL):
    """Integrate ``kernel(t, z)`` against ``measure``.

    Atoms are summed exactly; each density piece is integrated by adaptive
    Gauss-Kronrod quadrature with the algebraic endpoint weight
    ``(t - lo)**e`` handled analytically, and its tail mapped to a finite
    interval.

    Parameters
    ----------
    measure : StieltjesMeasure
    kernel : Kernel or str
        One of the kernels from :mod:`nevkappa.kernels` or its name
        (``"CAUCHY"``, ``"HERGLOTZ"``, ``"WEIGHTED_CAUCHY"``, ``"INV_QUAD"``,
        ``"ZERO_MOMENT"``).
    z : complex, optional
        Evaluation point; required for z-dependent kernels.
    tol : float
        Relative tolerance.

    Returns
    -------
    complex or float
        Complex for z-dependent kernels, float otherwise.

    Raises
    ------
    PoleOnSupport
        If ``z`` is within ``1e-13 * (1 + |z|)`` of the support.
    DivergentIntegral
        If the exponent test says the integral is infinite.
    QuadratureFailure
        If the adaptive rule cannot reach ``tol``.
    """
    kernel = _k.get(kernel)
    if kernel.uses_z:
        if z is None:
            raise ValueError(f"{kernel.name} needs an evaluation point")
        z = complex(z)
        if measure.distance(z) < SUPPORT_GUARD * (1.0 + abs(z)):
            raise PoleOnSupport(f"z = {z} lies on the support of the measure")
        if z.imag < 0 and not kernel.always_real:
            return integrate(measure, kernel, z.conjugate(), tol).conjugate()
        cplx = z.imag != 0 and not kernel.always_real
    else:
        z = 0.0
        cplx = False
    if not _converges(measure, kernel.pole, kernel.pole_order, kernel.decay):
        raise DivergentIntegral(f"integral of {kernel.name} against the measure is infinite")

    total = 0j if cplx else 0.0
    for a in measure.atoms:
        total += a.w * kernel.value(a.t, z)
    err = 0.0
    scale = abs(total)
    for p in measure.pieces:
        v, e, s = _piece_integral(p, kernel, z, tol, cplx)
        total += v
        err += e
        scale += s
    # relative to the size of the contributions: cancellation between
    # pieces cannot be resolved better than that
    if not err <= tol * max(abs(total), scale):
        raise QuadratureFailure(
            f"{kernel.name} quadrature error {err:.3g} exceeds tolerance for value {total!r}")
    if kernel.uses_z and not kernel.always_real:
        return complex(total)
    return float(total.real) if isinstance(total, complex) else float(total)


# --------------------------------------------------------------------------
# JSON-ready dictionaries


def _num(x):
    return "inf" if x == math.inf else x


def measure_to_dict(measure):
    pieces = []
    for p in measure.pieces:
        d = {"lo": p.lo, "hi": _num(p.hi), "scale": p.scale, "exp_lo": p.exp_lo}
        if not p.bounded:
            d["exp_inf"] = p.exp_inf
        if p.factors:
            d["factors"] = [[c, k] for c, k in p.factors]
        pieces.append(d)
    return {"atoms": [{"t": a.t, "w": a.w} for a in measure.atoms], "pieces": pieces}


def _parse_num(x):
    if isinstance(x, str):
        if x.lower() in ("inf", "+inf", "infinity"):
            return math.inf
        raise ValueError(f"expected a number or 'inf', got {x!r}")
    return float(x)


def measure_from_dict(d):
    if d is None:
        return StieltjesMeasure()
    atoms = tuple(Atom(a["t"], a["w"]) for a in d.get("atoms", []))
    pieces = tuple(
        DensityPiece(
            _parse_num(p["lo"]), _parse_num(p["hi"]), p["scale"], p["exp_lo"],
            p.get("exp_inf"), tuple(tuple(f) for f in p.get("factors", ())),
        )
        for p in d.get("pieces", [])
    )
    return StieltjesMeasure(atoms, pieces)

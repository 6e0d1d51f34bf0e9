"""Function representations: N-functions Phi, their quotients phi = Phi/z,
and the three canonical presentations (A), (B), (C) of N_kappa^+ functions.

Poles of ``Phi`` on the negative axis are stored separately from the
measure and enter as ``sigma_n / (lambda_n - z)``, without the Herglotz
recentring constant; the remaining measure lives on ``[0, inf)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import kernels as K
from .errors import (
    InvalidWindows,
    OriginSingularity,
    PoleOnSupport,
    PreconditionFailed,
)
from .measure import (
    SUPPORT_GUARD,
    DEFAULT_TOL,
    Integrability,
    StieltjesMeasure,
    TestId,
    integrability,
    integrate,
    restrict,
)

INF = math.inf


def _check_pole(z, lam):
    if abs(z - lam) < SUPPORT_GUARD * (1.0 + abs(z)):
        raise PoleOnSupport(f"z = {z} is a pole at {lam}")


def _on_half_axis(measure):
    return all(a.t >= 0 for a in measure.atoms) and all(p.lo >= 0 for p in measure.pieces)


@dataclass(frozen=True)
class PhiRep:
    """``Phi(z) = b z + a + sum sigma_n/(lambda_n - z) + int (1/(t-z) - t/(1+t^2)) dsigma``.

    ``neg_poles`` holds pairs ``(lambda_n, sigma_n)`` with ``lambda_n < 0``
    and ``sigma_n > 0``; ``measure`` is supported in ``[0, inf)``.
    """

    b: float = 0.0
    a: float = 0.0
    neg_poles: tuple = ()
    measure: StieltjesMeasure = field(default_factory=StieltjesMeasure)

    def __post_init__(self):
        object.__setattr__(self, "b", float(self.b))
        object.__setattr__(self, "a", float(self.a))
        poles = tuple(sorted(((float(l), float(s)) for l, s in self.neg_poles), reverse=True))
        object.__setattr__(self, "neg_poles", poles)
        if not (self.b >= 0 and math.isfinite(self.b)):
            raise ValueError("b must be a finite nonnegative number")
        if not math.isfinite(self.a):
            raise ValueError("a must be finite")
        lams = [l for l, _ in poles]
        if any(not l < 0 for l in lams):
            raise ValueError("pole locations must be negative")
        if len(set(lams)) != len(lams):
            raise ValueError("pole locations must be distinct")
        if any(not (s > 0 and math.isfinite(s)) for _, s in poles):
            raise ValueError("pole weights must be positive")
        if not _on_half_axis(self.measure):
            raise ValueError("measure must be supported in [0, inf)")
        if integrability(self.measure, TestId.INT_DSIGMA_OVER_1PT2) is Integrability.INFINITE:
            raise ValueError("int dsigma/(1+t^2) must be finite")

    @property
    def is_constant(self):
        return self.b == 0 and not self.neg_poles and self.measure.is_empty

    def scaled(self, c):
        return PhiRep(c * self.b, c * self.a, tuple((l, c * s) for l, s in self.neg_poles),
                      self.measure.scaled(c))


def eval_Phi(rep, z, tol=DEFAULT_TOL):
    """Evaluate the N-function ``Phi`` at ``z`` (conjugate-symmetric)."""
    z = complex(z)
    if z.imag < 0:
        return eval_Phi(rep, z.conjugate(), tol).conjugate()
    val = rep.b * z + rep.a
    for lam, s in rep.neg_poles:
        _check_pole(z, lam)
        val += s / (lam - z)
    if not rep.measure.is_empty:
        val += integrate(rep.measure, K.HERGLOTZ, z, tol)
    return complex(val)


def eval_Phi_prime(rep, z, tol=DEFAULT_TOL):
    z = complex(z)
    if z.imag < 0:
        return eval_Phi_prime(rep, z.conjugate(), tol).conjugate()
    val = complex(rep.b)
    for lam, s in rep.neg_poles:
        _check_pole(z, lam)
        val += s / (lam - z) ** 2
    if not rep.measure.is_empty:
        val += integrate(rep.measure, K.CAUCHY_SQ, z, tol)
    return val


def phi_limit_at_zero_minus(rep, tol=DEFAULT_TOL):
    """Left limit ``Phi(0-)``; ``math.inf`` when the zero moment diverges.

    The infinite value is decided by the exponent test (or an atom at the
    origin), never by overflow.
    """
    if integrability(rep.measure, TestId.INT_ZERO_MOMENT) is Integrability.INFINITE:
        return INF
    val = rep.a + sum(s / lam for lam, s in rep.neg_poles)
    if not rep.measure.is_empty:
        val += integrate(rep.measure, K.ZERO_MOMENT, None, tol)
    return float(val)


# --------------------------------------------------------------------------
# handles


class FunctionHandle:
    """A function meromorphic off the real axis, extended to the lower
    half-plane by ``f(conj z) = conj f(z)``.

    Subclasses implement ``_eval`` and ``_deriv`` for ``Im z >= 0``.
    """

    kind = "abstract"

    def __call__(self, z):
        z = complex(z)
        if z.imag < 0:
            return self._eval(z.conjugate()).conjugate()
        return self._eval(z)

    def derivative(self, z):
        z = complex(z)
        if z.imag < 0:
            return self._deriv(z.conjugate()).conjugate()
        return self._deriv(z)

    def _eval(self, z):
        raise NotImplementedError

    def _deriv(self, z):
        raise NotImplementedError

    def singular_distance(self, z):
        """Lower bound for the distance from ``z`` to the real singular set."""
        return abs(complex(z).imag)

    # hooks used by the witness search; meaningful for N_kappa^+ functions
    def negative_poles(self):
        return ()

    def Phi(self, z):
        """``z * f(z)``."""
        z = complex(z)
        return z * self(z)

    def Phi_zero_minus(self):
        raise NotImplementedError(f"{type(self).__name__} has no Phi(0-)")

    def regular_radius(self):
        """Half the distance from 0 to the nearest negative singularity, capped at 1."""
        lams = [l for l, _ in self.negative_poles()]
        if not lams:
            return 1.0
        return min(1.0, 0.5 * min(-l for l in lams))


class PhiFunction(FunctionHandle):
    """``phi(z) = Phi(z)/z`` for an N-function ``Phi`` given by a PhiRep."""

    kind = "phi_rep"

    def __init__(self, rep, tol=DEFAULT_TOL):
        self.rep = rep
        self.tol = tol

    def __repr__(self):
        return f"PhiFunction({self.rep!r})"

    def __eq__(self, other):
        return isinstance(other, PhiFunction) and other.rep == self.rep

    def __hash__(self):
        return hash(self.rep)

    def _eval(self, z):
        if z == 0:
            raise OriginSingularity("phi = Phi/z is singular at 0")
        return eval_Phi(self.rep, z, self.tol) / z

    def _deriv(self, z):
        if z == 0:
            raise OriginSingularity("phi = Phi/z is singular at 0")
        P = eval_Phi(self.rep, z, self.tol)
        dP = eval_Phi_prime(self.rep, z, self.tol)
        return (dP * z - P) / (z * z)

    def singular_distance(self, z):
        z = complex(z)
        d = min(abs(z), self.rep.measure.distance(z))
        for lam, _ in self.rep.neg_poles:
            d = min(d, abs(z - lam))
        return d

    def negative_poles(self):
        return self.rep.neg_poles

    def Phi(self, z):
        return eval_Phi(self.rep, z, self.tol)

    def Phi_zero_minus(self):
        return phi_limit_at_zero_minus(self.rep, self.tol)


class NevanlinnaFunction(PhiFunction):
    """The N-function ``Phi`` itself, viewed as a function to be tested."""

    kind = "nevanlinna"

    def __repr__(self):
        return f"NevanlinnaFunction({self.rep!r})"

    def _eval(self, z):
        return eval_Phi(self.rep, z, self.tol)

    def _deriv(self, z):
        return eval_Phi_prime(self.rep, z, self.tol)

    def singular_distance(self, z):
        z = complex(z)
        d = self.rep.measure.distance(z)
        for lam, _ in self.rep.neg_poles:
            d = min(d, abs(z - lam))
        return d


class WindowPart(FunctionHandle):
    """``sum (sigma/lambda)/(lambda - z) + int dsigma(t)/(t (t - z))`` over one window."""

    kind = "window_part"

    def __init__(self, poles, measure, tol=DEFAULT_TOL):
        self.poles = tuple(poles)
        self.measure = measure
        self.tol = tol

    def __repr__(self):
        return f"WindowPart(poles={self.poles!r}, measure={self.measure!r})"

    def _eval(self, z):
        val = 0j
        for lam, s in self.poles:
            _check_pole(z, lam)
            val += (s / lam) / (lam - z)
        if not self.measure.is_empty:
            val += integrate(self.measure, K.WEIGHTED_CAUCHY, z, self.tol)
        return val

    def _deriv(self, z):
        val = 0j
        for lam, s in self.poles:
            val += (s / lam) / (lam - z) ** 2
        if not self.measure.is_empty:
            # d/dz 1/(t(t-z)) = 1/(t (t-z)^2); only atoms can occur in windows
            for a in self.measure.atoms:
                val += a.w / (a.t * (a.t - z) ** 2)
        return val

    def singular_distance(self, z):
        z = complex(z)
        d = self.measure.distance(z)
        for lam, _ in self.poles:
            d = min(d, abs(z - lam))
        return d


# --------------------------------------------------------------------------
# the (A)/(B)/(C) presentations


@dataclass(frozen=True, eq=True)
class KappaForm(FunctionHandle):
    """Canonical presentation of an N_kappa^+ function.

    ``poles`` holds pairs ``(alpha_j, gamma_j)``, both negative.  For cases
    A and B ``nu_or_sigma`` is the measure ``nu`` entering
    ``int dnu/(t - z)``; for case C it is ``sigma`` entering
    ``(1/z) int (1/(t - z) - t/(1 + t^2)) dsigma``.
    """

    case: str
    s0: float = 0.0
    s1: float | None = None
    s2: float | None = None
    poles: tuple = ()
    nu_or_sigma: StieltjesMeasure = field(default_factory=StieltjesMeasure)

    def __post_init__(self):
        case = str(self.case).upper()
        if case not in ("A", "B", "C"):
            raise ValueError(f"case must be A, B or C, got {self.case!r}")
        object.__setattr__(self, "case", case)
        object.__setattr__(self, "s0", float(self.s0))
        poles = tuple(sorted(((float(a), float(g)) for a, g in self.poles), reverse=True))
        object.__setattr__(self, "poles", poles)
        if not self.s0 >= 0:
            raise ValueError("s0 must be nonnegative")
        if any(not (a < 0 and g < 0) for a, g in poles):
            raise ValueError("alpha_j and gamma_j must be negative")
        if len({a for a, _ in poles}) != len(poles):
            raise ValueError("alpha_j must be distinct")
        m = self.nu_or_sigma
        if not _on_half_axis(m):
            raise ValueError("measure must be supported in [0, inf)")
        if case == "A":
            if self.s1 is not None or self.s2 is not None:
                raise ValueError("case A has no s1, s2")
        else:
            s1 = 0.0 if self.s1 is None else float(self.s1)
            s2 = 0.0 if self.s2 is None else float(self.s2)
            object.__setattr__(self, "s1", s1)
            object.__setattr__(self, "s2", s2)
            if not s2 >= 0:
                raise ValueError("s2 must be nonnegative")
            if m.atom_weight(0.0) > 0:
                raise ValueError(f"case {case} forbids an atom of the measure at 0")
        if case in ("A", "B"):
            if integrability(m, TestId.INT_DNU_OVER_1PT) is Integrability.INFINITE:
                raise ValueError("int dnu/(1+t) must be finite")
        if case == "B" and not max(self.s1, self.s2) > 0:
            raise ValueError("case B needs max(s1, s2) > 0")
        if case == "C":
            if integrability(m, TestId.INT_DSIGMA_OVER_T_NEAR_0) is Integrability.FINITE:
                raise ValueError("case C needs int_0^1 dsigma/t = inf")
            if integrability(m, TestId.INT_DSIGMA_OVER_1PT2) is Integrability.INFINITE:
                raise ValueError("case C needs int dsigma/(1+t^2) finite")

    @property
    def kind(self):
        return "kappa_" + self.case

    @property
    def kappa(self):
        return len(self.poles) + (0 if self.case == "A" else 1)

    def _origin_terms(self, z):
        if self.case == "A":
            return 0j
        if z == 0:
            raise OriginSingularity(f"case {self.case} form is singular at 0")
        return self.s1 / z - self.s2 / (z * z)

    def _eval(self, z):
        val = self.s0 + self._origin_terms(z)
        for al, ga in self.poles:
            _check_pole(z, al)
            val += ga / (al - z)
        m = self.nu_or_sigma
        if not m.is_empty:
            if self.case == "C":
                val += integrate(m, K.HERGLOTZ, z) / z
            else:
                val += integrate(m, K.CAUCHY, z)
        return complex(val)

    def _deriv(self, z):
        val = 0j
        if self.case != "A":
            if z == 0:
                raise OriginSingularity(f"case {self.case} form is singular at 0")
            val += -self.s1 / z ** 2 + 2 * self.s2 / z ** 3
        for al, ga in self.poles:
            val += ga / (al - z) ** 2
        m = self.nu_or_sigma
        if not m.is_empty:
            if self.case == "C":
                H = integrate(m, K.HERGLOTZ, z)
                dH = integrate(m, K.CAUCHY_SQ, z)
                val += -H / z ** 2 + dH / z
            else:
                val += integrate(m, K.CAUCHY_SQ, z)
        return val

    def singular_distance(self, z):
        z = complex(z)
        d = self.nu_or_sigma.distance(z)
        if self.case != "A":
            d = min(d, abs(z))
        for al, _ in self.poles:
            d = min(d, abs(z - al))
        return d

    def negative_poles(self):
        return tuple((al, ga * al) for al, ga in self.poles)


# --------------------------------------------------------------------------
# operations


def as_handle(fun):
    """Coerce a PhiRep into the handle evaluating ``Phi(z)/z``."""
    if isinstance(fun, PhiRep):
        return PhiFunction(fun)
    if isinstance(fun, FunctionHandle):
        return fun
    raise TypeError(f"cannot evaluate {type(fun).__name__}")


def eval_phi(fun, z):
    """Evaluate ``phi`` at ``z``; a bare PhiRep means ``Phi(z)/z``."""
    return as_handle(fun)(z)


def eval_phi_prime(fun, x):
    """Derivative of ``phi`` at a point of the real axis off its singular set."""
    d = as_handle(fun).derivative(x)
    if complex(x).imag == 0:
        return float(d.real)
    return d


def split_local(rep, lambdas, tol=DEFAULT_TOL):
    """Split ``phi = Phi/z`` into ``[phi_0, phi_1, ..., phi_kappa]``.

    ``phi_n`` (``n >= 1``) collects the mass of ``dsigma(t)/t`` in the
    window ``U_n = (lambda_n - delta, lambda_n + delta)``; ``phi_0`` is
    ``b + a_tilde/z + (1/z) int_{U_0} (...) dsigma`` plus the poles outside
    the windows, with ``a_tilde = a + sum_{windows} sigma_n/lambda_n``.
    """
    from .witness import delta_gap

    lambdas = [float(l) for l in lambdas]
    delta = delta_gap(lambdas)
    pole_locs = {l for l, _ in rep.neg_poles}
    for lam in lambdas:
        if lam not in pole_locs and rep.measure.distance(lam) > 0:
            raise InvalidWindows(f"{lam} is neither a pole nor a point of increase")
    parts = []
    used = set()
    a_tilde = rep.a
    for lam in lambdas:
        lo, hi = lam - delta, lam + delta
        inside = tuple((l, s) for l, s in rep.neg_poles if lo < l < hi)
        used.update(l for l, _ in inside)
        a_tilde += sum(s / l for l, s in inside)
        window_measure = restrict(rep.measure, (lo, hi))
        if not window_measure.is_empty:
            a_tilde += integrate(window_measure, K.ZERO_MOMENT, None, tol)
        parts.append(WindowPart(inside, window_measure, tol))
    rest = PhiRep(rep.b, a_tilde, tuple(p for p in rep.neg_poles if p[0] not in used),
                  rep.measure)
    return [PhiFunction(rest, tol)] + parts


def regularize_eps(rep, eps, tol=DEFAULT_TOL):
    """Representation of ``Phi_eps(z) = z * phi_eps(z)``.

    ``phi_eps = (Phi(z) - Phi(-eps))/(z + eps) + Phi(-eps)/(z + eps)`` moves
    the singular behaviour of ``phi`` at the origin to a simple pole at
    ``-eps``.  The result always satisfies ``Phi_eps(0-) <= 0``.

    Raises
    ------
    PreconditionFailed
        If ``Phi(-eps) <= 0`` or ``eps`` is not below every ``|lambda_n|``.
    """
    eps = float(eps)
    if not eps > 0:
        raise PreconditionFailed("eps must be positive")
    if rep.neg_poles and not eps < min(-l for l, _ in rep.neg_poles):
        raise PreconditionFailed("eps must be smaller than the distance to every negative pole")
    phi_m = eval_Phi(rep, -eps, tol).real
    if not phi_m > 0:
        raise PreconditionFailed(f"Phi(-eps) = {phi_m} is not positive")
    A = [(l, s * l / (l + eps)) for l, s in rep.neg_poles]
    measure = rep.measure.reweighted_by(((0.0, 1.0), (eps, -1.0)))
    bracket = phi_m - sum(Ai / l for l, Ai in A)
    if not rep.measure.is_empty:
        bracket -= integrate(rep.measure, K.shifted_zero_moment(eps), None, tol)
    poles = tuple(A) + ((-eps, eps * phi_m),)
    return PhiRep(rep.b, bracket, poles, measure)

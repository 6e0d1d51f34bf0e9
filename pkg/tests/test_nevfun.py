import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nevkappa import kernels as K
from nevkappa.errors import OriginSingularity, PoleOnSupport, PreconditionFailed
from nevkappa.measure import Atom, DensityPiece, StieltjesMeasure, integrate
from nevkappa.nevfun import (
    KappaForm,
    NevanlinnaFunction,
    PhiFunction,
    PhiRep,
    eval_Phi,
    eval_Phi_prime,
    eval_phi,
    eval_phi_prime,
    phi_limit_at_zero_minus,
    regularize_eps,
    split_local,
)

SQRT_INV = StieltjesMeasure(pieces=(DensityPiece(0.0, 1.0, 1.0, -0.5),))


def riemann_herglotz_sqrt_inv(z, n=10**6):
    # t = u^2 removes the t^-1/2 endpoint singularity
    h = 1.0 / n
    u = h * (np.arange(n) + 0.5)
    t = u * u
    return 2 * h * np.sum(1 / (t - z) - t / (1 + t * t))


# -- PhiRep ----------------------------------------------------------------------


@pytest.mark.parametrize("kw", [
    dict(b=-1.0),
    dict(a=math.inf),
    dict(neg_poles=((1.0, 1.0),)),
    dict(neg_poles=((-1.0, -1.0),)),
    dict(neg_poles=((-1.0, 1.0), (-1.0, 2.0))),
    dict(measure=StieltjesMeasure.atom(-1.0, 1.0)),
])
def test_phirep_rejects_invalid(kw):
    with pytest.raises(ValueError):
        PhiRep(**kw)


def test_poles_sorted_descending():
    rep = PhiRep(neg_poles=((-3.0, 1.0), (-1.0, 1.0)))
    assert [l for l, _ in rep.neg_poles] == [-1.0, -3.0]


# -- eval_Phi -------------------------------------------------------------------


def test_eval_Phi_examples():
    assert eval_Phi(PhiRep(a=1.0, neg_poles=((-1.0, 2.0),)), 1.0) == 0
    assert eval_Phi(PhiRep(b=1.0), 3 + 4j) == 3 + 4j
    assert eval_Phi(PhiRep(measure=StieltjesMeasure.atom(1.0, 1.0)), 1j) == pytest.approx(0.5j, abs=1e-16)


def test_eval_Phi_pole_raises():
    with pytest.raises(PoleOnSupport):
        eval_Phi(PhiRep(neg_poles=((-1.0, 1.0),)), -1.0)


@settings(max_examples=50, deadline=None)
@given(x=st.floats(-5, 5), y=st.floats(1e-3, 5), a=st.floats(-3, 3), b=st.floats(0, 2),
       s=st.floats(0.01, 5), w=st.floats(0.01, 5), e=st.floats(-0.9, 1.5))
def test_Phi_is_nevanlinna(x, y, a, b, s, w, e):
    m = StieltjesMeasure((Atom(2.0, w),), (DensityPiece(0.0, 1.0, 1.0, e),))
    rep = PhiRep(b, a, ((-1.0, s),), m)
    z = complex(x, y)
    v = eval_Phi(rep, z)
    assert v.imag >= -1e-12 * (1 + abs(v))
    assert eval_Phi(rep, z.conjugate()) == v.conjugate()


def test_Phi_prime_matches_central_difference():
    rep = PhiRep(0.5, 1.0, ((-1.0, 2.0), (-4.0, 0.5)),
                 StieltjesMeasure((Atom(3.0, 1.0),), (DensityPiece(0.0, 1.0, 1.0, 0.5),)))
    z, h = 0.3 + 0.7j, 1e-5
    fd = (eval_Phi(rep, z + h) - eval_Phi(rep, z - h)) / (2 * h)
    assert eval_Phi_prime(rep, z) == pytest.approx(fd, rel=1e-8)


# -- eval_phi on forms ---------------------------------------------------------


def test_kappa_form_A_examples():
    f = KappaForm("A", s0=2.0, nu_or_sigma=StieltjesMeasure.atom(1.0, 1.0))
    assert eval_phi(f, 1j) == pytest.approx(2.5 + 0.5j, abs=1e-15)
    g = KappaForm("A", poles=((-1.0, -1.0),))
    assert eval_phi(g, 1j) == pytest.approx(0.5 - 0.5j, abs=1e-15)


def test_kappa_form_C_against_riemann_and_mpmath():
    f = KappaForm("C", s0=0.0, s1=0.0, s2=0.0, nu_or_sigma=SQRT_INV)
    v = eval_phi(f, -1.0)
    # mpmath at 30 digits
    assert v == pytest.approx(-1.08330083239553555311, rel=1e-11)
    assert abs(-riemann_herglotz_sqrt_inv(-1.0) - v) < 1e-10


def test_kappa_form_validation():
    with pytest.raises(ValueError):
        KappaForm("A", s1=1.0)
    with pytest.raises(ValueError):
        KappaForm("B", s1=0.0, s2=0.0)
    with pytest.raises(ValueError):
        KappaForm("C", s1=1.0, nu_or_sigma=StieltjesMeasure.atom(1.0, 1.0))
    with pytest.raises(ValueError):
        KappaForm("A", poles=((-1.0, 1.0),))
    with pytest.raises(ValueError):
        KappaForm("B", s1=1.0, nu_or_sigma=StieltjesMeasure.atom(0.0, 1.0))


def test_kappa_counts():
    assert KappaForm("A", poles=((-1.0, -1.0), (-2.0, -1.0))).kappa == 2
    assert KappaForm("B", s1=1.0, poles=((-1.0, -1.0),)).kappa == 2
    assert KappaForm("C", nu_or_sigma=SQRT_INV).kappa == 1


def test_origin_singularity():
    with pytest.raises(OriginSingularity):
        eval_phi(KappaForm("B", s1=1.0), 0.0)
    with pytest.raises(OriginSingularity):
        eval_phi(PhiRep(a=1.0), 0.0)


def test_case_B_s2_term():
    f = KappaForm("B", s1=0.0, s2=1.0)
    assert eval_phi(f, 2j) == pytest.approx(-1 / (2j) ** 2)


# -- derivative ------------------------------------------------------------------


def test_phi_prime_of_Phi_example():
    h = NevanlinnaFunction(PhiRep(neg_poles=((-1.0, 1.0),)))
    assert eval_phi_prime(h, 0.0) == pytest.approx(1.0)


def test_sqrt_divergent_derivative_mpmath():
    rep = PhiRep(measure=SQRT_INV)
    assert eval_Phi(rep, -0.5).real == pytest.approx(2.2145479410247987682, rel=1e-11)
    assert eval_phi_prime(rep, -0.5) == pytest.approx(-16.928945301614181331, rel=1e-10)


@pytest.mark.parametrize("case", ["A", "B", "C"])
def test_form_derivative_matches_difference(case):
    m = SQRT_INV if case == "C" else StieltjesMeasure((Atom(1.0, 2.0),), (DensityPiece(2.0, 3.0, 1.0, 0.5),))
    kw = {} if case == "A" else dict(s1=0.7, s2=0.3)
    f = KappaForm(case, s0=1.0, poles=((-2.0, -0.5),), nu_or_sigma=m, **kw)
    z, h = -0.4 + 0.2j, 1e-5
    fd = (f(z + h) - f(z - h)) / (2 * h)
    assert f.derivative(z) == pytest.approx(fd, rel=1e-7)


# -- Phi(0-) -------------------------------------------------------------------


def test_phi_limit_examples():
    assert phi_limit_at_zero_minus(PhiRep(a=1.0, neg_poles=((-1.0, 2.0),))) == -1.0
    assert phi_limit_at_zero_minus(PhiRep(measure=SQRT_INV)) == math.inf
    assert phi_limit_at_zero_minus(PhiRep(measure=StieltjesMeasure.atom(1.0, 1.0))) == pytest.approx(0.5)
    assert phi_limit_at_zero_minus(PhiRep(measure=StieltjesMeasure.atom(0.0, 1.0))) == math.inf


def test_phi_limit_is_limit_along_negative_axis():
    rep = PhiRep(0.0, 0.25, ((-2.0, 1.0),), StieltjesMeasure(pieces=(DensityPiece(0.0, 2.0, 1.0, 1.0),)))
    lim = phi_limit_at_zero_minus(rep)
    assert eval_Phi(rep, -1e-7).real == pytest.approx(lim, abs=1e-5)


def test_b_does_not_contribute():
    assert phi_limit_at_zero_minus(PhiRep(b=7.0, a=0.5)) == 0.5


# -- split_local ---------------------------------------------------------------


def test_split_local_single_pole():
    rep = PhiRep(a=0.0, neg_poles=((-1.0, 2.0),))
    phi0, phi1 = split_local(rep, [-1.0])
    for z in (1j, 0.5 + 2j, -3 + 0.1j):
        assert phi1(z) == pytest.approx(-2 / (-1 - z), rel=1e-14)
        # with the sigma/(lambda - z) pole convention the absorbed constant is sigma/lambda
        assert phi0(z) == pytest.approx(-2 / z, rel=1e-14)


def test_split_local_sums_to_phi():
    m = StieltjesMeasure((Atom(2.0, 1.0),), (DensityPiece(0.0, 1.0, 1.0, 0.5),))
    rep = PhiRep(0.5, 1.0, ((-1.0, 2.0), (-2.5, 0.5), (-6.0, 1.0)), m)
    parts = split_local(rep, [-1.0, -2.5])
    for z in (1j, 0.2 + 0.3j, -1.5 + 0.01j):
        assert sum(p(z) for p in parts) == pytest.approx(eval_phi(rep, z), abs=1e-10)


# -- regularize_eps ----------------------------------------------------------


def test_regularize_constant_example():
    r = regularize_eps(PhiRep(a=1.0), 0.5)
    assert r.neg_poles == ((-0.5, 0.5),)
    assert phi_limit_at_zero_minus(r) == pytest.approx(0.0, abs=1e-15)


def test_regularize_reweights():
    r = regularize_eps(PhiRep(a=5.0, neg_poles=((-2.0, 3.0),), measure=StieltjesMeasure.atom(1.0, 1.0)), 1.0)
    assert r.measure.atoms == (Atom(1.0, 0.5),)
    assert dict(r.neg_poles)[-2.0] == pytest.approx(6.0)


def test_regularize_identity():
    # Phi_eps(z) = z * phi_eps(z) with phi_eps = (Phi(z) - Phi(-eps))/(z + eps) + Phi(-eps)/(z + eps)
    m = StieltjesMeasure((Atom(0.0, 0.3), Atom(2.0, 1.0)), (DensityPiece(0.5, 3.0, 1.0, 0.5),))
    rep = PhiRep(0.2, 3.0, ((-2.0, 1.0),), m)
    eps = 0.3
    r = regularize_eps(rep, eps)
    for z in (1j, -0.1 + 0.2j, 4 + 1j):
        expected = z * eval_Phi(rep, z) / (z + eps)
        assert eval_Phi(r, z) == pytest.approx(expected, rel=1e-10)
    # the atom at 0 leaves z Phi(z) -> -0.3, so Phi_eps(0-) = -0.3/eps
    assert phi_limit_at_zero_minus(r) == pytest.approx(-0.3 / eps, rel=1e-12)


def test_regularize_preconditions():
    with pytest.raises(PreconditionFailed):
        regularize_eps(PhiRep(a=-1.0), 0.5)
    with pytest.raises(PreconditionFailed):
        regularize_eps(PhiRep(a=5.0, neg_poles=((-1.0, 1.0),)), 2.0)


def test_phi_function_equality():
    rep = PhiRep(a=1.0)
    assert PhiFunction(rep) == PhiFunction(rep)
    assert eval_phi(rep, 2j) == pytest.approx(1 / 2j)


def test_herglotz_integral_consistency():
    m = StieltjesMeasure(pieces=(DensityPiece(0.0, 1.0, 1.0, 0.5),))
    rep = PhiRep(measure=m)
    assert eval_Phi(rep, 1j) == integrate(m, K.HERGLOTZ, 1j)

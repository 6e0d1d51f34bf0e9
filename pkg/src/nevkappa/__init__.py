"""Numerics for generalized Nevanlinna functions of class N_kappa^+.

Represent ``Phi`` by its integral data, evaluate ``phi = Phi/z``, count
negative squares of Pick matrices, construct witness point sets and
classify representation data by the sign of ``Phi(0-)``.
"""
from .catalog import CATALOG, eval_counterexample_psi
from .classify import FORM_1, FORM_2, Classification, classify, from_theorem_form, to_theorem_form
from .errors import *  # noqa: F401,F403
from .harness import GenConfig, Report, SuiteId, run_suite
from .measure import (
    Atom,
    DensityPiece,
    Integrability,
    StieltjesMeasure,
    TestId,
    integrability,
    integrate,
    restrict,
    total_mass,
)
from .nevfun import (
    FunctionHandle,
    KappaForm,
    NevanlinnaFunction,
    PhiFunction,
    PhiRep,
    eval_Phi,
    eval_phi,
    eval_phi_prime,
    phi_limit_at_zero_minus,
    regularize_eps,
    split_local,
)
from .pick import Inertia, PickMatrix, form_value, inertia, inertia_ldl, negative_squares, pick_matrix
from .witness import WindowPlan, WitnessResult, delta_gap, rho_sq, witness_boundary, witness_interior

__version__ = "0.1.0"

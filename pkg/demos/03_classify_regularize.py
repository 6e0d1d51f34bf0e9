"""Classification by the sign of Phi(0-) and regularization.

Phi(0-) <= 0 gives FORM_2 (case A).  A finite positive limit gives FORM_1,
case B; a divergent one (int dsigma/t = inf) gives case C.  Moving the
behaviour at the origin to a pole at -eps turns any FORM_1 representation
into a FORM_2 one with the same kappa.
"""
from nevkappa import DensityPiece, PhiRep, StieltjesMeasure, classify, from_theorem_form
from nevkappa import phi_limit_at_zero_minus, regularize_eps

reps = {
    "one pole, a = 1": PhiRep(a=1.0, neg_poles=((-1.0, 2.0),)),
    "constant 1": PhiRep(a=1.0),
    "t^-1/2 on [0, 1]": PhiRep(measure=StieltjesMeasure(pieces=(DensityPiece(0.0, 1.0, 1.0, -0.5),))),
    "two poles, a = 5": PhiRep(a=5.0, neg_poles=((-1.0, 1.0), (-2.0, 1.0))),
}
for name, rep in reps.items():
    c = classify(rep)
    f = from_theorem_form(rep, c)
    s = ", ".join("-" if v is None else f"{v:.3g}" for v in (f.s0, f.s1, f.s2))
    print(f"{name:20s} kappa {c.kappa}  form {c.theorem_form}  case {c.case_label}  "
          f"Phi(0-) {c.phi_zero_minus:.4g}  s0, s1, s2 = {s}")

rep = reps["two poles, a = 5"]
reg = regularize_eps(rep, 0.25)
c = classify(reg)
print("regularized at eps = 0.25:", reg.neg_poles)
print(f"  Phi_eps(0-) = {phi_limit_at_zero_minus(reg):.3g}, kappa {c.kappa}, form {c.theorem_form}")

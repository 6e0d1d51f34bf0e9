"""Witness point sets.

``witness_interior`` puts one point above each negative pole and halves the
height until the Pick matrix has kappa negative eigenvalues.
``witness_boundary`` adds a point near the origin when Phi(0-) > 0, which is
where the extra negative square of FORM_1 functions comes from.
"""
from nevkappa import CATALOG, witness_boundary, witness_interior

two_pole = CATALOG["two_pole"]
w = witness_interior(two_pole.rep, two_pole.kappa)
print("interior:", w.points, "eta", w.eta, "inertia", w.inertia.as_tuple())
for z, rho in zip(w.points, w.rho_diagnostics):
    print(f"  pole at {z.real}: rho^2 = {rho:.4g}")

for name in ("inv_z", "sqrt_divergent", "psi"):
    e = CATALOG[name]
    w = witness_boundary(e.handle, e.kappa)
    print(f"boundary {name}: z0 = {w.points[-1]:.3g}, eta {w.eta:.3g}, mu {w.mu:.3g}, "
          f"n_minus {w.inertia.n_minus}")

"""Pick matrices and negative squares.

A one-pole example: Phi(z) = 1 + 2/(-1 - z) has one negative pole, so
phi = Phi/z has kappa = 1.  Random point sets never produce more than one
negative eigenvalue; points close to the pole produce exactly one.
"""
import numpy as np

from nevkappa import PhiRep, classify, inertia, inertia_ldl, negative_squares, pick_matrix

rep = PhiRep(a=1.0, neg_poles=((-1.0, 2.0),))
print(classify(rep))

# random points in the upper half-plane
rng = np.random.default_rng(0)
counts = []
for _ in range(200):
    n = int(rng.integers(1, 7))
    pts = rng.uniform(-3, 3, n) + 1j * rng.uniform(0.05, 2, n)
    counts.append(negative_squares(rep, pts))
print("negative squares over 200 random sets:", np.bincount(counts))

# two points hugging the pole: the 1x1 block at -1 + i*eta is already negative
P = pick_matrix(rep, [-1 + 0.01j, 1 + 1j])
print(np.round(P.entries, 3))
print("eigvalsh:", inertia(P).as_tuple(), " LDL*:", inertia_ldl(P).as_tuple())

"""Pick matrices of a function over a point set, and their inertia.

Two independent inertia paths are provided: Hermitian eigenvalues
(``inertia``) and a Bunch-Kaufman ``L D L^*`` factorization with
diagonal pivoting (``inertia_ldl``), counted through Sylvester's law.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CoincidentPoints, DimensionMismatch, NonHermitianInput
from .nevfun import as_handle

COINCIDENCE = 1e-10
HERMITIAN_TOL = 1e-12
REL_TOL = 1e-8


@dataclass(frozen=True)
class PickMatrix:
    entries: np.ndarray
    points: tuple

    @property
    def size(self):
        return len(self.points)

    def norm(self):
        """Max-row-sum norm."""
        if self.size == 0:
            return 0.0
        return float(np.abs(self.entries).sum(axis=1).max())


@dataclass(frozen=True)
class Inertia:
    n_minus: int
    n_zero: int
    n_plus: int
    tolerance_used: float

    def as_tuple(self):
        return (self.n_minus, self.n_zero, self.n_plus)


def check_points(points):
    pts = tuple(complex(z) for z in points)
    for z in pts:
        if z.imag == 0:
            raise CoincidentPoints(f"point {z} is real")
    for m in range(len(pts)):
        for n in range(m + 1, len(pts)):
            # z_m = conj z_n would put a zero in a denominator as well
            if abs(pts[m] - pts[n]) < COINCIDENCE or abs(pts[m] - pts[n].conjugate()) < COINCIDENCE:
                raise CoincidentPoints(f"points {pts[m]} and {pts[n]} coincide")
    return pts


def pick_from_values(points, values):
    """Assemble the Pick matrix from precomputed ``phi(z_m)``."""
    pts = tuple(points)
    k = len(pts)
    P = np.zeros((k, k), dtype=complex)
    for m in range(k):
        P[m, m] = (values[m] - values[m].conjugate()) / (pts[m] - pts[m].conjugate())
        P[m, m] = P[m, m].real
        for n in range(m + 1, k):
            v = (values[m] - values[n].conjugate()) / (pts[m] - pts[n].conjugate())
            P[m, n] = v
            P[n, m] = v.conjugate()
    return PickMatrix(P, pts)


def pick_matrix(fun, points):
    """Assemble ``P[m, n] = (phi(z_m) - conj phi(z_n)) / (z_m - conj z_n)``.

    ``phi`` is evaluated once per point; the lower triangle is the exact
    conjugate mirror of the upper one.
    """
    h = as_handle(fun)
    pts = check_points(points)
    return pick_from_values(pts, [complex(h(z)) for z in pts])


def _as_array(P):
    A = P.entries if isinstance(P, PickMatrix) else np.asarray(P, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {A.shape}")
    return A


def default_tol(A):
    norm = float(np.abs(A).sum(axis=1).max()) if A.size else 0.0
    return REL_TOL * max(1.0, norm)


def _check_hermitian(A):
    if A.size and np.abs(A - A.conj().T).max() > HERMITIAN_TOL * max(1.0, np.abs(A).max()):
        raise NonHermitianInput("matrix is not Hermitian")


def _count(values, tol):
    values = np.asarray(values, dtype=float)
    neg = int(np.count_nonzero(values < -tol))
    pos = int(np.count_nonzero(values > tol))
    return Inertia(neg, len(values) - neg - pos, pos, tol)


def eigenvalues(P):
    A = _as_array(P)
    _check_hermitian(A)
    return np.linalg.eigvalsh(A) if A.size else np.zeros(0)


def inertia(P, tol=None):
    """Counts of eigenvalues below ``-tol``, within ``[-tol, tol]`` and above ``tol``.

    ``tol`` defaults to ``1e-8 * max(1, ||P||_inf)``.
    """
    A = _as_array(P)
    if tol is None:
        tol = default_tol(A)
    return _count(eigenvalues(A), tol)


_BK_ALPHA = (1.0 + math.sqrt(17.0)) / 8.0


def ldl_bunch_kaufman(A, zero=0.0):
    """Bunch-Kaufman factorization ``Pm A Pm^T = L D L^*``.

    Returns ``(perm, L, blocks)`` where ``blocks`` lists the 1x1 and 2x2
    diagonal blocks of ``D`` in order.  Elimination stops once every
    entry of the remaining Schur complement is at most ``zero`` in
    modulus; that trailing block is returned as a zero block.
    """
    A = np.array(_as_array(A), dtype=complex)
    n = A.shape[0]
    perm = np.arange(n)
    L = np.eye(n, dtype=complex)
    blocks = []

    def swap(i, j):
        if i == j:
            return
        A[[i, j], :] = A[[j, i], :]
        A[:, [i, j]] = A[:, [j, i]]
        L[[i, j], :k] = L[[j, i], :k]
        perm[[i, j]] = perm[[j, i]]

    k = 0
    while k < n:
        if np.abs(A[k:, k:]).max() <= zero:
            blocks.append(np.zeros((n - k, n - k)))
            break
        a_kk = abs(A[k, k].real)
        col = np.abs(A[k + 1:, k])
        if col.size == 0 or col.max() == 0:
            blocks.append(np.array([[A[k, k].real]]))
            k += 1
            continue
        r = k + 1 + int(col.argmax())
        lam = col.max()
        size = 1
        if a_kk >= _BK_ALPHA * lam:
            pass
        else:
            others = np.abs(np.r_[A[r, k:r], A[r + 1:, r]])
            sig = others.max()
            if a_kk * sig >= _BK_ALPHA * lam * lam:
                pass
            elif abs(A[r, r].real) >= _BK_ALPHA * sig:
                swap(k, r)
            else:
                swap(k + 1, r)
                size = 2
        if size == 1:
            d = A[k, k].real
            l = A[k + 1:, k] / d
            A[k + 1:, k + 1:] -= np.outer(l, A[k, k + 1:])
            L[k + 1:, k] = l
            blocks.append(np.array([[d]]))
        else:
            D = A[k:k + 2, k:k + 2].copy()
            D[0, 0] = D[0, 0].real
            D[1, 1] = D[1, 1].real
            C = A[k + 2:, k:k + 2]
            l = C @ np.linalg.inv(D)
            A[k + 2:, k + 2:] -= l @ C.conj().T
            L[k + 2:, k:k + 2] = l
            blocks.append(D)
        A[k + size:, k:k + size] = 0
        A[k:k + size, k + size:] = 0
        k += size
    return perm, L, blocks


def inertia_ldl(P, tol=None):
    """Inertia from the block-diagonal factor of a Bunch-Kaufman factorization."""
    A = _as_array(P)
    _check_hermitian(A)
    if tol is None:
        tol = default_tol(A)
    _, _, blocks = ldl_bunch_kaufman(A, zero=tol)
    neg = zero = pos = 0
    for D in blocks:
        if D.shape == (1, 1):
            d = D[0, 0].real
            neg += d < 0
            pos += d > 0
            zero += d == 0
        elif D.shape == (2, 2) and D.any():
            # a 2x2 pivot has negative determinant: one eigenvalue of each sign
            neg += 1
            pos += 1
        else:
            zero += D.shape[0]
    return Inertia(int(neg), int(zero), int(pos), tol)


def negative_squares(fun, points, tol=None):
    return inertia(pick_matrix(fun, points), tol).n_minus


def form_value(P, xi):
    """``sum_{m,n} P[m, n] xi_m conj(xi_n)``."""
    A = _as_array(P)
    x = np.asarray(xi, dtype=complex).ravel()
    if x.shape[0] != A.shape[0]:
        raise DimensionMismatch(f"vector of length {x.shape[0]} for a {A.shape[0]}x{A.shape[0]} form")
    v = complex(x @ A @ x.conj())
    floor = 1e-14 * float(np.abs(A).sum()) * float(np.vdot(x, x).real)
    if abs(v.imag) > 1e-10 * abs(v) + floor:
        raise NonHermitianInput(f"form value {v} is not real")
    return v.real

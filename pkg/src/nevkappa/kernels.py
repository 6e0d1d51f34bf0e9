"""Integration kernels ``K(t, z)`` used against Stieltjes measures.

Each kernel carries three evaluations of the same function so the
quadrature never has to multiply a tiny number by a huge one:

``value(t, z)``
    the kernel itself;
``near(t, z)``
    ``(t - pole)**pole_order * K(t, z)``, smooth at the kernel's own pole;
``far(r, z)``
    ``t**decay * K(t, z)`` written in terms of ``r = 1/t``, smooth at ``r = 0``.

All three accept numpy arrays as well as scalars.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np


@dataclass(frozen=True)
class Kernel:
    name: str
    value: Callable
    near: Callable
    far: Callable
    pole_order: int = 0
    decay: int = 1
    pole: float = 0.0
    uses_z: bool = True
    always_real: bool = False

    def __repr__(self):
        return f"Kernel({self.name})"


CAUCHY = Kernel(
    "CAUCHY",
    value=lambda t, z: 1.0 / (t - z),
    near=lambda t, z: 1.0 / (t - z),
    far=lambda r, z: 1.0 / (1.0 - z * r),
    decay=1,
)

# 1/(t-z) - t/(1+t^2) written as (1 + t z)/((t - z)(1 + t^2)) to avoid
# cancellation for large t.
HERGLOTZ = Kernel(
    "HERGLOTZ",
    value=lambda t, z: (1.0 + t * z) / ((t - z) * (1.0 + t * t)),
    near=lambda t, z: (1.0 + t * z) / ((t - z) * (1.0 + t * t)),
    far=lambda r, z: (r + z) / ((1.0 - z * r) * (1.0 + r * r)),
    decay=2,
)

WEIGHTED_CAUCHY = Kernel(
    "WEIGHTED_CAUCHY",
    value=lambda t, z: 1.0 / (t * (t - z)),
    near=lambda t, z: 1.0 / (t - z),
    far=lambda r, z: 1.0 / (1.0 - z * r),
    pole_order=1,
    decay=2,
)

INV_QUAD = Kernel(
    "INV_QUAD",
    value=lambda t, z: 1.0 / (1.0 + t * t),
    near=lambda t, z: 1.0 / (1.0 + t * t),
    far=lambda r, z: 1.0 / (1.0 + r * r),
    decay=2,
    uses_z=False,
)

ZERO_MOMENT = Kernel(
    "ZERO_MOMENT",
    value=lambda t, z: 1.0 / (t + t ** 3),
    near=lambda t, z: 1.0 / (1.0 + t * t),
    far=lambda r, z: 1.0 / (1.0 + r * r),
    pole_order=1,
    decay=3,
    uses_z=False,
)

# d/dz of the Cauchy and Herglotz kernels.
CAUCHY_SQ = Kernel(
    "CAUCHY_SQ",
    value=lambda t, z: 1.0 / (t - z) ** 2,
    near=lambda t, z: 1.0 / (t - z) ** 2,
    far=lambda r, z: 1.0 / (1.0 - z * r) ** 2,
    decay=2,
)

ONE = Kernel(
    "ONE",
    value=lambda t, z: 1.0 + 0.0 * t,
    near=lambda t, z: 1.0 + 0.0 * t,
    far=lambda r, z: 1.0 + 0.0 * r,
    decay=0,
    uses_z=False,
)

INV_ONE_PLUS_T = Kernel(
    "INV_ONE_PLUS_T",
    value=lambda t, z: 1.0 / (1.0 + t),
    near=lambda t, z: 1.0 + 0.0 * t,
    far=lambda r, z: 1.0 / (1.0 + r),
    pole_order=1,
    pole=-1.0,
    decay=1,
    uses_z=False,
)


def shifted_zero_moment(eps):
    """Kernel ``1/((t + eps)(1 + t^2))``."""
    eps = float(eps)
    return Kernel(
        f"SHIFTED_ZERO_MOMENT({eps!r})",
        value=lambda t, z: 1.0 / ((t + eps) * (1.0 + t * t)),
        near=lambda t, z: 1.0 / (1.0 + t * t),
        far=lambda r, z: 1.0 / ((1.0 + eps * r) * (1.0 + r * r)),
        pole_order=1,
        pole=-eps,
        decay=3,
        uses_z=False,
    )


def _abs_sq(w):
    return w.real ** 2 + w.imag ** 2 if np.iscomplexobj(w) else w * w


# |t - z|^{-2} / |t|: the window integrand of the interior witness.
ABS_CAUCHY_SQ_OVER_T = Kernel(
    "ABS_CAUCHY_SQ_OVER_T",
    value=lambda t, z: 1.0 / (_abs_sq(np.asarray(t) - z) * np.abs(t)),
    near=lambda t, z: np.sign(t) / _abs_sq(np.asarray(t) - z),
    far=lambda r, z: 1.0 / _abs_sq(1.0 - z * np.asarray(r)),
    pole_order=1,
    decay=3,
    always_real=True,
)

BY_NAME = {
    k.name: k
    for k in (CAUCHY, HERGLOTZ, WEIGHTED_CAUCHY, INV_QUAD, ZERO_MOMENT, CAUCHY_SQ, ONE)
}


def get(kernel):
    """Resolve a kernel given by object or by name."""
    if isinstance(kernel, Kernel):
        return kernel
    try:
        return BY_NAME[str(kernel).upper()]
    except KeyError:
        raise ValueError(f"unknown kernel {kernel!r}") from None

"""Moduli of continuity: grid lower estimates and certified upper bounds.

Lower estimates are suprema over grid pairs and are therefore always valid
lower bounds.  Uppers come from metadata (exact formula or Lipschitz
constant), or for the weighted modulus from the grid value plus an explicit
discretisation and tail allowance.  Theorem checks use uppers on the
right-hand side and measured values on the left, so verdicts are never
optimistic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .errors import PreconditionError
from .functions import FuncSpec

# sup_t |d/dt 1/(1+t^2)| = 9/(8 sqrt 3) < 0.65
_RHO0_RECIP_LIPSCHITZ = 0.65


@dataclass(frozen=True)
class ModulusEstimate:
    delta: float
    lower: float
    upper: Optional[float]
    grid_points: int
    domain_max: float

    @property
    def spacing(self) -> float:
        return self.domain_max / (self.grid_points - 1)


def rho0(x):
    return 1.0 + np.asarray(x, dtype=float) ** 2


def _check(delta, domain_max, grid_points):
    if grid_points < 64:
        raise PreconditionError(f"grid_points must be >= 64, got {grid_points}")
    if not 0 < delta <= domain_max:
        raise PreconditionError(f"need 0 < delta <= domain_max, got {delta!r}, {domain_max!r}")


def _window(delta, spacing):
    # h = w * spacing must not exceed delta; the factor absorbs delta/spacing
    # landing a hair below an exact integer
    return int(math.floor(delta / spacing * (1 + 1e-12)))


def _forward_extremes(values, w):
    """Max and min of ``values[i:i+w+1]`` for every start ``i`` with a full window."""
    win = sliding_window_view(values, w + 1)
    return win.max(axis=1), win.min(axis=1)


def classical_modulus(f: FuncSpec, delta: float, domain_max: float = 20.0,
                      grid_points: int = 4096) -> ModulusEstimate:
    """Estimate ``omega(f, delta) = sup{|f(x) - f(y)| : |x - y| <= delta}``.

    The lower estimate is the largest ``max - min`` over sliding windows of
    ``w + 1`` grid points, ``w = floor(delta / spacing)``; every pair of
    points inside one window is within ``delta``.
    """
    _check(delta, domain_max, grid_points)
    xs = np.linspace(0.0, domain_max, grid_points)
    spacing = xs[1] - xs[0]
    w = _window(delta, spacing)
    vals = f.eval(xs)
    if w == 0:
        lower = 0.0
    else:
        hi, lo = _forward_extremes(vals, min(w, grid_points - 1))
        lower = float(np.max(hi - lo))
    return ModulusEstimate(delta, lower, f.modulus_upper(delta), grid_points, domain_max)


def weighted_modulus_rho0(f: FuncSpec, delta: float, domain_max: float = 50.0,
                          grid_points: int = 4096) -> ModulusEstimate:
    """Estimate the rho0-weighted modulus, ``rho0(x) = 1 + x^2``.

    ``sup |f(x+h) - f(x)| / rho0(x+h)`` over ``x, x+h >= 0`` and ``|h| <= delta``.
    Because ``h`` may be negative, for each pair ``a < b`` the larger of the
    two quotients is the one divided by ``rho0(a)``; the estimate is therefore
    ``sup_{a <= b <= a + delta} |f(b) - f(a)| / rho0(a)``.

    Left points ``a`` are sampled on ``[0, domain_max]`` and the grid extends
    past ``domain_max + delta`` so every window is complete.  The certified
    upper adds ``(3 L + 0.65 sup f) * spacing`` for discretisation and
    ``2 sup f / rho0(domain_max)`` for ``a > domain_max``, and is capped by
    the classical upper since ``rho0 >= 1``.
    """
    if not f.in_C0_rho0:
        raise PreconditionError(f"{f.id} is not registered as a member of C0_rho0")
    _check(delta, domain_max, grid_points)
    spacing = domain_max / (grid_points - 1)
    w = _window(delta, spacing)
    total = grid_points + w
    xs = np.arange(total) * spacing
    vals = f.eval(xs)
    if w == 0:
        lower = 0.0
    else:
        hi, lo = _forward_extremes(vals, w)
        base = vals[:grid_points]
        jump = np.maximum(hi[:grid_points] - base, base - lo[:grid_points])
        lower = float(np.max(jump / rho0(xs[:grid_points])))

    upper = f.modulus_upper(delta)
    if f.lipschitz is not None and f.bounded:
        grid_upper = (
            lower
            + (3 * f.lipschitz + _RHO0_RECIP_LIPSCHITZ * f.sup_bound) * spacing
            + 2 * f.sup_bound / (1 + domain_max ** 2)
        )
        upper = grid_upper if upper is None else min(upper, grid_upper)
    return ModulusEstimate(delta, lower, upper, grid_points, domain_max)


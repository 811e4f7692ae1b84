"""Closed registry of test functions ``f: [0, inf) -> [0, inf)``.

Each entry carries the metadata needed for certified work: a sup bound, a
Lipschitz constant, an exact modulus of continuity where one is known, and a
growth envelope ``f(t) <= c (1 + t)**p`` used to truncate operator scans.
The registry is compiled in on purpose; user-supplied expressions could not
carry trustworthy certificates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import DomainError, UnknownFunctionError

__all__ = [
    "FuncSpec",
    "REGISTRY",
    "get_function",
    "registered_ids",
    "phi_at",
    "max_scale_combine",
    "abs_difference",
]

# max |d/dt 1/(1+t^2)| = 9/(8 sqrt 3), attained at t = 1/sqrt(3); rounded up
BUMP_LIPSCHITZ = 0.6495191


@dataclass(frozen=True)
class FuncSpec:
    """A registered function plus its certified metadata.

    ``sup_bound`` is ``math.inf`` for unbounded functions and ``lipschitz`` is
    ``None`` when no global constant is known.  ``eval`` must accept numpy
    arrays.
    """

    id: str
    eval: Callable[[np.ndarray], np.ndarray] = field(repr=False, compare=False)
    sup_bound: float
    lipschitz: Optional[float]
    analytic_modulus: Optional[Callable[[float], float]] = field(default=None, repr=False, compare=False)
    in_C0_rho0: bool = False
    growth: tuple = (1.0, 0)

    def __call__(self, t):
        out = self.eval(np.asarray(t, dtype=float))
        return float(out) if np.ndim(out) == 0 else out

    @property
    def bounded(self) -> bool:
        return math.isfinite(self.sup_bound)

    def modulus_upper(self, delta: float) -> Optional[float]:
        """Certified upper bound on ``omega(f, delta)`` over ``[0, inf)``."""
        if self.analytic_modulus is not None:
            return float(self.analytic_modulus(delta))
        if self.lipschitz is not None:
            return self.lipschitz * delta
        return None


def _const_one(t):
    return np.ones_like(t)


def _identity(t):
    return t * 1.0


def _square(t):
    return t * t


def _ratio(t):
    return t / (1.0 + t)


def _expneg(t):
    return np.exp(-t)


def _vee1(t):
    return np.minimum(np.abs(t - 1.0), 1.0)


def _bump(t):
    return 1.0 / (1.0 + t * t)


REGISTRY = {
    spec.id: spec
    for spec in (
        FuncSpec("e0", _const_one, 1.0, 0.0, lambda d: 0.0, True, (1.0, 0)),
        FuncSpec("e1", _identity, math.inf, 1.0, lambda d: d, True, (1.0, 1)),
        FuncSpec("e2", _square, math.inf, None, None, False, (1.0, 2)),
        # sup of (x+d)/(1+x+d) - x/(1+x) is at x = 0
        FuncSpec("ratio", _ratio, 1.0, 1.0, lambda d: d / (1.0 + d), True, (1.0, 0)),
        FuncSpec("expneg", _expneg, 1.0, 1.0, lambda d: -math.expm1(-d), True, (1.0, 0)),
        FuncSpec("vee1", _vee1, 1.0, 1.0, lambda d: min(d, 1.0), True, (1.0, 0)),
        FuncSpec("bump", _bump, 1.0, BUMP_LIPSCHITZ, None, True, (1.0, 0)),
    )
}


def registered_ids():
    return list(REGISTRY)


def get_function(id: str) -> FuncSpec:
    try:
        return REGISTRY[id]
    except KeyError:
        raise UnknownFunctionError(
            f"unknown function id {id!r}; registered: {', '.join(REGISTRY)}"
        ) from None


def phi_at(x0: float) -> FuncSpec:
    """The distance function ``t -> |t - x0|``."""
    if x0 < 0:
        raise DomainError(f"x0 must be nonnegative, got {x0!r}")
    x0 = float(x0)
    return FuncSpec(
        f"phi({x0!r})",
        lambda t: np.abs(t - x0),
        math.inf,
        1.0,
        lambda d: d,
        True,
        # |t - x0| <= (1 + x0)(1 + t)
        (1.0 + x0, 1),
    )


def max_scale_combine(f: FuncSpec, g: FuncSpec, a: float, b: float) -> FuncSpec:
    """``x -> max(a f(x), b g(x))`` with propagated certificates.

    A zero coefficient drops its function entirely, so ``(f, g, 1, 0)``
    reproduces ``f`` including its exact modulus.
    """
    if a < 0 or b < 0:
        raise DomainError("scale factors must be nonnegative")
    if b == 0:
        return _scale(f, a)
    if a == 0:
        return _scale(g, b)

    def fn(t):
        return np.maximum(a * f.eval(t), b * g.eval(t))

    lip = None
    if f.lipschitz is not None and g.lipschitz is not None:
        lip = max(a * f.lipschitz, b * g.lipschitz)
    return FuncSpec(
        f"max({a!r}*{f.id},{b!r}*{g.id})",
        fn,
        max(a * f.sup_bound, b * g.sup_bound),
        lip,
        None,
        f.in_C0_rho0 and g.in_C0_rho0,
        (max(a * f.growth[0], b * g.growth[0]), max(f.growth[1], g.growth[1])),
    )


def _scale(f: FuncSpec, a: float) -> FuncSpec:
    if a == 0:
        return FuncSpec("zero", np.zeros_like, 0.0, 0.0, lambda d: 0.0, True, (0.0, 0))
    if a == 1:
        return f
    mod = f.analytic_modulus
    return FuncSpec(
        f"{a!r}*{f.id}",
        lambda t: a * f.eval(t),
        a * f.sup_bound,
        None if f.lipschitz is None else a * f.lipschitz,
        None if mod is None else (lambda d: a * mod(d)),
        f.in_C0_rho0,
        (a * f.growth[0], f.growth[1]),
    )


def abs_difference(f: FuncSpec, g: FuncSpec) -> FuncSpec:
    """``x -> |f(x) - g(x)|``; bounded by ``max(f, g)`` since both are >= 0."""
    lip = None
    if f.lipschitz is not None and g.lipschitz is not None:
        lip = f.lipschitz + g.lipschitz
    return FuncSpec(
        f"absdiff({f.id},{g.id})",
        lambda t: np.abs(f.eval(t) - g.eval(t)),
        max(f.sup_bound, g.sup_bound),
        lip,
        None,
        f.in_C0_rho0 and g.in_C0_rho0,
        (max(f.growth[0], g.growth[0]), max(f.growth[1], g.growth[1])),
    )

"""Theorem right-hand sides, hypothesis predicates and bound sweeps.

Pointwise bound (classical modulus)::

    |V_n(f)(x) - f(x)| <= (1 + 6 [x(1+x)]^(1/a)) omega(f, delta_n)

with ``delta_n = (n-1)^-(1 - 1/a)``, valid when ``x^(a-2) <= n-1``,
``n >= j^(a-1)`` (``j`` the interval index of ``x``) and ``n >= 4``.  The
weighted versions divide the error by ``(1+x^2)^2`` and use the rho0-weighted
modulus, with prefactor ``(1+9x^2)(1+6[x(1+x)]^(1/a))/(1+x^2)^2`` pointwise
and the uniform constant 70.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from ._parallel import pmap
from .errors import CertificateError, HypothesisError, PreconditionError
from .functions import FuncSpec, get_function
from .kernel import interval_index
from .moduli import weighted_modulus_rho0
from .operators import DEFAULT_TOL, eval_max_product, eval_phi_error
from .records import BoundParams, BoundRecord, ViolationReport

ENVELOPE_CONSTANT = 6.0
UNIFORM_WEIGHTED_CONSTANT = 70.0
E1_TOLERANCE = 1e-10

DEFAULT_ALPHAS = (2, 3, 4, 6, 8)
DEFAULT_NS = tuple(2 ** p for p in range(2, 11))
DEFAULT_XS = tuple(float(v) for v in np.linspace(0.0, 2.0, 33)) + (5.0, 10.0)


def delta_n(n: int, alpha: int) -> float:
    return BoundParams(alpha, n, 0.0).delta_n


def hypothesis_51(x: float, n: int, alpha: int) -> dict:
    """Concrete predicates for the pointwise theorem's hypotheses.

    ``j`` in ``n >= j^(a-1)`` is the interval index of ``x``; ``j = 0`` always
    passes.
    """
    if alpha < 2:
        raise PreconditionError(f"alpha must be >= 2, got {alpha}")
    j = interval_index(n, x) if n >= 2 else 0
    return {
        "pow_cond": x ** (alpha - 2) <= n - 1,
        "j_cond": j == 0 or n >= j ** (alpha - 1),
        "n_cond": n >= 4,
    }


def _require(flags, what):
    failed = [k for k, v in flags.items() if not v]
    if failed:
        raise HypothesisError(f"{what}: hypotheses not met ({', '.join(failed)})")


def _growth_term(x, alpha):
    return (x * (1 + x)) ** (1 / alpha)


def _envelope(x, n, alpha):
    return ENVELOPE_CONSTANT * _growth_term(x, alpha) * delta_n(n, alpha)


def envelope_rhs(x: float, n: int, alpha: int) -> float:
    """``6 [x(1+x)]^(1/a) / (n-1)^(1-1/a)``, the bound on ``E_n(x)``."""
    _require(hypothesis_51(x, n, alpha), "envelope_rhs")
    return _envelope(x, n, alpha)


def _modulus_upper(f: FuncSpec, delta):
    up = f.modulus_upper(delta)
    if up is None:
        raise CertificateError(f"{f.id} has no certified modulus upper bound")
    return up


def _rhs51(f, x, n, alpha):
    return (1 + ENVELOPE_CONSTANT * _growth_term(x, alpha)) * _modulus_upper(f, delta_n(n, alpha))


def rhs_theorem51(f: FuncSpec, x: float, n: int, alpha: int) -> float:
    _require(hypothesis_51(x, n, alpha), "rhs_theorem51")
    return _rhs51(f, x, n, alpha)


def weighted_prefactor(x, alpha):
    """``(1+9x^2)(1+6[x(1+x)]^(1/a)) / (1+x^2)^2``; vectorised over ``x``."""
    x = np.asarray(x, dtype=float)
    out = (1 + 9 * x ** 2) * (1 + ENVELOPE_CONSTANT * (x * (1 + x)) ** (1 / alpha)) / (1 + x ** 2) ** 2
    return float(out) if out.ndim == 0 else out


@lru_cache(maxsize=4096)
def _weighted_upper_cached(f, delta, domain_max, grid_points):
    est = weighted_modulus_rho0(f, delta, domain_max, grid_points)
    if est.upper is None:
        raise CertificateError(f"{f.id} has no certified weighted modulus upper bound")
    return est.upper


def weighted_modulus_upper(f: FuncSpec, delta: float, domain_max: float = 50.0,
                           grid_points: int = 4096) -> float:
    return _weighted_upper_cached(f, float(delta), float(domain_max), int(grid_points))


def _rhs61(f, x, n, alpha, domain_max, grid_points):
    return weighted_prefactor(x, alpha) * weighted_modulus_upper(f, delta_n(n, alpha), domain_max, grid_points)


def rhs_theorem61(f: FuncSpec, x: float, n: int, alpha: int, *,
                  domain_max: float = 50.0, grid_points: int = 4096) -> float:
    """Pointwise weighted right-hand side; compare against ``|V f - f| / (1+x^2)^2``."""
    if not f.in_C0_rho0:
        raise PreconditionError(f"{f.id} is not in C0_rho0")
    _require(hypothesis_51(x, n, alpha), "rhs_theorem61")
    return _rhs61(f, x, n, alpha, domain_max, grid_points)


def _require_bounded(f: FuncSpec, weighted=False):
    if not f.bounded:
        raise PreconditionError(
            f"{f.id} is unbounded; the approximation theorems assume bounded f"
        )
    if weighted and not f.in_C0_rho0:
        raise PreconditionError(f"{f.id} is not in C0_rho0")


def _sweep(xs, ns, alphas):
    return (
        tuple(DEFAULT_XS if xs is None else xs),
        tuple(DEFAULT_NS if ns is None else ns),
        tuple(DEFAULT_ALPHAS if alphas is None else alphas),
    )


def _errors_for_n(f, xs, tol):
    """``|V_n f(x) - f(x)|`` for every x; one task per n."""
    fx = f.eval(np.asarray(xs, dtype=float))

    def task(n):
        return [abs(eval_max_product(f, n, x, tol).value - float(v)) for x, v in zip(xs, fx)]
    return task


def verify_theorem51(f: FuncSpec, xs: Optional[Sequence[float]] = None,
                     ns: Optional[Sequence[int]] = None,
                     alphas: Optional[Sequence[int]] = None,
                     tol: float = DEFAULT_TOL) -> list:
    """Pointwise bound records in canonical ``(n, alpha, x)`` order."""
    _require_bounded(f)
    _modulus_upper(f, 1.0)
    xs, ns, alphas = _sweep(xs, ns, alphas)
    errors = pmap(_errors_for_n(f, xs, tol), ns)
    out = []
    for n, errs in zip(ns, errors):
        for alpha in alphas:
            for x, lhs in zip(xs, errs):
                flags = hypothesis_51(x, n, alpha)
                out.append(BoundRecord.judge(f.id, BoundParams(alpha, n, x), lhs,
                                             _rhs51(f, x, n, alpha), flags))
    return out


def verify_envelope(xs: Optional[Sequence[float]] = None,
                    ns: Optional[Sequence[int]] = None,
                    alphas: Optional[Sequence[int]] = None,
                    tol: float = DEFAULT_TOL) -> list:
    """``E_n(x)`` against ``6 [x(1+x)]^(1/a) / (n-1)^(1-1/a)``."""
    xs, ns, alphas = _sweep(xs, ns, alphas)
    values = pmap(lambda n: [eval_phi_error(n, x, tol).value if n >= 3 else math.nan
                             for x in xs], ns)
    out = []
    for n, errs in zip(ns, values):
        for alpha in alphas:
            for x, lhs in zip(xs, errs):
                flags = hypothesis_51(x, n, alpha)
                out.append(BoundRecord.judge("phi", BoundParams(alpha, n, x), lhs,
                                             _envelope(x, n, alpha), flags))
    return out


def verify_theorem61(f: FuncSpec, xs=None, ns=None, alphas=None, tol: float = DEFAULT_TOL,
                     *, domain_max: float = 50.0, grid_points: int = 4096) -> list:
    """Pointwise weighted records: ``lhs = |V f - f| / (1+x^2)^2``."""
    _require_bounded(f, weighted=True)
    xs, ns, alphas = _sweep(xs, ns, alphas)
    errors = pmap(_errors_for_n(f, xs, tol), ns)
    out = []
    for n, errs in zip(ns, errors):
        for alpha in alphas:
            for x, err in zip(xs, errs):
                lhs = err / (1 + x * x) ** 2
                rhs = _rhs61(f, x, n, alpha, domain_max, grid_points)
                out.append(BoundRecord.judge(f.id, BoundParams(alpha, n, x), lhs, rhs,
                                             hypothesis_51(x, n, alpha)))
    return out


def verify_theorem62(f: FuncSpec, xs=None, ns=None, alphas=None, tol: float = DEFAULT_TOL,
                     *, domain_max: float = 50.0, grid_points: int = 4096) -> list:
    """Uniform weighted records, one per ``(n, alpha)``.

    ``lhs`` is the sup of ``|V f - f| / (1+x^2)^2`` over the xs that satisfy
    the hypotheses; the record's ``x`` is where that sup is attained.  When no
    x qualifies the record carries the first x's flags and ``hyp_not_met``.
    """
    _require_bounded(f, weighted=True)
    xs, ns, alphas = _sweep(xs, ns, alphas)
    errors = pmap(_errors_for_n(f, xs, tol), ns)
    out = []
    for n, errs in zip(ns, errors):
        scaled = [e / (1 + x * x) ** 2 for x, e in zip(xs, errs)]
        for alpha in alphas:
            rhs = UNIFORM_WEIGHTED_CONSTANT * weighted_modulus_upper(
                f, delta_n(n, alpha), domain_max, grid_points)
            flags = [hypothesis_51(x, n, alpha) for x in xs]
            ok = [i for i, fl in enumerate(flags) if all(fl.values())]
            if ok:
                i = max(ok, key=lambda t: (scaled[t], -t))
            else:
                i = 0
            out.append(BoundRecord.judge(f.id, BoundParams(alpha, n, xs[i]),
                                         scaled[i], rhs, flags[i]))
    return out


def weighted_constant_sup(alpha: int, x_max: float = 100.0, points: int = 10_000) -> float:
    """Grid maximum of :func:`weighted_prefactor` on ``[0, x_max]``."""
    return float(np.max(weighted_prefactor(np.linspace(0.0, x_max, points), alpha)))


def check_e1_bound(ns: Sequence[int], xs: Sequence[float], tol: float = DEFAULT_TOL) -> ViolationReport:
    """Measure ``V_n(e1)(x) <= x``; informational, not a pass/fail gate."""
    e1 = get_function("e1")
    report = ViolationReport("e1_bound", E1_TOLERANCE)
    for n in ns:
        lhs = [eval_max_product(e1, n, x, tol).value for x in xs]
        report.add(lhs, xs, lambda i, n=n: (("n", n), ("x", xs[i])))
    return report


def empirical_order(series: Sequence[tuple]) -> float:
    """Least-squares slope of ``log(value)`` against ``log(n - 1)``."""
    if len(series) < 4:
        raise PreconditionError(f"need at least 4 points, got {len(series)}")
    ns = np.array([s[0] for s in series], dtype=float)
    vals = np.array([s[1] for s in series], dtype=float)
    if np.any(vals <= 0) or np.any(ns <= 1):
        raise PreconditionError("order estimation needs values > 0 and n > 1")
    slope, _ = np.polyfit(np.log(ns - 1), np.log(vals), 1)
    return float(slope)


def phi_error_series(x: float, ns: Sequence[int], tol: float = DEFAULT_TOL) -> list:
    return [(n, eval_phi_error(n, x, tol).value) for n in ns]

"""Max-product and classical Baskakov operators with certified truncation.

Both scans use the growth envelope ``f(t) <= c (1 + t)**p`` from the
function's metadata.  Past the point where the weights start to decay, the
envelope terms ``b_{n,k}(x) c (1 + k/n)**p`` form a sequence whose
consecutive ratio ``q_k`` is a product of two factors that are both
decreasing in ``k``; once ``q_K < 1`` every later term is bounded by the
envelope at ``K``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NonCertifiedError, PreconditionError
from .functions import FuncSpec, phi_at
from .kernel import interval_index, log_ratio_run, log_weight_array, weight_decay_start

DEFAULT_TOL = 1e-12
MAX_TERMS = 1 << 24


@dataclass(frozen=True)
class EvalResult:
    value: float
    argmax_k: int
    terms_examined: int
    tail_bound: float
    certified: bool


def _envelope_ratio(n, k, x, p):
    """Upper bound on term_{k+1}/term_k of the envelope sequence at ``k``."""
    r = (n + k) * x / ((k + 1) * (1 + x))
    return r * ((n + k + 1) / (n + k)) ** p


def _check_common(f, n, x, n_min):
    if n < n_min:
        raise PreconditionError(f"n must be >= {n_min}, got {n}")
    if x < 0 or math.isnan(x):
        raise DomainError(f"x must be nonnegative, got {x!r}")
    if f.growth is None:
        raise NonCertifiedError(f"{f.id} has no growth envelope")


def _nonneg(vals, f):
    if np.any(vals < 0):
        raise PreconditionError(f"{f.id} takes negative values; operators need f >= 0")
    return vals


def eval_max_product(f: FuncSpec, n: int, x: float, tol: float = DEFAULT_TOL,
                     *, min_terms: int = 0, max_terms: int = MAX_TERMS) -> EvalResult:
    """Max-product Baskakov operator ``V_n^(M)(f)(x)``.

    Evaluated as ``max_k m_{k,n,j}(x) f(k/n) / max_k m_{k,n,j}(x)``; dividing by
    the scanned maximum (rather than assuming it equals 1) keeps
    ``V(e0) == 1`` exact.  The scan stops once the envelope bound on every
    omitted term is at most ``tol`` times the running maximum, so the
    reported value is the exact maximum of the infinite family.
    """
    _check_common(f, n, x, 2)
    if not 0 < tol <= 1e-3:
        raise PreconditionError(f"tol must lie in (0, 1e-3], got {tol!r}")
    if x == 0:
        # only k = 0 carries weight at the origin
        return EvalResult(float(_nonneg(f.eval(np.zeros(1)), f)[0]), 0, 1, 0.0, True)

    c, p = f.growth
    j = interval_index(n, x)
    kstar = weight_decay_start(n, x)
    K = max(min_terms, kstar + 1, j + 1, 32)
    while True:
        logm = log_ratio_run(n, j, x, K)
        m = np.exp(logm[:K])
        vals = _nonneg(f.eval(np.arange(K) / n), f)
        terms = m * vals
        i = int(np.argmax(terms))
        best = float(terms[i])
        envelope = math.exp(logm[K]) * c * (1 + K / n) ** p
        if K > kstar and _envelope_ratio(n, K, x, p) < 1 and envelope <= tol * best:
            norm = float(m.max())
            return EvalResult(best / norm, i, K, envelope / norm, True)
        if K >= max_terms:
            raise NonCertifiedError(
                f"{f.id}: no certificate within {max_terms} terms at n={n}, x={x!r}"
            )
        K = min(2 * K, max_terms)


def eval_phi_error(n: int, x: float, tol: float = DEFAULT_TOL) -> EvalResult:
    """``E_n(x) = V_n^(M)(|. - x|)(x)``, the max-product error for the distance."""
    if n < 3:
        raise PreconditionError(f"n must be >= 3, got {n}")
    return eval_max_product(phi_at(x), n, x, tol)


def eval_classical(f: FuncSpec, n: int, x: float, tol: float = DEFAULT_TOL,
                   *, max_terms: int = MAX_TERMS) -> EvalResult:
    """Classical Baskakov operator ``V_n(f)(x) = sum_k b_{n,k}(x) f(k/n)``.

    Truncated at ``K`` once the geometric tail ``T_K / (1 - q_K)`` of the
    envelope falls below ``tol`` times the partial sum.  ``argmax_k`` reports
    the index of the largest summand.
    """
    _check_common(f, n, x, 1)
    if not 0 < tol <= 1e-3:
        raise PreconditionError(f"tol must lie in (0, 1e-3], got {tol!r}")
    if x == 0:
        return EvalResult(float(_nonneg(f.eval(np.zeros(1)), f)[0]), 0, 1, 0.0, True)

    c, p = f.growth
    kstar = weight_decay_start(n, x)
    K = max(kstar + 1, 64)
    while True:
        logb = log_weight_array(n, np.arange(K + 1), x)
        terms = np.exp(logb[:K]) * _nonneg(f.eval(np.arange(K) / n), f)
        total = math.fsum(terms)
        q = _envelope_ratio(n, K, x, p)
        if q < 1:
            tail = math.exp(logb[K]) * c * (1 + K / n) ** p / (1 - q)
            if tail <= tol * max(total, 1e-300):
                return EvalResult(total, int(np.argmax(terms)), K, tail, True)
        if K >= max_terms:
            raise NonCertifiedError(
                f"{f.id}: classical sum not certified within {max_terms} terms"
            )
        K = min(2 * K, max_terms)

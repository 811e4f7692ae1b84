"""Baskakov basis weights in log space.

The basis is ``b_{n,k}(x) = C(n+k-1, k) x^k / (1+x)^(n+k)``.  The binomial
overflows doubles once ``n + k`` passes ~170, so every weight, ratio and
comparison here lives in the log domain.  The scalar helpers use log-gamma;
:func:`log_ratio_run` is the vectorised path used by the operator scans and
builds ratios from consecutive-term quotients, which keeps the error near
``k = j`` at a few ulp even for very large ``n + k``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np
from scipy.special import gammaln

from .errors import DomainError, PreconditionError

MTermKind = Literal["plain", "upper_bar", "lower_bar"]
M_TERM_KINDS = ("plain", "upper_bar", "lower_bar")

# x-membership slack for caller-supplied intervals
_INTERVAL_SLACK = 1e-12


@dataclass(frozen=True)
class LogWeight:
    """A nonnegative weight stored as its logarithm (``-inf`` encodes 0)."""

    log_value: float

    @property
    def value(self) -> float:
        return math.exp(self.log_value)

    @classmethod
    def from_value(cls, w: float) -> "LogWeight":
        if w < 0:
            raise DomainError(f"weights are nonnegative, got {w!r}")
        return cls(-math.inf if w == 0 else math.log(w))

    def __float__(self):
        return self.value


@dataclass(frozen=True)
class KernelParams:
    n: int
    k: int
    j: int
    x: float


@dataclass(frozen=True)
class MTerm:
    kind: str
    value: float


def _check_x(x):
    if x < 0 or math.isnan(x):
        raise DomainError(f"x must be nonnegative, got {x!r}")


def log_binom(n, k):
    """``log C(n+k-1, k)`` via log-gamma; broadcasts over arrays."""
    return gammaln(n + k) - gammaln(k + 1) - gammaln(n)


def log_weight_array(n: int, ks, x: float) -> np.ndarray:
    """Vectorised ``log b_{n,k}(x)`` for an array of ``k``."""
    _check_x(x)
    ks = np.asarray(ks, dtype=float)
    if x == 0:
        return np.where(ks == 0, 0.0, -np.inf)
    return log_binom(n, ks) + ks * math.log(x) - (n + ks) * math.log1p(x)


def log_basis_weight(n: int, k: int, x: float) -> LogWeight:
    """Return ``b_{n,k}(x)`` as a :class:`LogWeight`.

    >>> round(log_basis_weight(3, 1, 1.0).value, 15)
    0.1875
    """
    if n < 1:
        raise PreconditionError(f"n must be >= 1, got {n}")
    if k < 0:
        raise PreconditionError(f"k must be >= 0, got {k}")
    _check_x(x)
    return LogWeight(float(log_weight_array(n, k, x)))


def interval_index(n: int, x: float) -> int:
    """Index ``j`` with ``x`` in ``[j/(n-1), (j+1)/(n-1)]``.

    Shared endpoints resolve to ``floor((n-1) x)``; both neighbouring weights
    tie there so either index is a valid maximiser.
    """
    if n < 2:
        raise PreconditionError(f"n must be >= 2, got {n}")
    _check_x(x)
    return int(math.floor((n - 1) * x))


def weight_decay_start(n: int, x: float) -> int:
    """Smallest ``k*`` with ``b_{n,k+1}(x) < b_{n,k}(x)`` for every ``k >= k*``.

    The consecutive ratio is ``(n+k) x / ((k+1)(1+x))``, below one exactly
    when ``k > (n-1) x - 1``.
    """
    if not x > 0:
        raise DomainError(f"x must be positive, got {x!r}")
    k = max(0, math.floor((n - 1) * x - 1) + 1)
    # guard against rounding in the closed form
    while (n + k) * x >= (k + 1) * (1 + x):
        k += 1
    while k > 0 and (n + k - 1) * x < k * (1 + x):
        k -= 1
    return k


def _check_ratio_args(n, j, x):
    if n < 2:
        raise PreconditionError(f"n must be >= 2, got {n}")
    if j < 0:
        raise PreconditionError(f"j must be >= 0, got {j}")
    _check_x(x)
    if x == 0 and j != 0:
        raise PreconditionError("at x = 0 only j = 0 is meaningful")


def log_ratio_array(n: int, ks, j: int, x: float) -> np.ndarray:
    """``log m_{k,n,j}(x)`` for an array of ``k`` via log-gamma differences."""
    _check_ratio_args(n, j, x)
    ks = np.asarray(ks, dtype=float)
    if x == 0:
        return np.where(ks == 0, 0.0, -np.inf)
    out = (gammaln(n + ks) - gammaln(ks + 1)) - (gammaln(n + j) - gammaln(j + 1))
    out = out + (ks - j) * (math.log(x) - math.log1p(x))
    return np.where(ks == j, 0.0, out)


def weight_ratio_m(n: int, k, j: int, x: float):
    """``m_{k,n,j}(x) = b_{n,k}(x) / b_{n,j}(x)``.

    At ``x = 0`` the convention ``m_{0,n,0} = 1`` and ``m_{k,n,0} = 0`` for
    ``k >= 1`` applies.  Accepts scalar or array ``k``.
    """
    out = np.exp(log_ratio_array(n, k, j, x))
    return float(out) if np.ndim(out) == 0 else out


def log_ratio_run(n: int, j: int, x: float, k_max: int) -> np.ndarray:
    """``log m_{k,n,j}(x)`` for ``k = 0..k_max`` built outward from ``k = j``.

    Uses ``log(b_{k+1}/b_k) = log1p(((n-1)x - 1 - k) / ((k+1)(1+x)))`` and
    one-sided cumulative sums, so the terms that matter (near the peak) carry
    only a few ulp of error regardless of how large ``n + k`` is.
    """
    _check_ratio_args(n, j, x)
    if x == 0:
        out = np.full(k_max + 1, -np.inf)
        out[0] = 0.0
        return out
    i = np.arange(k_max + 1, dtype=float)
    arg = ((n - 1) * x - 1.0 - i) / ((i + 1.0) * (1.0 + x))
    # near -1 the log1p argument has cancelled; take the ratio's log directly
    direct = np.log(n + i) + math.log(x) - np.log(i + 1.0) - math.log1p(x)
    step = np.where(arg < -0.5, direct, np.log1p(np.maximum(arg, -0.5)))
    out = np.empty(k_max + 1)
    out[j] = 0.0
    if k_max > j:
        out[j + 1:] = np.cumsum(step[j:k_max])
    if j > 0:
        out[:j] = -np.cumsum(step[j - 1::-1])[::-1]
    return out


def _m_factor(kind, n, ks, x):
    if kind == "plain":
        return np.abs(ks / n - x)
    if kind == "upper_bar":
        return ks / (n - 1) - x
    if kind == "lower_bar":
        return x - ks / (n - 1)
    raise PreconditionError(f"unknown m-term kind {kind!r}; expected one of {M_TERM_KINDS}")


def m_term_array(kind: str, n: int, ks, j: int, x: float) -> np.ndarray:
    """Vectorised m-term values with no side-condition checks (sweep use)."""
    ks = np.asarray(ks, dtype=float)
    return weight_ratio_m(n, ks, j, x) * _m_factor(kind, n, ks, x)


def m_term(kind: MTermKind, n: int, k: int, j: int, x: float) -> MTerm:
    """One of ``M``, ``M-bar`` or ``M-underbar`` at ``(k, n, j, x)``.

    ``plain`` is ``m |k/n - x|``; ``upper_bar`` is ``m (k/(n-1) - x)`` and
    needs ``k >= n(j+1)/(n-1)``; ``lower_bar`` is ``m (x - k/(n-1))`` and needs
    ``k <= n j/(n+1)``.  Side conditions are compared in integers.
    """
    if kind not in M_TERM_KINDS:
        raise PreconditionError(f"unknown m-term kind {kind!r}; expected one of {M_TERM_KINDS}")
    if n < 3:
        raise PreconditionError(f"m-terms need n >= 3, got {n}")
    if k < 0 or j < 0:
        raise PreconditionError("k and j must be nonnegative")
    _check_x(x)
    lo, hi = j / (n - 1), (j + 1) / (n - 1)
    if not (lo - _INTERVAL_SLACK <= x <= hi + _INTERVAL_SLACK):
        raise PreconditionError(f"x={x!r} outside interval j={j}: [{lo!r}, {hi!r}]")
    if kind == "upper_bar" and k * (n - 1) < n * (j + 1):
        raise PreconditionError(f"upper_bar needs k >= n(j+1)/(n-1); got k={k}, n={n}, j={j}")
    if kind == "lower_bar" and k * (n + 1) > n * j:
        raise PreconditionError(f"lower_bar needs k <= n j/(n+1); got k={k}, n={n}, j={j}")
    return MTerm(kind, float(m_term_array(kind, n, k, j, x)))

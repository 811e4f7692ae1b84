"""Independent reference computations for the test suite.

Nothing here touches the package's log-gamma or log1p paths: weights come
from exact integer binomials and either rational arithmetic or mpmath at 40
digits.
"""

import math
from fractions import Fraction

from mpmath import mp, mpf

mp.dps = 40


def exact_ratio_m(n, k, j, x):
    """m_{k,n,j}(x) as an exact Fraction (x converted exactly from float)."""
    x = Fraction(x)
    return Fraction(math.comb(n + k - 1, k), math.comb(n + j - 1, j)) * (x / (1 + x)) ** (k - j)


def mp_ratio_m(n, k, j, x):
    x = mpf(x)
    return mpf(math.comb(n + k - 1, k)) / math.comb(n + j - 1, j) * (x / (1 + x)) ** (k - j)


def brute_max_product(fn, n, x, k_max=500):
    """max_k m_{k,n,j}(x) fn(k/n) / max_k m_{k,n,j}(x) over k <= k_max, in mpmath.

    ``fn`` receives an mpf and must return an mpf.
    """
    j = int(math.floor((n - 1) * x))
    xm = mpf(x)
    q = xm / (1 + xm)
    best_t, best_m = mpf(0), mpf(0)
    for k in range(k_max + 1):
        m = mpf(math.comb(n + k - 1, k)) / math.comb(n + j - 1, j) * q ** (k - j)
        best_m = max(best_m, m)
        best_t = max(best_t, m * fn(mpf(k) / n))
    return best_t / best_m


def brute_phi_error(n, x, k_max=500):
    xm = mpf(x)
    return brute_max_product(lambda t: abs(t - xm), n, x, k_max)


def brute_argmax_weight(n, x, k_max):
    """argmax_k b_{n,k}(x) in mpmath."""
    xm = mpf(x)
    best, arg = mpf(-1), -1
    for k in range(k_max + 1):
        b = mpf(math.comb(n + k - 1, k)) * xm ** k / (1 + xm) ** (n + k)
        if b > best:
            best, arg = b, k
    return arg


def brute_classical(fn, n, x, k_max):
    xm = mpf(x)
    return sum(mpf(math.comb(n + k - 1, k)) * xm ** k / (1 + xm) ** (n + k) * fn(mpf(k) / n)
               for k in range(k_max + 1))

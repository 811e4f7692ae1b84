"""Exhaustive numerical checks of the kernel lemmas and operator algebra.

Every check returns :class:`~maxprod.records.ViolationReport` objects whose
cases are visited in a fixed lexicographic order, so repeated runs produce
identical reports.  Integer side conditions are enumerated with Python ints
and never pass through floating point.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .functions import REGISTRY, abs_difference, get_function, max_scale_combine
from .kernel import log_weight_array, m_term_array, weight_decay_start, weight_ratio_m
from .operators import DEFAULT_TOL, eval_max_product
from .records import ViolationReport

KERNEL_TOL = 1e-12
ALGEBRA_TOL = 1e-10
ARGMAX_EXTRA = 200
SCALES = (0.0, 0.5, 1.0, 2.0)
HOMOGENEITY_FACTORS = (0.0, 0.25, 3.0)

SUITES = ("4.1", "4.2", "4.3", "4.4", "algebra")


def interior_samples(n, j, count):
    """``count`` equally spaced interior points of ``[j/(n-1), (j+1)/(n-1)]``."""
    return [(j + (i + 1) / (count + 1)) / (n - 1) for i in range(count)]


def check_lemma41(n_max: int = 64, j_max: int = 50, samples: int = 5) -> ViolationReport:
    """Brute-force argmax of ``log b_{n,k}(x)`` equals the interval index."""
    report = ViolationReport("lemma4.1", KERNEL_TOL)
    for n in range(2, n_max + 1):
        for j in range(j_max + 1):
            xs = interior_samples(n, j, samples)
            k_hi = weight_decay_start(n, xs[-1]) + ARGMAX_EXTRA
            ks = np.arange(k_hi + 1)
            logw = np.array([log_weight_array(n, ks, x) for x in xs])
            best = logw.max(axis=1)
            arg = logw.argmax(axis=1)
            report.add(best, logw[:, j],
                       lambda i, n=n, j=j, xs=xs, arg=arg: (("n", n), ("j", j), ("x", xs[i]), ("argmax", int(arg[i]))))
    return report


def check_lemma42(n_max: int = 40, j_max: int = 40, samples: int = 5) -> ViolationReport:
    """``m_{k,n,j}(x) <= 1`` for ``k`` in ``[0, j + 4n]``, plus the ``x = 0`` column."""
    report = ViolationReport("lemma4.2", KERNEL_TOL)
    for n in range(2, n_max + 1):
        for j in range(j_max + 1):
            ks = np.arange(j + 4 * n + 1)
            xs = ([0.0] if j == 0 else []) + interior_samples(n, j, samples)
            for x in xs:
                m = weight_ratio_m(n, ks, j, x)
                report.add(m, 1.0, lambda i, n=n, j=j, x=x: (("n", n), ("j", j), ("k", i), ("x", x)))
    return report


def _m_terms(n, ks, j, x):
    return {kind: m_term_array(kind, n, ks, j, x) for kind in ("plain", "upper_bar", "lower_bar")}


def check_lemma43(n_max: int = 20, j_max: int = 30, samples: int = 5) -> list:
    """Comparisons between ``M``, ``M-bar`` and ``M-underbar`` on their regions."""
    r1 = ViolationReport("lemma4.3(i)", KERNEL_TOL)
    r2 = ViolationReport("lemma4.3(ii)", KERNEL_TOL)
    r3 = ViolationReport("lemma4.3(iii)", KERNEL_TOL)
    for n in range(3, n_max + 1):
        for j in range(j_max + 1):
            ks = np.arange(j + 4 * n + 1)
            reg1 = ks[ks * (n - 1) >= n * (j + 1)]
            reg2 = ks[ks * (n - 2) >= n * (j + 1)]
            reg3 = ks[ks * (n + 1) <= n * j]
            for x in interior_samples(n, j, samples):
                t = _m_terms(n, ks, j, x)

                def params(region, side=None, n=n, j=j, x=x):
                    extra = () if side is None else (("side", side),)
                    return lambda i: (("n", n), ("j", j), ("k", int(region[i])), ("x", x)) + extra

                r1.add(t["plain"][reg1], t["upper_bar"][reg1], params(reg1))
                r2.add(t["upper_bar"][reg2], 2 * t["plain"][reg2], params(reg2))
                r3.add(t["lower_bar"][reg3], t["plain"][reg3], params(reg3, "lower"))
                r3.add(t["plain"][reg3], 2 * t["lower_bar"][reg3], params(reg3, "upper"))
    return [r1, r2, r3]


def ineq31_ratio(n: int, j: int, k: int) -> Fraction:
    """Exact ``(k+1)/(n+k) * (n+j)/(j+1) * (k-j-1)/(k-j)``."""
    return Fraction((k + 1) * (n + j) * (k - j - 1), (n + k) * (j + 1) * (k - j))


def ineq32_ratio(n: int, j: int, k: int) -> Fraction:
    """Exact ``(n+k-1)/k * j/(n+j-1) * (j-k)/(j-k+1)``."""
    return Fraction((n + k - 1) * j * (j - k), k * (n + j - 1) * (j - k + 1))


def lemma44_upper_tuples(n: int, j: int, alpha: int, k_cap: int):
    """Integer ``k`` with ``k(n-1) >= n(j+1)`` and ``(k-j)^a (n-1) >= (n+j)(k+1)``."""
    k0 = -(-n * (j + 1) // (n - 1))
    return [k for k in range(k0, k_cap + 1)
            if (k - j) ** alpha * (n - 1) >= (n + j) * (k + 1)]


def lemma44_lower_tuples(n: int, j: int, alpha: int):
    """Integer ``1 <= k <= j`` with ``k(n+1) <= n j`` and ``(j-k)^a (n-1) >= k(n+j-1)``."""
    return [k for k in range(1, j + 1)
            if k * (n + 1) <= n * j and (j - k) ** alpha * (n - 1) >= k * (n + j - 1)]


def check_lemma44(n_max: int = 16, j_max: int = 20, alpha_max: int = 5, samples: int = 3) -> list:
    """Monotonicity of ``M-bar`` / ``M-underbar`` and inequalities (3.1), (3.2).

    The monotonicity parts are checked at ``samples`` interior points of each
    interval; the two ratio inequalities are evaluated exactly with
    :class:`fractions.Fraction` and reported as ``1 - ratio`` (a positive
    slack is a violation).
    """
    r_up = ViolationReport("lemma4.4(i)", KERNEL_TOL)
    r_lo = ViolationReport("lemma4.4(ii)", KERNEL_TOL)
    r31 = ViolationReport("ineq(3.1)", 0.0)
    r32 = ViolationReport("ineq(3.2)", 0.0)
    for n in range(3, n_max + 1):
        for j in range(j_max + 1):
            xs = interior_samples(n, j, samples)
            for alpha in range(2, alpha_max + 1):
                up = lemma44_upper_tuples(n, j, alpha, j + 4 * n)
                lo = lemma44_lower_tuples(n, j, alpha)
                if up:
                    ks = np.array(up)
                    for x in xs:
                        cur = m_term_array("upper_bar", n, ks, j, x)
                        nxt = m_term_array("upper_bar", n, ks + 1, j, x)
                        r_up.add(nxt, cur, lambda i, n=n, j=j, a=alpha, x=x, ks=up:
                                 (("n", n), ("j", j), ("k", ks[i]), ("alpha", a), ("x", x)))
                    exact = [ineq31_ratio(n, j, k) for k in up]
                    r31.add([float(1 - q) for q in exact], 0.0,
                            lambda i, n=n, j=j, a=alpha, ks=up: (("n", n), ("j", j), ("k", ks[i]), ("alpha", a)))
                if lo:
                    ks = np.array(lo)
                    for x in xs:
                        cur = m_term_array("lower_bar", n, ks, j, x)
                        prev = m_term_array("lower_bar", n, ks - 1, j, x)
                        r_lo.add(prev, cur, lambda i, n=n, j=j, a=alpha, x=x, ks=lo:
                                 (("n", n), ("j", j), ("k", ks[i]), ("alpha", a), ("x", x)))
                    exact = [ineq32_ratio(n, j, k) for k in lo]
                    r32.add([float(1 - q) for q in exact], 0.0,
                            lambda i, n=n, j=j, a=alpha, ks=lo: (("n", n), ("j", j), ("k", ks[i]), ("alpha", a)))
    return [r_up, r_lo, r31, r32]


def _rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


def check_algebra(n_list=tuple(range(3, 33)), x_samples: int = 20, pair_count: int = 16,
                  seed: int = 42, tol: float = DEFAULT_TOL) -> list:
    """Operator-algebra identities on seeded random registry pairs.

    Per pair the scale factors ``a, b`` and the homogeneity factor are drawn
    once from fixed menus; ``x`` is drawn uniformly from ``(0, 3)``.
    Monotonicity is exercised on ``f <= max(f, g)``.
    """
    rng = np.random.default_rng(seed)
    ids = sorted(REGISTRY)
    xs = np.sort(rng.uniform(0.0, 3.0, x_samples))
    xs = [float(x) for x in xs if x > 0]
    pseudo = ViolationReport("algebra.pseudo_linearity", ALGEBRA_TOL)
    mono = ViolationReport("algebra.monotonicity", ALGEBRA_TOL)
    contr = ViolationReport("algebra.contraction", ALGEBRA_TOL)
    homog = ViolationReport("algebra.homogeneity", ALGEBRA_TOL)
    unit = ViolationReport("algebra.e0", ALGEBRA_TOL)
    origin = ViolationReport("algebra.origin", ALGEBRA_TOL)

    e0 = get_function("e0")
    for p in range(pair_count):
        f = get_function(ids[rng.integers(len(ids))])
        g = get_function(ids[rng.integers(len(ids))])
        a = float(SCALES[rng.integers(len(SCALES))])
        b = float(SCALES[rng.integers(len(SCALES))])
        lam = float(HOMOGENEITY_FACTORS[rng.integers(len(HOMOGENEITY_FACTORS))])
        comb = max_scale_combine(f, g, a, b)
        upper = max_scale_combine(f, g, 1.0, 1.0)
        diff = abs_difference(f, g)
        scaled = max_scale_combine(f, f, lam, 0.0)
        for n in n_list:
            for x in xs:
                def params(i=0, n=n, x=x):
                    return (("f", f.id), ("g", g.id), ("a", a), ("b", b), ("lambda", lam), ("n", n), ("x", x))

                vf = eval_max_product(f, n, x, tol).value
                vg = eval_max_product(g, n, x, tol).value
                pseudo.add(_rel(eval_max_product(comb, n, x, tol).value, max(a * vf, b * vg)), 0.0, params)
                mono.add(vf, eval_max_product(upper, n, x, tol).value, params)
                contr.add(abs(vf - vg), eval_max_product(diff, n, x, tol).value, params)
                homog.add(_rel(eval_max_product(scaled, n, x, tol).value, lam * vf), 0.0, params)
                if p == 0:
                    unit.add(abs(eval_max_product(e0, n, x, tol).value - 1.0), 0.0,
                             lambda i, n=n, x=x: (("n", n), ("x", x)))
            for h in (f, g):
                origin.add(abs(eval_max_product(h, n, 0.0, tol).value - float(h(0.0))), 0.0,
                           lambda i, n=n, h=h: (("f", h.id), ("n", n)))
    return [pseudo, mono, contr, homog, unit, origin]


def run_suite(suite: str, seed: int = 42) -> list:
    """Default-sweep reports for one suite id or ``"all"``."""
    if suite == "all":
        return [r for s in SUITES for r in run_suite(s, seed)]
    if suite == "4.1":
        return [check_lemma41()]
    if suite == "4.2":
        return [check_lemma42()]
    if suite == "4.3":
        return check_lemma43()
    if suite == "4.4":
        return check_lemma44()
    if suite == "algebra":
        return check_algebra(seed=seed)
    raise ValueError(f"unknown suite {suite!r}; expected one of {SUITES + ('all',)}")

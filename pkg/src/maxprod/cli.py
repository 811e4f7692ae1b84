"""Command-line front end.

Exit codes: 0 success, 1 a fail verdict or violation, 2 usage/config error,
3 filesystem error.  Reports go to ``--out`` or stdout.  ``MAXPROD_THREADS``
caps the sweep worker count.  All options are flags; there is no config file.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import bounds, lemmas
from .errors import MaxProdError
from .functions import REGISTRY, get_function, phi_at
from .moduli import classical_modulus, weighted_modulus_rho0
from .operators import DEFAULT_TOL, eval_classical, eval_max_product
from .records import serialize_bounds, serialize_reports, to_csv, to_json

COMMANDS = ("eval", "modulus", "envelope", "verify-lemmas", "verify-bounds", "order", "info")
EVAL_COLUMNS = ("func", "operator", "n", "x", "value", "argmax_k", "terms_examined",
                "tail_bound", "certified")
MODULUS_COLUMNS = ("func", "kind", "delta", "lower", "upper", "grid_points", "domain_max")
ORDER_COLUMNS = ("x", "n_min", "n_max", "points", "slope", "max_slope", "verdict")
SERIES_COLUMNS = ("x", "n", "value")
INFO_COLUMNS = ("id", "sup_bound", "lipschitz", "analytic_modulus", "in_C0_rho0",
                "growth_c", "growth_p")


@dataclass
class RunConfig:
    command: str
    func_id: str = "ratio"
    n: Optional[list] = None
    n_min: int = 4
    n_max: int = 1024
    x: Optional[list] = None
    x_grid: Optional[list] = None
    alpha_list: list = field(default_factory=lambda: list(bounds.DEFAULT_ALPHAS))
    tol: float = DEFAULT_TOL
    domain_max: Optional[float] = None
    grid_points: int = 4096
    format: str = "csv"
    out_path: Optional[str] = None
    seed: int = 42
    suite: str = "all"
    theorem: str = "5.1"
    delta: float = 0.1
    weighted: bool = False
    classical: bool = False
    max_slope: Optional[float] = None
    series: bool = False

    def ns(self):
        if self.n:
            return list(self.n)
        out, p = [], 1
        while p <= self.n_max:
            if p >= self.n_min:
                out.append(p)
            p *= 2
        return out

    def xs(self):
        if self.x_grid is not None:
            return list(self.x_grid)
        if self.x is not None:
            return list(self.x)
        return None


def parse_grid(text: str) -> list:
    """``start:stop:count`` (inclusive linspace) or a comma-separated list."""
    try:
        if ":" in text:
            start, stop, count = text.split(":")
            return [float(v) for v in np.linspace(float(start), float(stop), int(count))]
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}; use start:stop:count or a,b,c")


def _int_list(text):
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", dest="out_path", help="output file (default stdout)")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL)

    sweep = argparse.ArgumentParser(add_help=False)
    sweep.add_argument("--n", type=_int_list, help="explicit n list, e.g. 4,8,16")
    sweep.add_argument("--n-min", type=int, default=4)
    sweep.add_argument("--n-max", type=int, default=1024)
    sweep.add_argument("--x-grid", type=parse_grid, help="start:stop:count or a,b,c")
    sweep.add_argument("--alpha", dest="alpha_list", type=_int_list,
                       default=list(bounds.DEFAULT_ALPHAS))

    parser = argparse.ArgumentParser(
        prog="maxprod",
        description="Max-product Baskakov operator: evaluation and bound verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate the operator")
    p.add_argument("--f", dest="func_id", default="ratio",
                   help="registry id, or 'phi' for |t - x|")
    p.add_argument("--n", type=_int_list, required=True)
    p.add_argument("--x", type=parse_grid, required=True)
    p.add_argument("--classical", action="store_true", help="sum-form operator instead")

    p = sub.add_parser("modulus", parents=[common], help="estimate a modulus of continuity")
    p.add_argument("--f", dest="func_id", default="ratio")
    p.add_argument("--delta", type=float, default=0.1)
    p.add_argument("--weighted", action="store_true", help="rho0 = 1 + x^2 weighted modulus")
    p.add_argument("--domain-max", type=float)
    p.add_argument("--grid-points", type=int, default=4096)

    sub.add_parser("envelope", parents=[common, sweep], help="E_n(x) against its envelope")

    p = sub.add_parser("verify-lemmas", parents=[common], help="lemma verification suites")
    p.add_argument("--suite", choices=lemmas.SUITES + ("all",), default="all")
    p.add_argument("--seed", type=int, default=42)

    p = sub.add_parser("verify-bounds", parents=[common, sweep], help="theorem bound sweeps")
    p.add_argument("--theorem", choices=("5.1", "6.1", "6.2"), default="5.1")
    p.add_argument("--f", dest="func_id", default="ratio")
    p.add_argument("--domain-max", type=float)
    p.add_argument("--grid-points", type=int, default=4096)

    p = sub.add_parser("order", parents=[common], help="empirical order of E_n(x)")
    p.add_argument("--x", type=parse_grid, default=[0.6])
    p.add_argument("--n", type=_int_list)
    p.add_argument("--n-min", type=int, default=8)
    p.add_argument("--n-max", type=int, default=1024)
    p.add_argument("--max-slope", type=float, help="fail when the slope exceeds this")
    p.add_argument("--series", action="store_true", help="emit the (n, E_n) series instead")

    sub.add_parser("info", parents=[common], help="list registered functions")
    return parser


def _resolve(func_id, x=None):
    if func_id == "phi":
        if x is None:
            raise MaxProdError("'phi' is only available for eval, where x fixes the centre")
        return phi_at(x)
    return get_function(func_id)


def _render(rows, columns, fmt):
    return to_json(rows) if fmt == "json" else to_csv(rows, columns)


def _run_eval(cfg):
    rows = []
    op = eval_classical if cfg.classical else eval_max_product
    for n in cfg.ns():
        for x in cfg.xs():
            f = _resolve(cfg.func_id, x)
            r = op(f, n, x, cfg.tol)
            rows.append({"func": cfg.func_id, "operator": "classical" if cfg.classical else "max_product",
                         "n": n, "x": x, "value": r.value, "argmax_k": r.argmax_k,
                         "terms_examined": r.terms_examined, "tail_bound": r.tail_bound,
                         "certified": r.certified})
    return _render(rows, EVAL_COLUMNS, cfg.format), 0


def _run_modulus(cfg):
    f = get_function(cfg.func_id)
    if cfg.weighted:
        est = weighted_modulus_rho0(f, cfg.delta, cfg.domain_max or 50.0, cfg.grid_points)
    else:
        est = classical_modulus(f, cfg.delta, cfg.domain_max or 20.0, cfg.grid_points)
    row = {"func": f.id, "kind": "weighted_rho0" if cfg.weighted else "classical",
           "delta": est.delta, "lower": est.lower,
           "upper": "none" if est.upper is None else est.upper,
           "grid_points": est.grid_points, "domain_max": est.domain_max}
    return _render([row], MODULUS_COLUMNS, cfg.format), 0


def _bound_exit(records):
    return 1 if any(r.verdict == "fail" for r in records) else 0


def _run_envelope(cfg):
    recs = bounds.verify_envelope(cfg.xs(), cfg.ns(), cfg.alpha_list, cfg.tol)
    return serialize_bounds(recs, cfg.format), _bound_exit(recs)


def _run_verify_bounds(cfg):
    f = get_function(cfg.func_id)
    args = (f, cfg.xs(), cfg.ns(), cfg.alpha_list, cfg.tol)
    grid = {"domain_max": cfg.domain_max or 50.0, "grid_points": cfg.grid_points}
    if cfg.theorem == "5.1":
        recs = bounds.verify_theorem51(*args)
    elif cfg.theorem == "6.1":
        recs = bounds.verify_theorem61(*args, **grid)
    else:
        recs = bounds.verify_theorem62(*args, **grid)
    return serialize_bounds(recs, cfg.format), _bound_exit(recs)


def _run_verify_lemmas(cfg):
    reports = lemmas.run_suite(cfg.suite, cfg.seed)
    code = 1 if any(r.violations for r in reports) else 0
    return serialize_reports(reports, cfg.format), code


def _run_order(cfg):
    ns = cfg.ns()
    rows, series_rows, code = [], [], 0
    for x in cfg.xs():
        series = bounds.phi_error_series(x, ns, cfg.tol)
        series_rows += [{"x": x, "n": n, "value": v} for n, v in series]
        slope = bounds.empirical_order(series)
        verdict = "n/a"
        if cfg.max_slope is not None:
            verdict = "pass" if slope <= cfg.max_slope else "fail"
            code |= verdict == "fail"
        rows.append({"x": x, "n_min": min(ns), "n_max": max(ns), "points": len(ns),
                     "slope": slope, "max_slope": "none" if cfg.max_slope is None else cfg.max_slope,
                     "verdict": verdict})
    if cfg.series:
        return _render(series_rows, SERIES_COLUMNS, cfg.format), code
    return _render(rows, ORDER_COLUMNS, cfg.format), int(code)


def _run_info(cfg):
    rows = []
    for spec in REGISTRY.values():
        rows.append({"id": spec.id,
                     "sup_bound": "unbounded" if not spec.bounded else spec.sup_bound,
                     "lipschitz": "unknown" if spec.lipschitz is None else spec.lipschitz,
                     "analytic_modulus": spec.analytic_modulus is not None,
                     "in_C0_rho0": spec.in_C0_rho0,
                     "growth_c": spec.growth[0], "growth_p": spec.growth[1]})
    return _render(rows, INFO_COLUMNS, cfg.format), 0


_HANDLERS = {
    "eval": _run_eval,
    "modulus": _run_modulus,
    "envelope": _run_envelope,
    "verify-lemmas": _run_verify_lemmas,
    "verify-bounds": _run_verify_bounds,
    "order": _run_order,
    "info": _run_info,
}


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=ns.command)
    for name, value in vars(ns).items():
        if name == "x_grid" and value is not None:
            cfg.x_grid = value
        elif hasattr(cfg, name) and name != "command" and value is not None:
            setattr(cfg, name, value)
    return cfg


def run(cfg: RunConfig) -> tuple:
    """Execute ``cfg``; returns ``(exit_code, text)`` without touching the filesystem."""
    return tuple(reversed(_HANDLERS[cfg.command](cfg)))


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = config_from_args(args)
    try:
        code, text = run(cfg)
    except MaxProdError as exc:
        print(f"maxprod: error: {exc}", file=sys.stderr)
        return 2
    if cfg.out_path:
        try:
            with open(cfg.out_path, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"maxprod: cannot write {cfg.out_path}: {exc}", file=sys.stderr)
            return 3
    else:
        try:
            sys.stdout.write(text)
            sys.stdout.flush()
        except BrokenPipeError:
            # reader went away (e.g. piped into head); silence the flush at exit
            os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
    return code


if __name__ == "__main__":
    sys.exit(main())

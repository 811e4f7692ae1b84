"""Result records and their CSV/JSON wire formats.

Floats are written with 17 significant digits so every value round-trips
exactly; column order is fixed so output files diff cleanly.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

BOUND_COLUMNS = ("func", "n", "alpha", "x", "lhs", "rhs", "margin",
                 "hyp_pow", "hyp_j", "hyp_n", "verdict")
SUMMARY_COLUMNS = ("check", "total", "violations", "max_slack")
DETAIL_COLUMNS = ("check", "params", "lhs", "rhs", "slack")

HYP_KEYS = ("pow_cond", "j_cond", "n_cond")
MARGIN_RTOL = 1e-10


@dataclass(frozen=True)
class BoundParams:
    alpha: int
    n: int
    x: float

    @property
    def delta_n(self) -> float:
        return (self.n - 1) ** -(1 - 1 / self.alpha)


@dataclass(frozen=True)
class BoundRecord:
    func_id: str
    params: BoundParams
    lhs: float
    rhs: float
    hyp_flags: dict = field(hash=False)
    margin: float
    verdict: str

    @classmethod
    def judge(cls, func_id, params, lhs, rhs, flags):
        margin = rhs - lhs
        if not all(flags.values()):
            verdict = "hyp_not_met"
        elif margin >= -MARGIN_RTOL * max(1.0, rhs):
            verdict = "pass"
        else:
            verdict = "fail"
        return cls(func_id, params, float(lhs), float(rhs), dict(flags), float(margin), verdict)

    def row(self) -> dict:
        return {
            "func": self.func_id,
            "n": self.params.n,
            "alpha": self.params.alpha,
            "x": self.params.x,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "hyp_pow": self.hyp_flags["pow_cond"],
            "hyp_j": self.hyp_flags["j_cond"],
            "hyp_n": self.hyp_flags["n_cond"],
            "verdict": self.verdict,
        }


@dataclass(frozen=True)
class Violation:
    params: tuple
    lhs: float
    rhs: float
    slack: float

    def params_text(self) -> str:
        return ";".join(f"{k}={fmt_value(v)}" for k, v in self.params)


@dataclass
class ViolationReport:
    """Outcome of one inequality sweep; ``slack = lhs - rhs`` for ``lhs <= rhs``."""

    check_id: str
    tolerance: float
    total_cases: int = 0
    violations: list = field(default_factory=list)
    max_slack: float = -math.inf

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, lhs, rhs, params_fn, slack_offset=0.0):
        """Fold in a batch of cases.

        ``params_fn(i)`` returns the parameter tuple of case ``i`` and is only
        called for violating cases.  ``slack_offset`` shifts the slack for
        relative tolerances.
        """
        lhs = np.atleast_1d(np.asarray(lhs, dtype=float))
        rhs = np.broadcast_to(np.asarray(rhs, dtype=float), lhs.shape)
        if lhs.size == 0:
            return
        slack = lhs - rhs - slack_offset
        self.total_cases += lhs.size
        self.max_slack = max(self.max_slack, float(slack.max()))
        for i in np.flatnonzero(slack > self.tolerance):
            self.violations.append(
                Violation(tuple(params_fn(int(i))), float(lhs[i]), float(rhs[i]), float(slack[i]))
            )

    def summary_row(self) -> dict:
        return {"check": self.check_id, "total": self.total_cases,
                "violations": len(self.violations), "max_slack": self.max_slack}


def fmt_value(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return format(v, ".17g")
    return str(v)


def _json_value(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return fmt_value(v) if math.isfinite(v) else "null"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_json_value(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{json.dumps(k)}: {_json_value(x)}" for k, x in v.items()) + "}"
    return json.dumps(v)


def to_json(rows: Sequence[dict]) -> str:
    if not rows:
        return "[]\n"
    return "[\n" + ",\n".join("  " + _json_value(r) for r in rows) + "\n]\n"


def to_csv(rows: Iterable[dict], columns: Sequence[str]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in rows:
        writer.writerow([fmt_value(r[c]) for c in columns])
    return buf.getvalue()


def serialize_bounds(records: Sequence[BoundRecord], fmt: str = "csv") -> str:
    rows = [r.row() for r in records]
    return to_json(rows) if fmt == "json" else to_csv(rows, BOUND_COLUMNS)


def serialize_reports(reports: Sequence[ViolationReport], fmt: str = "csv") -> str:
    """Summary rows, then one detail row per violation.

    CSV writes the summary table, a blank line, and the detail table.  JSON
    writes one object per check with the violations nested under ``details``.
    """
    if fmt == "json":
        rows = []
        for rep in reports:
            row = rep.summary_row()
            row["details"] = [
                {"params": v.params_text(), "lhs": v.lhs, "rhs": v.rhs, "slack": v.slack}
                for v in rep.violations
            ]
            rows.append(row)
        return to_json(rows)
    out = to_csv([r.summary_row() for r in reports], SUMMARY_COLUMNS)
    details = [
        {"check": rep.check_id, "params": v.params_text(), "lhs": v.lhs, "rhs": v.rhs, "slack": v.slack}
        for rep in reports for v in rep.violations
    ]
    return out + "\n" + to_csv(details, DETAIL_COLUMNS)


def parse_bounds_json(text: str) -> list:
    """Inverse of :func:`serialize_bounds` for JSON; used for round-trip checks."""
    out = []
    for obj in json.loads(text):
        params = BoundParams(obj["alpha"], obj["n"], float(obj["x"]))
        flags = {"pow_cond": obj["hyp_pow"], "j_cond": obj["hyp_j"], "n_cond": obj["hyp_n"]}
        out.append(BoundRecord(obj["func"], params, float(obj["lhs"]), float(obj["rhs"]),
                               flags, float(obj["margin"]), obj["verdict"]))
    return out


def parse_bounds_csv(text: str) -> list:
    out = []
    for row in csv.DictReader(io.StringIO(text)):
        params = BoundParams(int(row["alpha"]), int(row["n"]), float(row["x"]))
        flags = {k: row[c] == "true" for k, c in zip(HYP_KEYS, ("hyp_pow", "hyp_j", "hyp_n"))}
        out.append(BoundRecord(row["func"], params, float(row["lhs"]), float(row["rhs"]),
                               flags, float(row["margin"]), row["verdict"]))
    return out

"""Check records, report documents and their deterministic JSON form."""

from __future__ import annotations

import datetime as _dt
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional

import numpy as np

from .. import __version__

PASS, FAIL, CAVEAT, DISCREPANCY = "PASS", "FAIL", "CAVEAT", "DISCREPANCY"
STATUSES = (PASS, FAIL, CAVEAT, DISCREPANCY)

# conventions in effect for every report
LEDGER = [
    "Wronskian: chi1' chi2 - chi1 chi2' = +1 with chi2(0)=1, chi2'(0)=0",
    "compact map: F = cos^(+r) theta e^(-s y^2 tan theta) f(tan theta, y sec theta)",
    "eta+/- = -1/2 e^(-/+2i theta)(y dy +/- i dtheta - r +/- 2isy^2)",
    "E- = -e^(i theta)(dy - 2isy) lowers m by 2; E+ = -e^(-i theta)(dy + 2isy) raises m by 2",
    "L_j signs (+, -, -)",
    "Heisenberg bracket [X(1,0,0), X(0,1,0)] = +2s",
    "group actions: derived convention (a-ct)^r e^(-scx^2/(a-ct)) f((dt-b)/(a-ct), x/(a-ct))",
    "U3 read as (a-1+z)M + (b-a)M(a-1) + (1-b)M(b-1) = 0",
]


class Tolerances:
    """Default tolerances with ``--tol`` overrides (global value or ``name=value``)."""

    def __init__(self, overrides: Optional[List[str]] = None):
        self.global_value: Optional[float] = None
        self.named: Dict[str, float] = {}
        for item in overrides or []:
            if "=" in item:
                k, v = item.split("=", 1)
                self.named[k.strip()] = float(v)
            else:
                self.global_value = float(item)

    def get(self, name: str, default: float) -> float:
        if name in self.named:
            return self.named[name]
        if self.global_value is not None:
            return self.global_value
        return default


@dataclass
class Check:
    name: str
    status: str
    metric: Optional[float]
    tolerance: Optional[float]
    inputs: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "metric": self.metric,
            "tolerance": self.tolerance,
            "inputs": self.inputs,
            "details": self.details,
        }


def judge(name: str, metric: float, tol: float, inputs=None, details=None,
          finding: bool = False) -> Check:
    """PASS when metric <= tol; otherwise DISCREPANCY for findings, FAIL for defects."""
    ok = metric is not None and not math.isnan(metric) and metric <= tol
    status = PASS if ok else (DISCREPANCY if finding else FAIL)
    return Check(name, status, metric, tol, inputs or {}, details or {})


@dataclass
class ReportDocument:
    command: str
    inputs: dict
    results: List[Check]
    ledger: List[str] = field(default_factory=lambda: list(LEDGER))
    version: str = __version__
    timestamp: Optional[str] = None

    @property
    def exit_code(self) -> int:
        return 1 if any(c.status == FAIL for c in self.results) else 0

    def counts(self) -> Dict[str, int]:
        return {s: sum(1 for c in self.results if c.status == s) for s in STATUSES}

    def to_dict(self) -> dict:
        out = {
            "command": self.command,
            "inputs": self.inputs,
            "results": [c.to_dict() for c in self.results],
            "summary": self.counts(),
            "ledger": self.ledger,
            "version": self.version,
        }
        if self.timestamp is not None:
            out["timestamp"] = self.timestamp
        return out

    def to_json(self) -> str:
        return dumps(self.to_dict())


def now_stamp() -> str:
    return _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")


def _fmt_float(x: float) -> str:
    if math.isnan(x):
        return '"NaN"'
    if math.isinf(x):
        return '"Infinity"' if x > 0 else '"-Infinity"'
    return format(x, ".17g")


def _encode(obj, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if isinstance(obj, Fraction):
        return _encode(str(obj), indent, level)
    if isinstance(obj, (complex, np.complexfloating)):
        return _encode({"re": obj.real, "im": obj.imag}, indent, level)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{_encode(str(k), indent, level + 1)}: {_encode(v, indent, level + 1)}"
                 for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        if len(obj) == 0:
            return "[]"
        items = [pad + _encode(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if hasattr(obj, "to_dict"):
        return _encode(obj.to_dict(), indent, level)
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(obj, indent: int = 2) -> str:
    """JSON with every float written to 17 significant digits."""
    return _encode(obj, indent, 0)

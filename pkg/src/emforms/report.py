"""Machine-readable run reports (schema in docs/formats.md)."""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

REPORT_SCHEMA_VERSION = 1

# comparison modes for an assertion row
AT_MOST = "at_most"  # measured <= tolerance
AT_LEAST = "at_least"  # measured >= tolerance
NEAR = "near"  # |measured - expected| <= tolerance


@dataclass
class Assertion:
    name: str
    measured: float
    tolerance: float
    mode: str = AT_MOST
    expected: Optional[float] = None

    @property
    def passed(self) -> bool:
        m = self.measured
        if not math.isfinite(m):
            return False
        if self.mode == AT_MOST:
            return m <= self.tolerance
        if self.mode == AT_LEAST:
            return m >= self.tolerance
        if self.mode == NEAR:
            return abs(m - self.expected) <= self.tolerance
        raise ValueError(f"unknown assertion mode {self.mode!r}")

    def as_dict(self) -> dict:
        d = {
            "name": self.name,
            "measured": _jsonable(self.measured),
            "tolerance": self.tolerance,
            "mode": self.mode,
            "passed": self.passed,
        }
        if self.expected is not None:
            d["expected"] = self.expected
        return d


def _jsonable(x):
    """NaN and inf are not JSON; encode them as null."""
    if isinstance(x, float) and not math.isfinite(x):
        return None
    return x


@dataclass
class RunReport:
    command: str
    scenario: str
    parameters: dict = field(default_factory=dict)
    tables: dict = field(default_factory=dict)
    assertions: list = field(default_factory=list)
    files: list = field(default_factory=list)
    wall_time: float = 0.0

    def check(self, name: str, measured, tolerance: float, mode: str = AT_MOST, expected: Optional[float] = None) -> Assertion:
        a = Assertion(name, float(measured), float(tolerance), mode, expected)
        self.assertions.append(a)
        return a

    def add_row(self, table: str, **values) -> None:
        self.tables.setdefault(table, []).append({k: _to_builtin(v) for k, v in values.items()})

    @property
    def passed(self) -> bool:
        return all(a.passed for a in self.assertions)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def as_dict(self, include_tables: bool = True) -> dict:
        return {
            "schema_version": REPORT_SCHEMA_VERSION,
            "command": self.command,
            "scenario": self.scenario,
            "parameters": {k: _to_builtin(v) for k, v in self.parameters.items()},
            "tables": self.tables if include_tables else {k: f"{len(v)} rows (csv)" for k, v in self.tables.items()},
            "assertions": [a.as_dict() for a in self.assertions],
            "passed": self.passed,
            "files": list(self.files),
            "wall_time": self.wall_time,
        }

    def to_json(self, include_tables: bool = True) -> str:
        return json.dumps(self.as_dict(include_tables), indent=2, allow_nan=False)

    def write_tables_csv(self, stem: Path) -> list[Path]:
        out = []
        for name, rows in self.tables.items():
            if not rows:
                continue
            path = stem.with_name(f"{stem.name}_{name}.csv")
            cols = list(rows[0])
            with path.open("w", newline="") as fh:
                w = csv.DictWriter(fh, fieldnames=cols)
                w.writeheader()
                w.writerows(rows)
            out.append(path)
        return out


def _to_builtin(v):
    if hasattr(v, "tolist"):
        v = v.tolist()
    if isinstance(v, float):
        return _jsonable(v)
    if isinstance(v, (list, tuple)):
        return [_to_builtin(x) for x in v]
    if isinstance(v, dict):
        return {k: _to_builtin(x) for k, x in v.items()}
    return v

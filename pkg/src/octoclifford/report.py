"""Check / scenario / report records and their JSON and CSV serializations."""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__

MODES = ("max", "min", "eq")


@dataclass
class Check:
    """One measured quantity against a threshold.

    mode ``max``: pass iff measured <= threshold; ``min``: measured >= threshold
    (negative controls, lower bounds); ``eq``: measured == threshold exactly.
    """

    name: str
    measured: float
    threshold: float
    mode: str = "max"
    seconds: float = 0.0
    note: str = ""
    passed: bool = field(init=False)

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown check mode {self.mode!r}")
        m = float(self.measured)
        if math.isnan(m):
            self.passed = False
        elif self.mode == "max":
            self.passed = m <= self.threshold
        elif self.mode == "min":
            self.passed = m >= self.threshold
        else:
            self.passed = m == self.threshold

    def as_dict(self) -> dict:
        out = {
            "name": self.name,
            "measured": _json_number(self.measured),
            "threshold": _json_number(self.threshold),
            "mode": self.mode,
            "pass": self.passed,
            "seconds": self.seconds,
        }
        if self.note:
            out["note"] = self.note
        return out


def _json_number(v):
    v = float(v)
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return int(v) if v.is_integer() and abs(v) < 2**53 else v


@dataclass
class ScenarioReport:
    name: str
    params: dict
    checks: list[Check] = field(default_factory=list)
    records: list[dict] = field(default_factory=list)
    # grid fields offered for the optional "dump" output; never serialized in the report
    fields: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name, measured, threshold, mode="max", seconds=0.0, note="") -> Check:
        c = Check(name, float(measured), float(threshold), mode, float(seconds), note)
        self.checks.append(c)
        return c

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def as_dict(self) -> dict:
        out = {"name": self.name, "params": self.params, "checks": [c.as_dict() for c in self.checks]}
        if self.records:
            out["records"] = self.records
        return out


@dataclass
class Report:
    suite: str
    scenarios: list[ScenarioReport] = field(default_factory=list)
    version: str = __version__

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.scenarios)

    def as_dict(self) -> dict:
        ordered = sorted(self.scenarios, key=lambda s: s.name)
        return {"suite": self.suite, "version": self.version, "scenarios": [s.as_dict() for s in ordered]}

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["scenario", "check", "measured", "threshold", "mode", "pass", "seconds"])
        for s in sorted(self.scenarios, key=lambda s: s.name):
            for c in s.checks:
                w.writerow([s.name, c.name, repr(float(c.measured)), repr(float(c.threshold)),
                            c.mode, c.passed, f"{c.seconds:.6f}"])
        return buf.getvalue()

    def summary_lines(self) -> list[str]:
        lines = []
        for s in sorted(self.scenarios, key=lambda s: s.name):
            for c in s.checks:
                flag = "PASS" if c.passed else "FAIL"
                lines.append(f"{flag} {s.name}.{c.name}: measured={c.measured:.3e} "
                             f"{ {'max': '<=', 'min': '>=', 'eq': '=='}[c.mode]} {c.threshold:.3e}")
        return lines


def strip_timing(obj):
    """Drop wall-time fields so two runs can be compared byte for byte."""
    if isinstance(obj, dict):
        return {k: strip_timing(v) for k, v in obj.items() if k != "seconds"}
    if isinstance(obj, list):
        return [strip_timing(v) for v in obj]
    return obj


def atomic_write(path, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


@contextmanager
def stopwatch():
    box = {"seconds": 0.0}
    start = time.perf_counter()
    try:
        yield box
    finally:
        box["seconds"] = time.perf_counter() - start

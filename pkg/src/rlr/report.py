"""Check reports and their text / JSON rendering."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

import numpy as np

DEFAULT_BUDGET = 2**16


class BudgetExceeded(RuntimeError):
    """An exhaustive quantifier would need more evaluations than allowed."""

    def __init__(self, quantifier: str, needed: int, budget: int):
        self.quantifier = quantifier
        self.needed = needed
        self.budget = budget
        super().__init__(f"{quantifier}: {needed} evaluations exceed budget {budget}")


@dataclass
class Check:
    name: str
    passed: bool | None
    witness: Any = None
    note: str = ""

    def to_dict(self) -> dict:
        d = {"name": self.name, "passed": self.passed}
        if self.witness is not None:
            d["witness"] = _plain(self.witness)
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class Report:
    command: str
    checks: list[Check] = field(default_factory=list)
    values: dict[str, Any] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def add(self, name: str, passed: bool | None, witness=None, note: str = "") -> Check:
        c = Check(name, None if passed is None else bool(passed), witness, note)
        self.checks.append(c)
        return c

    def extend(self, other: "Report", prefix: str = ""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.witness, c.note))
        for k, v in other.values.items():
            self.values[prefix + k] = v
        for n in other.notes:
            if n not in self.notes:
                self.notes.append(n)

    def note(self, text: str):
        if text not in self.notes:
            self.notes.append(text)

    @property
    def passed(self) -> bool:
        return all(c.passed is not False for c in self.checks)

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.passed is False]

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
            "values": {k: _plain(v) for k, v in self.values.items()},
            "notes": list(self.notes),
        }


def _plain(v):
    if isinstance(v, np.ndarray):
        return v.tolist()
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    return v


def emit(report: Report, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(report.to_dict(), sort_keys=True, indent=2) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    lines = [f"command: {report.command}"]
    for c in report.checks:
        status = {True: "PASS", False: "FAIL", None: "SKIP"}[c.passed]
        line = f"  [{status}] {c.name}"
        if c.witness is not None and c.passed is False:
            line += f"  witness={json.dumps(_plain(c.witness))}"
        if c.note:
            line += f"  ({c.note})"
        lines.append(line)
    for k in sorted(report.values):
        lines.append(f"  {k} = {json.dumps(_plain(report.values[k]))}")
    for n in report.notes:
        lines.append(f"  note: {n}")
    lines.append(f"result: {'PASS' if report.passed else 'FAIL'}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# enumeration helpers shared by the checkers
# ---------------------------------------------------------------------------


def all_vectors(p: int, d: int):
    for t in np.ndindex(*([p] * d)):
        yield np.array(t, dtype=np.int64)


def probe_vectors(p: int, d: int) -> list[np.ndarray]:
    """Basis vectors, their scalar multiples and pairwise sums."""
    eye = np.eye(d, dtype=np.int64)
    out = [np.zeros(d, dtype=np.int64)]
    for i in range(d):
        for lam in range(1, p):
            out.append((lam * eye[i]) % p)
    for i in range(d):
        for j in range(i + 1, d):
            out.append((eye[i] + eye[j]) % p)
    return out


def points(p: int, d: int, budget: int) -> tuple[list[np.ndarray], bool]:
    """All of GF(p)^d when it fits in the budget, else the probe set."""
    if p**d <= budget:
        return list(all_vectors(p, d)), True
    return probe_vectors(p, d), False


def pairs(p: int, d1: int, d2: int, budget: int) -> tuple[list[tuple[np.ndarray, np.ndarray]], bool]:
    if p ** (d1 + d2) <= budget:
        return [(a, x) for a in all_vectors(p, d1) for x in all_vectors(p, d2)], True
    return [(a, x) for a in probe_vectors(p, d1) for x in probe_vectors(p, d2)], False


def required_points(p: int, d: int, budget: int, quantifier: str) -> list[np.ndarray]:
    if p**d > budget:
        raise BudgetExceeded(quantifier, p**d, budget)
    return list(all_vectors(p, d))


def required_pairs(p: int, d1: int, d2: int, budget: int, quantifier: str):
    if p ** (d1 + d2) > budget:
        raise BudgetExceeded(quantifier, p ** (d1 + d2), budget)
    return [(a, x) for a in all_vectors(p, d1) for x in all_vectors(p, d2)]

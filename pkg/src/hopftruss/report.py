"""Verification reports: ordered pass/fail/skipped/info entries with witnesses."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .exact import Mat, Vec, format_rational

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"
INFO = "info"
STATUSES = (PASS, FAIL, SKIPPED, INFO)


@dataclass(frozen=True)
class Check:
    id: str
    status: str
    witness: Any = None

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == FAIL and self.witness is None:
            raise ValueError(f"failed check {self.id} needs a witness")


@dataclass
class Report:
    checks: list[Check] = field(default_factory=list)
    data: dict[str, Any] = field(default_factory=dict)
    inputs: dict[str, str] = field(default_factory=dict)

    def add(self, id: str, ok: bool, witness: Any = None) -> bool:
        """Record a pass/fail check; a failure without witness gets an empty one."""
        if ok:
            self.checks.append(Check(id, PASS))
        else:
            self.checks.append(Check(id, FAIL, {} if witness is None else witness))
        return ok

    def info(self, id: str, witness: Any = None) -> None:
        self.checks.append(Check(id, INFO, witness))

    def skip(self, id: str, reason: str | None = None) -> None:
        self.checks.append(Check(id, SKIPPED, None if reason is None else {"reason": reason}))

    def extend(self, other: "Report", prefix: str = "") -> "Report":
        for c in other.checks:
            self.checks.append(Check(prefix + c.id, c.status, c.witness))
        for k, v in other.data.items():
            self.data[prefix + k] = v
        return self

    @property
    def passed(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status == FAIL]

    def status_of(self, id: str) -> str | None:
        for c in self.checks:
            if c.id == id:
                return c.status
        return None

    def get(self, id: str) -> Check | None:
        for c in self.checks:
            if c.id == id:
                return c
        return None

    def summary(self) -> dict[str, int]:
        counts = {s: 0 for s in STATUSES}
        for c in self.checks:
            counts[c.status] += 1
        return counts

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def to_dict(self) -> dict:
        out: dict[str, Any] = {"checks": [], "summary": self.summary()}
        for c in sorted(self.checks, key=lambda c: c.id):
            entry: dict[str, Any] = {"id": c.id, "status": c.status}
            if c.witness is not None:
                entry["witness"] = to_jsonable(c.witness)
            out["checks"].append(entry)
        if self.data:
            out["data"] = to_jsonable(self.data)
        if self.inputs:
            out["inputs"] = dict(sorted(self.inputs.items()))
        return out

    def __repr__(self) -> str:
        s = self.summary()
        return f"Report(pass={s[PASS]}, fail={s[FAIL]}, skipped={s[SKIPPED]}, info={s[INFO]})"


def to_jsonable(value: Any) -> Any:
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, Vec):
        return [format_rational(x) for x in value.to_list()]
    if isinstance(value, Mat):
        return [[format_rational(x) for x in row] for row in value.to_rows()]
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    raise TypeError(f"cannot serialize {type(value).__name__}")


def emit_report(report: Report, format: str = "json") -> bytes:
    if format == "json":
        text = json.dumps(report.to_dict(), separators=(",", ":"))
        return text.encode()
    if format == "text":
        d = report.to_dict()
        lines = []
        for c in d["checks"]:
            line = f"{c['status'].upper():8} {c['id']}"
            if "witness" in c:
                line += "  " + json.dumps(c["witness"], separators=(",", ":"))
            lines.append(line)
        s = d["summary"]
        lines.append(f"summary: {s['pass']} pass, {s['fail']} fail, {s['skipped']} skipped, {s['info']} info")
        if "data" in d:
            lines.append("data: " + json.dumps(d["data"], separators=(",", ":")))
        for path, digest in d.get("inputs", {}).items():
            lines.append(f"input {path} sha256:{digest}")
        return ("\n".join(lines) + "\n").encode()
    raise ValueError(f"unknown report format {format!r}")

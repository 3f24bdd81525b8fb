"""Static scan of the package source for the numeric types it touches.

Used as a test hook: core computation must only ever see ``int`` and
``Fraction``.  Float literals, uses of ``float``/``complex``/``Decimal`` and
imports of float-producing modules are reported as sites.  Names that only
appear inside ``isinstance`` checks are guards and are not sites.  Division of
two ints cannot be seen statically; runtime type tests cover that.
"""

from __future__ import annotations

import ast
from dataclasses import dataclass, field
from pathlib import Path

NUMERIC_NAMES = {"int", "float", "complex", "Fraction", "Decimal"}
FLOAT_MODULES = {"math", "cmath", "numpy", "decimal", "statistics", "random"}


@dataclass
class AuditResult:
    types: dict[str, int] = field(default_factory=dict)
    guards: dict[str, int] = field(default_factory=dict)
    float_sites: list[tuple[str, int, str]] = field(default_factory=list)

    @property
    def clean(self) -> bool:
        return not self.float_sites


def _note(res: AuditResult, name: str, guard: bool = False) -> None:
    bucket = res.guards if guard else res.types
    bucket[name] = bucket.get(name, 0) + 1


def audit_source(source: str, filename: str, res: AuditResult | None = None) -> AuditResult:
    res = AuditResult() if res is None else res
    tree = ast.parse(source, filename)
    guards = {id(n) for call in ast.walk(tree)
              if isinstance(call, ast.Call) and isinstance(call.func, ast.Name) and call.func.id == "isinstance"
              for arg in call.args[1:] for n in ast.walk(arg)}
    for node in ast.walk(tree):
        if isinstance(node, ast.Constant) and not isinstance(node.value, bool):
            if isinstance(node.value, int):
                _note(res, "int")
            elif isinstance(node.value, (float, complex)):
                kind = type(node.value).__name__
                _note(res, kind)
                res.float_sites.append((filename, node.lineno, f"{kind} literal"))
        elif isinstance(node, ast.Name) and node.id in NUMERIC_NAMES:
            _note(res, node.id, id(node) in guards)
            if node.id in ("float", "complex", "Decimal") and id(node) not in guards:
                res.float_sites.append((filename, node.lineno, f"use of {node.id}"))
        elif isinstance(node, (ast.Import, ast.ImportFrom)):
            mods = [a.name for a in node.names] if isinstance(node, ast.Import) else [node.module or ""]
            for m in mods:
                if m.split(".")[0] in FLOAT_MODULES:
                    res.float_sites.append((filename, node.lineno, f"import of {m}"))
    return res


def audit_package(root: str | Path | None = None, exclude: tuple[str, ...] = ("audit.py",)) -> AuditResult:
    """Scan every module of the package (this file excluded, it names the types it looks for)."""
    root = Path(__file__).parent if root is None else Path(root)
    res = AuditResult()
    for path in sorted(root.rglob("*.py")):
        if path.name in exclude:
            continue
        audit_source(path.read_text(encoding="utf-8"), str(path.relative_to(root)), res)
    res.types = dict(sorted(res.types.items()))
    res.guards = dict(sorted(res.guards.items()))
    return res

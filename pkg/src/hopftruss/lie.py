"""Lie algebras by structure constants and Rota-Baxter systems of Lie algebras.

The checker follows the defining identities

    [B1 a, B1 b] = B1([B1 a, B1 b] - [B2 a, B2 b])
    [B2 b, B2 a] = B2([B1 a, B1 b] - [B2 a, B2 b])

``strict=True`` additionally checks the negated second identity
``[B2 b, B2 a] = -B2(...)`` that arises for primitive elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .exact import Mat, Vec, accumulate
from .hopf import primitive_space
from .rbs import PreconditionError, RBSystem, TheoremViolation
from .report import Report


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    bracket_table: tuple[tuple[Vec, ...], ...]
    names: tuple[str, ...] = ()
    name: str = ""

    def __post_init__(self):
        n = len(self.bracket_table)
        if any(len(row) != n or any(v.dim != n for v in row) for row in self.bracket_table):
            raise ValueError("bracket table must be dim x dim with dim-length vectors")
        if not self.names:
            object.__setattr__(self, "names", tuple(f"x{i}" for i in range(n)))

    @property
    def dim(self) -> int:
        return len(self.bracket_table)

    def e(self, i: int) -> Vec:
        return Vec.basis(self.dim, i)

    def bracket(self, x: Vec, y: Vec) -> Vec:
        acc: dict = {}
        for i, xi in x.items():
            row = self.bracket_table[i]
            for j, yj in y.items():
                accumulate(acc, xi * yj, row[j])
        return Vec._raw(self.dim, acc)

    @classmethod
    def from_brackets(cls, dim: int, brackets: dict[tuple[int, int], dict[int, object]],
                      names: Sequence[str] = (), name: str = "") -> "LieAlgebra":
        """Build from the brackets [e_i, e_j] for i < j; antisymmetry fills the rest."""
        table = [[Vec.zero(dim) for _ in range(dim)] for _ in range(dim)]
        for (i, j), coeffs in brackets.items():
            v = Vec(dim, coeffs)
            table[i][j] = v
            table[j][i] = -v
        return cls(tuple(tuple(r) for r in table), tuple(names), name)


def abelian_lie(dim: int) -> LieAlgebra:
    return LieAlgebra.from_brackets(dim, {}, name=f"abelian{dim}")


def sl2() -> LieAlgebra:
    """Basis (h, e, f) with [h,e] = 2e, [h,f] = -2f, [e,f] = h."""
    return LieAlgebra.from_brackets(3, {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}},
                                    ("h", "e", "f"), "sl2")


def verify_lie(l: LieAlgebra) -> Report:
    report = Report()
    n = l.dim
    t = l.bracket_table
    w = next(({"a": i, "b": j} for i in range(n) for j in range(i, n) if t[i][j] != -t[j][i]), None)
    report.add("LIE.antisym", w is None, w)
    w = None
    for i in range(n):
        for j in range(n):
            for k in range(n):
                s = (l.bracket(l.e(i), t[j][k]) + l.bracket(l.e(j), t[k][i])
                     + l.bracket(l.e(k), t[i][j]))
                if s:
                    w = {"a": i, "b": j, "c": k}
                    break
            if w:
                break
        if w:
            break
    report.add("LIE.jacobi", w is None, w)
    return report


@dataclass(frozen=True, eq=False)
class LieRBSystem:
    lie: LieAlgebra
    b1: Mat
    b2: Mat

    def __post_init__(self):
        n = self.lie.dim
        for b in (self.b1, self.b2):
            if (b.rows, b.cols) != (n, n):
                raise ValueError("operator shape does not match the Lie algebra")


def check_lie_rbs(s: LieRBSystem, strict: bool = False) -> Report:
    lie = s.lie
    pre = verify_lie(lie)
    if not pre.passed:
        raise PreconditionError(f"not a Lie algebra: {pre.failures()[0]}")
    n = lie.dim
    b1, b2 = s.b1, s.b2
    w1 = w2 = w3 = None
    for i in range(n):
        for j in range(n):
            x11 = lie.bracket(b1.columns[i], b1.columns[j])
            inner = x11 - lie.bracket(b2.columns[i], b2.columns[j])
            if w1 is None and x11 != b1.apply(inner):
                w1 = {"a": i, "b": j}
            lhs2 = lie.bracket(b2.columns[j], b2.columns[i])
            rhs2 = b2.apply(inner)
            if w2 is None and lhs2 != rhs2:
                w2 = {"a": i, "b": j}
            if w3 is None and lhs2 != -rhs2:
                w3 = {"a": i, "b": j}
    report = Report()
    report.add("LRB1", w1 is None, w1)
    report.add("LRB2", w2 is None, w2)
    if strict:
        report.add("LRB2.signed", w3 is None, w3)
    return report


def from_primitives(s: RBSystem) -> LieRBSystem:
    """(P(H), B1|, -B2|) with the commutator bracket in the canonical primitive basis."""
    h = s.h
    p = primitive_space(h)
    u = p.basis
    r = p.rank

    def coords(v: Vec, what: str) -> Vec:
        c = p.coordinates(v)
        if c is None:
            raise TheoremViolation(f"{what} leaves the primitive subspace")
        return Vec.from_list(c) if r else Vec.zero(0)

    table = tuple(tuple(coords(h.mul(u[i], u[j]) - h.mul(u[j], u[i]), "commutator")
                        for j in range(r)) for i in range(r))
    b1 = Mat.from_columns(r, [coords(s.b1.apply(v), "B1") for v in u])
    b2 = Mat.from_columns(r, [-coords(s.b2.apply(v), "B2") for v in u])
    lie = LieAlgebra(table, tuple(f"p{i}" for i in range(r)), name=f"P({h.name})")
    return LieRBSystem(lie, b1, b2)


restrict_to_primitives = from_primitives

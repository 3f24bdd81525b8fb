"""Rota-Baxter systems and Rota-Baxter operators on cocommutative Hopf algebras.

A system is a pair of coalgebra maps (B1, B2) fixing 1 with

    B1(a) B1(b) = B1(a o b),    B2(a) B2(b) = B2(a o b),
    a o b = B1(a_1) b S(B2(a_2)).

The cocycle is sigma(a) = B1(a_1) S(B2(a_2)) = a o 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .exact import Mat, Vec, accumulate, rank
from .hopf import (
    StructAlgebra,
    StructHopf,
    coalgebra_hom_witness,
    convolution,
    is_bialgebra_hom,
    require_cocommutative,
    verify_hopf,
)
from .report import Report

_ZERO = Fraction(0)

CircTable = Sequence[Sequence[Vec]]


class PreconditionError(ValueError):
    """Input does not satisfy the hypotheses of the requested construction."""


class TheoremViolation(RuntimeError):
    """A verified input produced an outcome the theory rules out.

    Raised instead of reported: it means a broken input certificate or a bug.
    """

    def __init__(self, message: str, report: Report | None = None):
        super().__init__(message)
        self.report = report


def _check_square(h: StructHopf, *maps: Mat) -> None:
    for m in maps:
        if (m.rows, m.cols) != (h.dim, h.dim):
            raise ValueError(f"operator of shape {m.rows}x{m.cols} on a dim-{h.dim} Hopf algebra")


def circ_apply(table: CircTable, x: Vec, y: Vec) -> Vec:
    """Bilinear extension of a basis-level product table."""
    n = x.dim
    acc: dict = {}
    for i, xi in x.items():
        row = table[i]
        for j, yj in y.items():
            accumulate(acc, xi * yj, row[j])
    return Vec._raw(n, acc)


class RBSystem:
    """A candidate Rota-Baxter system (H, B1, B2) with sigma and o precomputed.

    Construction does not verify the axioms; use :func:`check_hopf_rbs`.
    Instances are treated as immutable.
    """

    def __init__(self, h: StructHopf, b1: Mat, b2: Mat, name: str = ""):
        require_cocommutative(h)
        _check_square(h, b1, b2)
        self.h = h
        self.b1 = b1
        self.b2 = b2
        self.name = name
        self.sb2 = h.antipode @ b2
        self.sigma = convolution(b1, self.sb2, h, h)
        n = h.dim
        self.circ_table = tuple(tuple(self._circ_basis(i, j) for j in range(n)) for i in range(n))

    def _circ_basis(self, i: int, j: int) -> Vec:
        h = self.h
        acc: dict = {}
        ej = h.e(j)
        for c, l, r in h.coalgebra.comult[i]:
            accumulate(acc, c, h.mul_many(self.b1.columns[l], ej, self.sb2.columns[r]))
        return Vec._raw(h.dim, acc)

    @property
    def dim(self) -> int:
        return self.h.dim

    def circ(self, x: Vec, y: Vec) -> Vec:
        return circ_apply(self.circ_table, x, y)

    def descendent_antipode(self, x: Vec) -> Vec:
        """T(a) = S(B1(a_1)) B2(a_2)."""
        h = self.h
        acc: dict = {}
        for (l, r), c in h.coalgebra.comul_terms(x).items():
            accumulate(acc, c, h.mul(h.S(self.b1.columns[l]), self.b2.columns[r]))
        return Vec._raw(h.dim, acc)

    @cached_property
    def sigma_rank(self) -> int:
        return rank(self.sigma)

    def __repr__(self) -> str:
        return f"RBSystem({self.name or self.h.name or 'H'}, dim={self.dim})"


def cocycle(s: RBSystem) -> Mat:
    return s.sigma


def descendent_op(s: RBSystem, a: Vec, b: Vec) -> Vec:
    return s.circ(a, b)


def _cohom_check(report: Report, id: str, h: StructHopf, m: Mat) -> None:
    w = coalgebra_hom_witness(m, h)
    report.add(id, w is None, w)


def check_rbs(s: RBSystem) -> Report:
    """Coalgebra-map property, unit condition, RB1 and RB2 on all basis pairs."""
    h = s.h
    report = Report()
    _cohom_check(report, "COHOM.B1", h, s.b1)
    _cohom_check(report, "COHOM.B2", h, s.b2)
    u = h.unit
    report.add("UNIT.B1", s.b1.apply(u) == u, {"image": s.b1.apply(u)})
    report.add("UNIT.B2", s.b2.apply(u) == u, {"image": s.b2.apply(u)})
    n = h.dim
    for id, b in (("RB1", s.b1), ("RB2", s.b2)):
        witness = None
        for i in range(n):
            bi = b.columns[i]
            for j in range(n):
                if h.mul(bi, b.columns[j]) != b.apply(s.circ_table[i][j]):
                    witness = {"a": i, "b": j}
                    break
            if witness:
                break
        report.add(id, witness is None, witness)
    return report


def check_hopf_rbs(h: StructHopf, b1: Mat, b2: Mat) -> Report:
    return check_rbs(RBSystem(h, b1, b2))


@dataclass(frozen=True, eq=False)
class RBHopf:
    """A Rota-Baxter operator B on a cocommutative Hopf algebra."""

    h: StructHopf
    b: Mat

    @cached_property
    def sb(self) -> Mat:
        return self.h.antipode @ self.b

    def circ_basis(self, i: int, j: int) -> Vec:
        """e_i o e_j = a_1 B(a_2) b S(B(a_3))."""
        h = self.h
        acc: dict = {}
        ej = h.e(j)
        for (l, m, r), c in h.terms(i, 3).items():
            accumulate(acc, c, h.mul_many(h.e(l), self.b.columns[m], ej, self.sb.columns[r]))
        return Vec._raw(h.dim, acc)

    @cached_property
    def circ_table(self) -> tuple[tuple[Vec, ...], ...]:
        n = self.h.dim
        return tuple(tuple(self.circ_basis(i, j) for j in range(n)) for i in range(n))

    @cached_property
    def descendent_antipode(self) -> Mat:
        """T(a) = S(B(a_1)) S(a_2) B(a_3)."""
        h = self.h
        cols = []
        for i in range(h.dim):
            acc: dict = {}
            for (l, m, r), c in h.terms(i, 3).items():
                accumulate(acc, c, h.mul_many(self.sb.columns[l], h.antipode.columns[m], self.b.columns[r]))
            cols.append(Vec._raw(h.dim, acc))
        return Mat.from_columns(h.dim, cols)

    def descendent_hopf(self) -> StructHopf:
        """(H, o, 1, Delta, eps, T) sharing the coalgebra of H."""
        h = self.h
        alg = StructAlgebra(h.basis, self.circ_table, h.unit, name=f"{h.name}_circ")
        return StructHopf(alg, h.coalgebra, self.descendent_antipode, name=f"{h.name}_circ")


def check_rb_hopf(h: StructHopf, b: Mat) -> Report:
    """Coalgebra-map property and B(a)B(b) = B(a_1 B(a_2) b S(B(a_3))) on basis pairs."""
    require_cocommutative(h)
    _check_square(h, b)
    rb = RBHopf(h, b)
    report = Report()
    _cohom_check(report, "COHOM.B", h, b)
    witness = None
    n = h.dim
    for i in range(n):
        for j in range(n):
            if h.mul(b.columns[i], b.columns[j]) != b.apply(rb.circ_table[i][j]):
                witness = {"a": i, "b": j}
                break
        if witness:
            break
    report.add("HRB", witness is None, witness)
    return report


def from_rb_hopf(rb: RBHopf) -> RBSystem:
    """The system (H, id * B, B) induced by a Rota-Baxter operator."""
    h = rb.h
    pre = check_rb_hopf(h, rb.b)
    if not pre.passed:
        raise PreconditionError(f"not a Rota-Baxter operator: {pre.failures()[0]}")
    b1 = convolution(h.identity_map, rb.b, h, h)
    return RBSystem(h, b1, rb.b, name=f"{h.name}:from_rb")


def lemma_idm(s: RBSystem) -> Report:
    """B1 sigma = B1, B2 sigma = B2, sigma idempotent, sigma a coalgebra map."""
    report = Report()
    sig = s.sigma

    def first_diff(m1: Mat, m2: Mat):
        j = next((j for j in range(m1.cols) if m1.columns[j] != m2.columns[j]), None)
        return None if j is None else {"a": j}

    w = first_diff(s.b1 @ sig, s.b1)
    report.add("IDM.B1_sigma", w is None, w)
    w = first_diff(s.b2 @ sig, s.b2)
    report.add("IDM.B2_sigma", w is None, w)
    w = first_diff(sig @ sig, sig)
    report.add("IDM.sigma_idem", w is None, w)
    _cohom_check(report, "IDM.sigma_cohom", s.h, sig)
    return report


def check_hopf_truss(h: StructHopf, circ: CircTable, sigma: Mat) -> Report:
    """Truss law a o (bc) = (a_1 o b) S(sigma(a_2)) (a_3 o c) plus the bialgebra-ness of o."""
    _check_square(h, sigma)
    n = h.dim
    report = Report()
    _cohom_check(report, "TRUSS.sigma_cohom", h, sigma)

    witness = None
    for i in range(n):
        for j in range(n):
            lhs = h.comul(circ[i][j])
            acc: dict = {}
            for c1, l1, r1 in h.coalgebra.comult[i]:
                for c2, l2, r2 in h.coalgebra.comult[j]:
                    for p, x in circ[l1][l2].items():
                        for q, y in circ[r1][r2].items():
                            k = p * n + q
                            acc[k] = acc.get(k, _ZERO) + c1 * c2 * x * y
            if lhs != Vec._raw(n * n, acc):
                witness = {"a": i, "b": j}
                break
        if witness:
            break
    report.add("TRUSS.circ_comult", witness is None, witness)

    eps = h.coalgebra.counit
    witness = next(({"a": i, "b": j} for i in range(n) for j in range(n)
                    if h.eps(circ[i][j]) != eps[i] * eps[j]), None)
    report.add("TRUSS.circ_counit", witness is None, witness)

    witness = None
    for i in range(n):
        for j in range(n):
            ij = circ[i][j]
            for k in range(n):
                if circ_apply(circ, ij, h.e(k)) != circ_apply(circ, h.e(i), circ[j][k]):
                    witness = {"a": i, "b": j, "c": k}
                    break
            if witness:
                break
        if witness:
            break
    report.add("TRUSS.assoc", witness is None, witness)

    s_sigma = h.antipode @ sigma
    witness = None
    for i in range(n):
        t3 = h.terms(i, 3)
        for j in range(n):
            for k in range(n):
                lhs = circ_apply(circ, h.e(i), h.mul(h.e(j), h.e(k)))
                acc: dict = {}
                for (l, m, r), c in t3.items():
                    accumulate(acc, c, h.mul_many(circ[l][j], s_sigma.columns[m], circ[r][k]))
                if lhs != Vec._raw(n, acc):
                    witness = {"a": i, "b": j, "c": k}
                    break
            if witness:
                break
        if witness:
            break
    report.add("HTS", witness is None, witness)

    left_unit = all(circ_apply(circ, h.unit, h.e(j)) == h.e(j) for j in range(n))
    report.info("TRUSS.left_unit", {"holds": left_unit})
    return report


def check_system_truss(s: RBSystem) -> Report:
    return check_hopf_truss(s.h, s.circ_table, s.sigma)


def check_hopf_brace(h: StructHopf, hcirc: StructHopf) -> Report:
    """Brace law a o (bc) = (a_1 o b) S(a_2) (a_3 o c) between two Hopf structures."""
    report = Report()
    rh = verify_hopf(h)
    rc = verify_hopf(hcirc)
    report.add("BRACE.H", rh.passed, None if rh.passed else {"check": rh.failures()[0].id})
    report.add("BRACE.Hcirc", rc.passed, None if rc.passed else {"check": rc.failures()[0].id})
    same = (h.dim == hcirc.dim and h.coalgebra.comult == hcirc.coalgebra.comult
            and h.coalgebra.counit == hcirc.coalgebra.counit)
    report.add("BRACE.coalgebra", same, None if same else {})
    if not (rh.passed and rc.passed and same):
        report.skip("HB", "Hopf structures not verified")
        report.skip("BRACE.unit", "Hopf structures not verified")
        return report
    n = h.dim
    circ = hcirc.algebra.mult
    witness = None
    for i in range(n):
        t3 = h.terms(i, 3)
        for j in range(n):
            for k in range(n):
                lhs = circ_apply(circ, h.e(i), h.mul(h.e(j), h.e(k)))
                acc: dict = {}
                for (l, m, r), c in t3.items():
                    accumulate(acc, c, h.mul_many(circ[l][j], h.antipode.columns[m], circ[r][k]))
                if lhs != Vec._raw(n, acc):
                    witness = {"a": i, "b": j, "c": k}
                    break
            if witness:
                break
        if witness:
            break
    report.add("HB", witness is None, witness)
    report.add("BRACE.unit", hcirc.unit == h.unit, {"unit_circ": hcirc.unit})
    return report


def check_twisted(h: StructHopf, b: Mat, phi: Mat) -> Report:
    """B(a)B(b) = B(B(a_1) b S(phi(B(a_2)))) for a bialgebra map phi."""
    require_cocommutative(h)
    _check_square(h, b, phi)
    if not is_bialgebra_hom(phi, h):
        raise PreconditionError("phi is not a bialgebra homomorphism")
    report = Report()
    _cohom_check(report, "COHOM.B", h, b)
    s_phi_b = h.antipode @ phi @ b
    n = h.dim
    witness = None
    for i in range(n):
        for j in range(n):
            acc: dict = {}
            for c, l, r in h.coalgebra.comult[i]:
                accumulate(acc, c, h.mul_many(b.columns[l], h.e(j), s_phi_b.columns[r]))
            if h.mul(b.columns[i], b.columns[j]) != b.apply(Vec._raw(n, acc)):
                witness = {"a": i, "b": j}
                break
        if witness:
            break
    report.add("TWIST", witness is None, witness)
    return report


def twisted_to_system(h: StructHopf, b: Mat, phi: Mat) -> RBSystem:
    """(H, B, phi o B) for a phi-twisted operator B; re-verified before return."""
    pre = check_twisted(h, b, phi)
    if not pre.passed:
        raise PreconditionError(f"not a twisted Rota-Baxter operator: {pre.failures()[0]}")
    if b.apply(h.unit) != h.unit:
        raise PreconditionError("B(1) != 1")
    s = RBSystem(h, b, phi @ b, name=f"{h.name}:twisted")
    post = check_rbs(s)
    if not post.passed:
        raise TheoremViolation("twisted operator did not yield a Rota-Baxter system", post)
    return s


def sigma_surjective_consequence(s: RBSystem) -> Report:
    """When sigma is onto, (H, B2) and (H, B1 S) are Rota-Baxter Hopf algebras."""
    report = Report()
    if s.sigma_rank != s.dim:
        report.info("SURJ.hypothesis", {"holds": False, "rank": s.sigma_rank, "dim": s.dim})
        report.skip("SURJ.B2", "hypothesis not met")
        report.skip("SURJ.B1S", "hypothesis not met")
        return report
    report.info("SURJ.hypothesis", {"holds": True, "rank": s.sigma_rank, "dim": s.dim})
    report.extend(check_rb_hopf(s.h, s.b2), "SURJ.B2.")
    report.extend(check_rb_hopf(s.h, s.b1 @ s.h.antipode), "SURJ.B1S.")
    return report

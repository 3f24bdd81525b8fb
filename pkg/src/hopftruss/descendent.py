"""The descendent Hopf algebra (Im sigma, o, 1, Delta, eps, T) of a Rota-Baxter system."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import Mat, Subspace, Vec, format_rational
from .hopf import StructAlgebra, StructCoalgebra, StructHopf, coalgebra_hom_witness, verify_hopf
from .rbs import PreconditionError, RBSystem, TheoremViolation, check_rbs
from .report import Report


@dataclass(frozen=True, eq=False)
class DescendentHopf:
    parent: RBSystem
    space: Subspace  # H1 = Im(sigma), reduced basis
    hopf: StructHopf  # structure constants in the reduced basis of H1
    report: Report

    @property
    def dim(self) -> int:
        return self.space.rank

    @property
    def h1_basis(self) -> tuple[Vec, ...]:
        return self.space.basis

    @property
    def embed(self) -> Mat:
        return self.space.embedding()

    @property
    def antipode_T(self) -> Mat:
        return self.hopf.antipode

    def project(self, v: Vec) -> Vec:
        coords = self.space.coordinates(v)
        if coords is None:
            raise ValueError("vector is not in Im(sigma)")
        return Vec.from_list(coords)

    def lift(self, v: Vec) -> Vec:
        return self.embed.apply(v)


def _name(h: StructHopf, v: Vec) -> str:
    items = sorted(v.items())
    if len(items) == 1 and items[0][1] == 1:
        return h.basis[items[0][0]]
    return "+".join(f"{format_rational(c)}*{h.basis[i]}" for i, c in items)


def descendent_hopf(s: RBSystem, verify_input: bool = True) -> DescendentHopf:
    """Assemble and verify the descendent Hopf algebra; theorem violations raise."""
    h = s.h
    if verify_input:
        pre = check_rbs(s)
        if not pre.passed:
            raise PreconditionError(f"not a Rota-Baxter system: {pre.failures()[0]}")
    report = Report()
    n = h.dim
    space = Subspace.span(n, s.sigma.columns)
    r = space.rank
    report.info("DESC.dim", {"dim": r, "rank_sigma": s.sigma_rank})

    def coords(v: Vec, what: str, witness: dict) -> list[Fraction]:
        c = space.coordinates(v)
        if c is None:
            report.add(what, False, witness)
            raise TheoremViolation(f"{what} failed at {witness}", report)
        return c

    unit = Vec.from_list(coords(h.unit, "DESC.unit_in_H1", {}))
    report.add("DESC.unit_in_H1", True)
    u = space.basis
    mult = tuple(tuple(Vec.from_list(coords(s.circ(u[k], u[l]), "DESC.circ_closed", {"a": k, "b": l}))
                       for l in range(r)) for k in range(r))
    report.add("DESC.circ_closed", True)

    tspace = space.tensor(space)
    comult = []
    for k in range(r):
        c = tspace.coordinates(h.comul(u[k]))
        if c is None:
            report.add("DESC.comult_closed", False, {"a": k})
            raise TheoremViolation(f"Delta(H1) not inside H1 (x) H1 at {k}", report)
        comult.append(tuple((x, p // r, p % r) for p, x in enumerate(c) if x))
    report.add("DESC.comult_closed", True)
    counit = Vec.from_list([h.eps(v) for v in u])
    t_cols = [Vec.from_list(coords(s.descendent_antipode(u[k]), "DESC.antipode_closed", {"a": k}))
              for k in range(r)]
    report.add("DESC.antipode_closed", True)

    names = tuple(_name(h, v) for v in u)
    label = f"{s.name or h.name}:descendent"
    hopf = StructHopf(StructAlgebra(names, mult, unit, label),
                      StructCoalgebra(names, tuple(comult), counit, label),
                      Mat.from_columns(r, t_cols), label)
    vh = verify_hopf(hopf)
    report.extend(vh, "DESC.")
    if not vh.passed:
        raise TheoremViolation(f"descendent structure is not a Hopf algebra: {vh.failures()[0]}", report)
    report.add("DESC.cocommutative", hopf.is_cocommutative, {})
    return DescendentHopf(s, space, hopf, report)


def image_subhopf(d: DescendentHopf, which: str) -> Report:
    """B_i : H_{B1,B2} -> H is a Hopf map and Im(B_i) is a Hopf subalgebra of H."""
    s = d.parent
    h = s.h
    b = {"B1": s.b1, "B2": s.b2}[which]
    p = f"IMG.{which}."
    report = Report()
    u = d.h1_basis
    r = d.dim
    bu = [b.apply(v) for v in u]

    w = next(({"a": k, "b": l} for k in range(r) for l in range(r)
               if b.apply(s.circ(u[k], u[l])) != h.mul(bu[k], bu[l])), None)
    report.add(p + "alg_hom", w is None, w)
    report.add(p + "unit", b.apply(h.unit) == h.unit, {})
    bemb = b @ d.embed
    w = coalgebra_hom_witness(bemb, d.hopf, h)
    report.add(p + "coalg_hom", w is None, w)
    w = next(({"a": k} for k in range(r) if bemb.apply(d.antipode_T.columns[k]) != h.S(bu[k])), None)
    report.add(p + "antipode_hom", w is None, w)

    img = Subspace.span(h.dim, b.columns)
    report.info(p + "dim", {"dim": img.rank})
    ib = img.basis
    w = next(({"a": k, "b": l} for k in range(len(ib)) for l in range(len(ib))
               if not img.contains(h.mul(ib[k], ib[l]))), None)
    report.add(p + "mult_closed", w is None and img.contains(h.unit), w)
    t = img.tensor(img)
    w = next(({"a": k} for k in range(len(ib)) if not t.contains(h.comul(ib[k]))), None)
    report.add(p + "comult_closed", w is None, w)
    w = next(({"a": k} for k in range(len(ib)) if not img.contains(h.S(ib[k]))), None)
    report.add(p + "antipode_closed", w is None, w)
    return report

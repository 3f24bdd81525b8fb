"""Character groups Cha(H, A) under convolution and the decomposition machinery
attached to a Rota-Baxter system: the pullbacks along B1, B2 and along the
inclusion of the descendent Hopf algebra, the Cayley transform between the
two quotient groups, and the pair group mapping isomorphically onto Im(Psi).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .descendent import DescendentHopf, descendent_hopf
from .exact import Mat, Vec
from .hopf import (
    StructAlgebra,
    StructHopf,
    algebra_hom_witness,
    convolution,
    convolution_unit,
    is_group_like,
    verify_algebra,
)
from .rbs import PreconditionError, RBSystem, TheoremViolation
from .report import Report


class CharacterClosureError(ValueError):
    def __init__(self, message: str, witness: dict):
        super().__init__(f"{message}: {witness}")
        self.witness = witness


class OutOfDomainError(ValueError):
    """The character to decompose is not in Im(Psi)."""


@dataclass(frozen=True, eq=False)
class CommAlgebra:
    algebra: StructAlgebra

    def __post_init__(self):
        r = verify_algebra(self.algebra)
        if not r.passed:
            raise ValueError(f"not an algebra: {r.failures()[0]}")
        if not self.algebra.is_commutative:
            raise ValueError("algebra is not commutative")

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def unit(self) -> Vec:
        return self.algebra.unit

    def mul(self, x: Vec, y: Vec) -> Vec:
        return self.algebra.mul(x, y)


def rationals() -> CommAlgebra:
    """The base field Q as a one-dimensional algebra."""
    one = Vec.basis(1, 0)
    return CommAlgebra(StructAlgebra(("1",), ((one,),), one, name="Q"))


@dataclass(frozen=True, eq=False)
class Character:
    source: StructHopf
    target: CommAlgebra
    values: Mat  # dim_A x dim_H, column j = f(e_j)

    def __call__(self, x: Vec) -> Vec:
        return self.values.apply(x)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Character):
            return NotImplemented
        return self.values == other.values

    def __hash__(self) -> int:
        return hash(self.values)

    def sort_key(self) -> tuple:
        return self.values.sort_key()

    def __repr__(self) -> str:
        return f"Character({self.values!r})"


def is_character(values: Mat, source: StructHopf, target: CommAlgebra) -> bool:
    return algebra_hom_witness(values, source.algebra, target.algebra) is None


def convolve(f: Character, g: Character) -> Character:
    return Character(f.source, f.target, convolution(f.values, g.values, f.source, f.target.algebra))


def conv_identity(h: StructHopf, a: CommAlgebra) -> Character:
    return Character(h, a, convolution_unit(h, a.algebra))


def conv_inverse(f: Character) -> Character:
    """f o S, checked to be a two-sided convolution inverse."""
    inv = Character(f.source, f.target, f.values @ f.source.antipode)
    e = conv_identity(f.source, f.target)
    if convolve(f, inv) != e or convolve(inv, f) != e:
        raise TheoremViolation("f o S is not a convolution inverse of f")
    return inv


@dataclass(frozen=True, eq=False)
class CharGroup:
    """A finite group of characters in canonical (lexicographic) order."""

    source: StructHopf
    target: CommAlgebra
    elements: tuple[Character, ...]
    table: tuple[tuple[int, ...], ...]
    identity: int
    inverse: tuple[int, ...]
    _index: dict = field(repr=False, compare=False, default_factory=dict)

    def __post_init__(self):
        self._index.update({f.values: k for k, f in enumerate(self.elements)})

    @property
    def order(self) -> int:
        return len(self.elements)

    def index(self, f: Character) -> int:
        return self._index[f.values]

    def __contains__(self, f: Character) -> bool:
        return f.values in self._index


def build_char_group(source: StructHopf, target: CommAlgebra, chars: Sequence[Character]) -> CharGroup:
    elements = tuple(sorted(set(chars), key=Character.sort_key))
    index = {f.values: k for k, f in enumerate(elements)}
    table = []
    for i, f in enumerate(elements):
        row = []
        for j, g in enumerate(elements):
            p = convolve(f, g)
            if p.values not in index:
                raise CharacterClosureError("character set not closed under convolution", {"a": i, "b": j})
            row.append(index[p.values])
        table.append(tuple(row))
    e = conv_identity(source, target)
    if e.values not in index:
        raise CharacterClosureError("identity character missing", {})
    ident = index[e.values]
    inverse = []
    for i, f in enumerate(elements):
        inv = conv_inverse(f)
        if inv.values not in index:
            raise CharacterClosureError("character set not closed under inverses", {"a": i})
        k = index[inv.values]
        if table[i][k] != ident:
            raise TheoremViolation("antipode inverse disagrees with the group table")
        inverse.append(k)
    return CharGroup(source, target, elements, tuple(table), ident, tuple(inverse))


def verify_char_group(cg: CharGroup) -> Report:
    report = Report()
    w = next(({"a": k} for k, f in enumerate(cg.elements) if not is_character(f.values, cg.source, cg.target)), None)
    report.add("CHA.characters", w is None, w)
    t = cg.table
    n = cg.order
    w = next(({"a": a, "b": b, "c": c} for a in range(n) for b in range(n) for c in range(n)
              if t[t[a][b]][c] != t[a][t[b][c]]), None)
    report.add("CHA.assoc", w is None, w)
    e = cg.identity
    w = next(({"a": a} for a in range(n) if t[a][e] != a or t[e][a] != a), None)
    report.add("CHA.identity", w is None and cg.elements[e] == conv_identity(cg.source, cg.target), w)
    w = next(({"a": a} for a in range(n) if t[a][cg.inverse[a]] != e or t[cg.inverse[a]][a] != e), None)
    report.add("CHA.inverse", w is None, w)
    return report


def enumerate_characters(h: StructHopf, a: CommAlgebra, units: Sequence[Vec] | None = None) -> CharGroup:
    """All characters of a group-algebra-type Hopf algebra with values in ``units``.

    The basis of ``h`` must consist of group-likes closed under multiplication, so a
    character is a group homomorphism from the basis into the candidate units.
    """
    if units is None:
        units = [a.unit, -a.unit]
    units = list(dict.fromkeys(units))
    for k, u in enumerate(units):
        if u.dim != a.dim:
            raise ValueError(f"unit candidate {k} has the wrong dimension")
        if not any(a.mul(u, v) == a.unit for v in units):
            raise CharacterClosureError("candidate has no inverse among the candidates", {"candidate": k})
    n = h.dim
    if any(not is_group_like(h, h.e(i)) for i in range(n)):
        raise PreconditionError("basis is not made of group-like elements")
    lookup = {h.e(i): i for i in range(n)}
    table = []
    for i in range(n):
        row = []
        for j in range(n):
            p = h.mul(h.e(i), h.e(j))
            if p not in lookup:
                raise PreconditionError("basis is not closed under multiplication")
            row.append(lookup[p])
        table.append(row)
    one = lookup.get(h.unit)
    if one is None:
        raise PreconditionError("unit is not a basis element")

    found = []
    vals: list[Vec | None] = [None] * n
    vals[one] = a.unit
    order = [i for i in range(n) if i != one]

    def ok() -> bool:
        for i in range(n):
            if vals[i] is None:
                continue
            for j in range(n):
                k = table[i][j]
                if vals[j] is not None and vals[k] is not None and a.mul(vals[i], vals[j]) != vals[k]:
                    return False
        return True

    def rec(pos: int) -> None:
        if pos == len(order):
            found.append(Character(h, a, Mat.from_columns(a.dim, list(vals))))
            return
        i = order[pos]
        for u in units:
            vals[i] = u
            if ok():
                rec(pos + 1)
        vals[i] = None

    if ok():
        rec(0)
    return build_char_group(h, a, found)


# ---------------------------------------------------------------- pullbacks


class _Group:
    """Convolution arithmetic on characters of one Hopf algebra."""

    def __init__(self, h: StructHopf, a: CommAlgebra):
        self.h = h
        self.a = a
        self.e = conv_identity(h, a)

    def mul(self, f: Character, g: Character) -> Character:
        return convolve(f, g)

    def inv(self, f: Character) -> Character:
        return conv_inverse(f)


def _sorted_unique(chars) -> tuple[Character, ...]:
    return tuple(sorted(set(chars), key=Character.sort_key))


@dataclass(frozen=True, eq=False)
class CalMaps:
    system: RBSystem
    cg: CharGroup
    desc: DescendentHopf
    b1: tuple[Character, ...]  # images indexed like cg.elements
    b2: tuple[Character, ...]
    psi: tuple[Character, ...]
    report: Report

    @property
    def target_group(self) -> _Group:
        return _Group(self.desc.hopf, self.cg.target)

    def image(self, which: str) -> tuple[Character, ...]:
        return _sorted_unique(getattr(self, which))

    def kernel(self, which: str) -> tuple[int, ...]:
        e = self.target_group.e
        return tuple(k for k, f in enumerate(getattr(self, which)) if f == e)


def cal_maps(s: RBSystem, cg: CharGroup, desc: DescendentHopf | None = None) -> CalMaps:
    """Pullbacks f -> f o B1, f -> f o B2 and f -> f|_{H1} into Cha(H_{B1,B2}, A)."""
    desc = descendent_hopf(s) if desc is None else desc
    emb = desc.embed
    hd = desc.hopf
    a = cg.target
    report = Report()
    out = {}
    for which, pre in (("B1", s.b1 @ emb), ("B2", s.b2 @ emb), ("Psi", emb)):
        imgs = []
        for k, f in enumerate(cg.elements):
            v = f.values @ pre
            if not is_character(v, hd, a):
                report.add(f"CAL.{which}_character", False, {"a": k})
                raise TheoremViolation(f"pullback along {which} is not a character", report)
            imgs.append(Character(hd, a, v))
        report.add(f"CAL.{which}_character", True)
        n = cg.order
        w = next(({"a": i, "b": j} for i in range(n) for j in range(n)
                  if imgs[cg.table[i][j]] != convolve(imgs[i], imgs[j])), None)
        report.add(f"CAL.{which}_hom", w is None, w)
        if w is not None:
            raise TheoremViolation(f"{which} is not a group homomorphism", report)
        out[which] = tuple(imgs)
    cal = CalMaps(s, cg, desc, out["B1"], out["B2"], out["Psi"], report)
    for which in ("b1", "b2", "psi"):
        report.info(f"CAL.{which}", {"image": len(cal.image(which)), "kernel": len(cal.kernel(which))})
    return cal


def _normal_subgroup(grp: _Group, ambient: Sequence[Character], sub: Sequence[Character],
                     report: Report, id: str) -> None:
    subset = set(sub)
    ok = grp.e in subset and all(grp.mul(x, y) in subset for x in sub for y in sub) \
        and all(grp.inv(x) in subset for x in sub)
    report.add(id + "_subgroup", ok, None if ok else {})
    w = None
    for i, x in enumerate(ambient):
        xi = grp.inv(x)
        for j, n in enumerate(sub):
            if grp.mul(grp.mul(x, n), xi) not in subset:
                w = {"a": i, "b": j}
                break
        if w:
            break
    report.add(id + "_normal", w is None, w)


def normal_parts(cal: CalMaps) -> tuple[tuple[Character, ...], tuple[Character, ...]]:
    """B1(ker B2) and B2(ker B1)."""
    n1 = _sorted_unique(cal.b1[k] for k in cal.kernel("b2"))
    n2 = _sorted_unique(cal.b2[k] for k in cal.kernel("b1"))
    return n1, n2


def normality_check(cal: CalMaps) -> Report:
    report = Report()
    grp = cal.target_group
    n1, n2 = normal_parts(cal)
    _normal_subgroup(grp, cal.image("b1"), n1, report, "NORM.B1kerB2")
    _normal_subgroup(grp, cal.image("b2"), n2, report, "NORM.B2kerB1")
    return report


@dataclass(frozen=True, eq=False)
class Cosets:
    cosets: tuple[tuple[Character, ...], ...]  # each sorted; representative = first
    of: dict

    @classmethod
    def build(cls, grp: _Group, ambient: Sequence[Character], normal: Sequence[Character]) -> "Cosets":
        of: dict = {}
        cosets = []
        for x in ambient:
            if x in of:
                continue
            c = _sorted_unique(grp.mul(x, n) for n in normal)
            for y in c:
                of[y] = len(cosets)
            cosets.append(c)
        return cls(tuple(cosets), of)

    def rep(self, k: int) -> Character:
        return self.cosets[k][0]


@dataclass(frozen=True, eq=False)
class CayleyTransform:
    quot1: Cosets  # Im(B1) / B1(ker B2)
    quot2: Cosets  # Im(B2) / B2(ker B1)
    mapping: dict  # coset index -> coset index

    def __call__(self, k: int) -> int:
        return self.mapping[k]


def cayley_transform(cal: CalMaps) -> tuple[CayleyTransform, Report]:
    """Theta(B1(f) N1) = B2(f) N2, checked well defined, bijective and multiplicative."""
    grp = cal.target_group
    n1, n2 = normal_parts(cal)
    q1 = Cosets.build(grp, cal.image("b1"), n1)
    q2 = Cosets.build(grp, cal.image("b2"), n2)
    report = Report()
    report.info("THETA.quotients", {"source": len(q1.cosets), "target": len(q2.cosets)})
    mapping: dict = {}
    w = None
    for k in range(cal.cg.order):
        c1, c2 = q1.of[cal.b1[k]], q2.of[cal.b2[k]]
        if mapping.setdefault(c1, c2) != c2:
            w = {"a": k, "coset": c1}
            break
    report.add("THETA.well_defined", w is None, w)
    if w is not None:
        raise TheoremViolation("Cayley transform is not well defined", report)
    bij = len(mapping) == len(q1.cosets) and sorted(mapping.values()) == list(range(len(q2.cosets)))
    report.add("THETA.bijective", bij, None if bij else {})
    w = None
    for i in range(len(q1.cosets)):
        for j in range(len(q1.cosets)):
            prod = q1.of[grp.mul(q1.rep(i), q1.rep(j))]
            rhs = q2.of[grp.mul(q2.rep(mapping[i]), q2.rep(mapping[j]))]
            if mapping[prod] != rhs:
                w = {"a": i, "b": j}
                break
        if w:
            break
    report.add("THETA.hom", w is None, w)
    if not report.passed:
        raise TheoremViolation("Cayley transform is not a group isomorphism", report)
    return CayleyTransform(q1, q2, mapping), report


@dataclass(frozen=True, eq=False)
class PairGroup:
    cal: CalMaps
    theta: CayleyTransform
    elements: tuple[tuple[Character, Character], ...]
    phi: dict  # pair -> f1 * f2^{-1}

    def mul(self, p, q):
        grp = self.cal.target_group
        return (grp.mul(p[0], q[0]), grp.mul(p[1], q[1]))


def pair_group_and_phi(cal: CalMaps, theta: CayleyTransform | None = None) -> tuple[PairGroup, Report]:
    """G = {(f1, f2) : Theta(f1 N1) = f2 N2} and Phi(f1, f2) = f1 * f2^{-1}."""
    if theta is None:
        theta, _ = cayley_transform(cal)
    grp = cal.target_group
    q1, q2 = theta.quot1, theta.quot2
    pairs = tuple((f1, f2) for f1 in cal.image("b1") for f2 in cal.image("b2")
                  if theta(q1.of[f1]) == q2.of[f2])
    report = Report()
    report.info("PAIR.order", {"order": len(pairs)})
    pset = set(pairs)
    ok = (grp.e, grp.e) in pset and all(
        (grp.mul(p[0], q[0]), grp.mul(p[1], q[1])) in pset for p in pairs for q in pairs
    ) and all((grp.inv(p[0]), grp.inv(p[1])) in pset for p in pairs)
    report.add("PAIR.subgroup", ok, None if ok else {})
    phi = {p: grp.mul(p[0], grp.inv(p[1])) for p in pairs}
    im_psi = set(cal.image("psi"))
    w = next(({"pair": k} for k, p in enumerate(pairs) if phi[p] not in im_psi), None)
    report.add("PHI.into_im_psi", w is None, w)
    w = None
    for i, p in enumerate(pairs):
        for j, q in enumerate(pairs):
            if phi[(grp.mul(p[0], q[0]), grp.mul(p[1], q[1]))] != grp.mul(phi[p], phi[q]):
                w = {"a": i, "b": j}
                break
        if w:
            break
    report.add("PHI.hom", w is None, w)
    values = list(phi.values())
    report.add("PHI.injective", len(set(values)) == len(values), None)
    report.add("PHI.surjective", set(values) == im_psi, None)
    report.add("PHI.card", len(pairs) == len(im_psi), {"pairs": len(pairs), "im_psi": len(im_psi)})
    if not report.passed:
        raise TheoremViolation("Phi is not a group isomorphism onto Im(Psi)", report)
    return PairGroup(cal, theta, pairs, phi), report


def decompose(f: Character, pg: PairGroup) -> tuple[Character, Character]:
    """The unique (f1, f2) in G with f = f1 * f2^{-1}; uniqueness by full scan."""
    if f not in set(pg.cal.image("psi")):
        raise OutOfDomainError("character is not in Im(Psi)")
    hits = [p for p in pg.elements if pg.phi[p] == f]
    if len(hits) != 1:
        raise TheoremViolation(f"expected exactly one decomposition, found {len(hits)}")
    return hits[0]


def corollary_form(f: Character, pg: PairGroup) -> tuple[Character, Character]:
    """Rewrite f = f1 * f2^{-1} as f = f1 * g2 with g2 = f2^{-1}; re-verified."""
    f1, f2 = decompose(f, pg)
    grp = pg.cal.target_group
    g2 = grp.inv(f2)
    if grp.mul(f1, g2) != f:
        raise TheoremViolation("corollary form does not reproduce f")
    return f1, g2


def full_report(s: RBSystem, cg: CharGroup) -> Report:
    """Pullbacks, normality, Cayley transform, Phi and every decomposition."""
    report = Report()
    report.extend(verify_char_group(cg))
    try:
        cal = cal_maps(s, cg)
        report.extend(cal.report)
        report.extend(normality_check(cal))
        theta, tr = cayley_transform(cal)
        report.extend(tr)
        pg, pr = pair_group_and_phi(cal, theta)
        report.extend(pr)
    except TheoremViolation as exc:
        if exc.report is not None:
            report.extend(exc.report)
        report.add("THEOREM", False, {"error": str(exc)})
        return report

    grp = cal.target_group
    decomps = []
    unique_ok = True
    for k, f in enumerate(cal.image("psi")):
        try:
            f1, f2 = decompose(f, pg)
        except TheoremViolation:
            unique_ok = False
            report.add("DEM.unique", False, {"f": k})
            continue
        ok = grp.mul(f1, grp.inv(f2)) == f
        unique_ok &= ok
        decomps.append({"f": f.values, "f1": f1.values, "f2": f2.values})
    if unique_ok:
        report.add("DEM.unique", True)
    report.data["decompositions"] = decomps

    sigma_id = s.sigma == s.h.identity_map
    if sigma_id:
        same = all(p.values == f.values for p, f in zip(cal.psi, cg.elements))
        report.add("COR.psi_identity", same, None if same else {})
        forms = []
        ok = True
        for f in cal.image("psi"):
            f1, g2 = corollary_form(f, pg)
            ok &= grp.mul(f1, g2) == f
            forms.append({"f": f.values, "f1": f1.values, "f2": g2.values,
                          "pair_in_G": (f1, g2) in set(pg.elements)})
        report.add("COR.form", ok, None if ok else {})
        report.data["corollary"] = forms
    else:
        report.skip("COR.psi_identity", "sigma is not the identity")
        report.skip("COR.form", "sigma is not the identity")
    return report

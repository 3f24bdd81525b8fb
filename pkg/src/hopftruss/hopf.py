"""Structure-constant algebras, coalgebras and Hopf algebras.

Every axiom is checked on basis elements; linearity does the rest.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence, Union

from .exact import Mat, Subspace, Vec, accumulate, kernel_basis
from .report import Report

_ZERO = Fraction(0)
_ONE = Fraction(1)


class NotCocommutativeError(ValueError):
    """An operation that needs a cocommutative Hopf algebra got another one."""


@dataclass(frozen=True, eq=False)
class StructAlgebra:
    basis: tuple[str, ...]
    mult: tuple[tuple[Vec, ...], ...]  # mult[i][j] = e_i * e_j
    unit: Vec
    name: str = ""

    def __post_init__(self):
        n = len(self.basis)
        if len(self.mult) != n or any(len(row) != n for row in self.mult):
            raise ValueError("multiplication table must be dim x dim")
        if any(v.dim != n for row in self.mult for v in row) or self.unit.dim != n:
            raise ValueError("structure constants have the wrong dimension")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def mul(self, x: Vec, y: Vec) -> Vec:
        acc: dict = {}
        mult = self.mult
        yd = y._d
        for i, xi in x._d.items():
            row = mult[i]
            for j, yj in yd.items():
                accumulate(acc, xi * yj, row[j])
        return Vec._raw(self.dim, acc)

    def mul_many(self, *xs: Vec) -> Vec:
        out = xs[0]
        for x in xs[1:]:
            out = self.mul(out, x)
        return out

    @cached_property
    def is_commutative(self) -> bool:
        n = self.dim
        return all(self.mult[i][j] == self.mult[j][i] for i in range(n) for j in range(i + 1, n))


@dataclass(frozen=True, eq=False)
class StructCoalgebra:
    basis: tuple[str, ...]
    comult: tuple[tuple[tuple[Fraction, int, int], ...], ...]  # Delta(e_i) = sum c e_l (x) e_r
    counit: Vec
    name: str = ""

    def __post_init__(self):
        n = len(self.basis)
        if len(self.comult) != n or self.counit.dim != n:
            raise ValueError("comultiplication/counit have the wrong dimension")
        for terms in self.comult:
            for _, l, r in terms:
                if not (0 <= l < n and 0 <= r < n):
                    raise IndexError("comultiplication index out of range")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def comul(self, x: Vec) -> Vec:
        n = self.dim
        acc: dict = {}
        for i, xi in x._d.items():
            for c, l, r in self.comult[i]:
                k = l * n + r
                acc[k] = acc.get(k, _ZERO) + xi * c
        return Vec._raw(n * n, acc)

    def comul_terms(self, x: Vec) -> dict[tuple[int, int], Fraction]:
        acc: dict = {}
        for i, xi in x._d.items():
            for c, l, r in self.comult[i]:
                acc[l, r] = acc.get((l, r), _ZERO) + xi * c
        return {k: v for k, v in acc.items() if v}

    def eps(self, x: Vec) -> Fraction:
        cu = self.counit._d
        return sum((xi * cu[i] for i, xi in x._d.items() if i in cu), _ZERO)

    def terms(self, i: int, n: int, bracketing: str = "right") -> dict[tuple[int, ...], Fraction]:
        """Iterated coproduct of basis element ``i`` into ``n`` legs, as {legs: coeff}.

        ``right`` keeps splitting the last leg, ``left`` the first.
        """
        if n < 1:
            raise ValueError("need at least one tensor leg")
        key = (i, n, bracketing)
        cache = self.__dict__.setdefault("_terms_cache", {})
        if key in cache:
            return cache[key]
        cur = {(i,): _ONE}
        for _ in range(n - 1):
            nxt: dict = {}
            for legs, c in cur.items():
                if bracketing == "right":
                    head, k = legs[:-1], legs[-1]
                    for d, l, r in self.comult[k]:
                        t = head + (l, r)
                        nxt[t] = nxt.get(t, _ZERO) + c * d
                elif bracketing == "left":
                    k, tail = legs[0], legs[1:]
                    for d, l, r in self.comult[k]:
                        t = (l, r) + tail
                        nxt[t] = nxt.get(t, _ZERO) + c * d
                else:
                    raise ValueError(f"unknown bracketing {bracketing!r}")
            cur = {t: v for t, v in nxt.items() if v}
        cache[key] = cur
        return cur

    def terms_of(self, x: Vec, n: int) -> dict[tuple[int, ...], Fraction]:
        acc: dict = {}
        for i, xi in x._d.items():
            for legs, c in self.terms(i, n).items():
                acc[legs] = acc.get(legs, _ZERO) + xi * c
        return {k: v for k, v in acc.items() if v}

    @cached_property
    def is_cocommutative(self) -> bool:
        return cocommutativity_witness(self) is None


def cocommutativity_witness(c: StructCoalgebra) -> int | None:
    for i in range(c.dim):
        t = c.comul_terms(Vec.basis(c.dim, i))
        if t != {(r, l): v for (l, r), v in t.items()}:
            return i
    return None


@dataclass(frozen=True, eq=False)
class StructHopf:
    algebra: StructAlgebra
    coalgebra: StructCoalgebra
    antipode: Mat
    name: str = ""

    def __post_init__(self):
        n = self.algebra.dim
        if self.coalgebra.dim != n or (self.antipode.rows, self.antipode.cols) != (n, n):
            raise ValueError("algebra, coalgebra and antipode dimensions disagree")

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def basis(self) -> tuple[str, ...]:
        return self.algebra.basis

    @property
    def unit(self) -> Vec:
        return self.algebra.unit

    def e(self, i: int) -> Vec:
        return Vec.basis(self.dim, i)

    def mul(self, x: Vec, y: Vec) -> Vec:
        return self.algebra.mul(x, y)

    def mul_many(self, *xs: Vec) -> Vec:
        return self.algebra.mul_many(*xs)

    def comul(self, x: Vec) -> Vec:
        return self.coalgebra.comul(x)

    def eps(self, x: Vec) -> Fraction:
        return self.coalgebra.eps(x)

    def S(self, x: Vec) -> Vec:
        return self.antipode.apply(x)

    def terms(self, i: int, n: int) -> dict[tuple[int, ...], Fraction]:
        return self.coalgebra.terms(i, n)

    @property
    def is_commutative(self) -> bool:
        return self.algebra.is_commutative

    @property
    def is_cocommutative(self) -> bool:
        return self.coalgebra.is_cocommutative

    @cached_property
    def counit_map(self) -> Mat:
        """The map a -> eps(a) 1, the unit of the convolution algebra End(H)."""
        return convolution_unit(self.coalgebra, self.algebra)

    @cached_property
    def identity_map(self) -> Mat:
        return Mat.identity(self.dim)


AlgebraLike = Union[StructAlgebra, StructHopf]
CoalgebraLike = Union[StructCoalgebra, StructHopf]


def _alg(x) -> StructAlgebra:
    return x.algebra if isinstance(x, StructHopf) else x


def _coalg(x) -> StructCoalgebra:
    return x.coalgebra if isinstance(x, StructHopf) else x


def require_cocommutative(h: StructHopf) -> None:
    if not h.is_cocommutative:
        raise NotCocommutativeError(f"Hopf algebra {h.name or '<unnamed>'} is not cocommutative")


# ---------------------------------------------------------------- verifiers


def verify_algebra(a: AlgebraLike, report: Report | None = None) -> Report:
    a = _alg(a)
    report = Report() if report is None else report
    n = a.dim
    e = [Vec.basis(n, i) for i in range(n)]
    witness = None
    for i in range(n):
        for j in range(n):
            ij = a.mult[i][j]
            for k in range(n):
                if a.mul(ij, e[k]) != a.mul(e[i], a.mult[j][k]):
                    witness = {"a": i, "b": j, "c": k}
                    break
            if witness:
                break
        if witness:
            break
    report.add("ALG.assoc", witness is None, witness)
    witness = None
    for i in range(n):
        if a.mul(a.unit, e[i]) != e[i] or a.mul(e[i], a.unit) != e[i]:
            witness = {"a": i}
            break
    report.add("ALG.unit", witness is None, witness)
    return report


def verify_coalgebra(c: CoalgebraLike, report: Report | None = None, cocommutative: bool = False) -> Report:
    c = _coalg(c)
    report = Report() if report is None else report
    n = c.dim
    witness = None
    for i in range(n):
        if c.terms(i, 3, "left") != c.terms(i, 3, "right"):
            witness = {"a": i}
            break
    report.add("COALG.coassoc", witness is None, witness)
    witness = None
    cu = c.counit
    for i in range(n):
        left: dict = {}
        right: dict = {}
        for coef, l, r in c.comult[i]:
            if cu[l]:
                left[r] = left.get(r, _ZERO) + coef * cu[l]
            if cu[r]:
                right[l] = right.get(l, _ZERO) + coef * cu[r]
        e_i = Vec.basis(n, i)
        if Vec._raw(n, left) != e_i or Vec._raw(n, right) != e_i:
            witness = {"a": i}
            break
    report.add("COALG.counit", witness is None, witness)
    if cocommutative:
        w = cocommutativity_witness(c)
        report.add("COALG.cocomm", w is None, None if w is None else {"a": w})
    return report


def verify_bialgebra_compat(alg: StructAlgebra, coalg: StructCoalgebra, report: Report | None = None) -> Report:
    """Delta and eps are algebra maps (equivalently mult and unit are coalgebra maps)."""
    report = Report() if report is None else report
    n = alg.dim
    witness = None
    for i in range(n):
        ti = coalg.comult[i]
        for j in range(n):
            lhs = coalg.comul_terms(alg.mult[i][j])
            acc: dict = {}
            for c1, l1, r1 in ti:
                for c2, l2, r2 in coalg.comult[j]:
                    left = alg.mult[l1][l2]
                    right = alg.mult[r1][r2]
                    for p, x in left._d.items():
                        for q, y in right._d.items():
                            acc[p, q] = acc.get((p, q), _ZERO) + c1 * c2 * x * y
            rhs = {k: v for k, v in acc.items() if v}
            if lhs != rhs:
                witness = {"a": i, "b": j}
                break
        if witness:
            break
    report.add("BIALG.comult_mult", witness is None, witness)
    u = alg.unit
    uu = {}
    for p, x in u._d.items():
        for q, y in u._d.items():
            uu[p, q] = x * y
    ok = coalg.comul_terms(u) == uu
    report.add("BIALG.comult_unit", ok, None if ok else {})
    witness = None
    eps = [coalg.counit[i] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if coalg.eps(alg.mult[i][j]) != eps[i] * eps[j]:
                witness = {"a": i, "b": j}
                break
        if witness:
            break
    report.add("BIALG.counit_mult", witness is None, witness)
    report.add("BIALG.counit_unit", coalg.eps(u) == 1, {"value": coalg.eps(u)})
    return report


def verify_hopf(h: StructHopf) -> Report:
    report = Report()
    verify_algebra(h.algebra, report)
    verify_coalgebra(h.coalgebra, report)
    verify_bialgebra_compat(h.algebra, h.coalgebra, report)
    n = h.dim
    witness = None
    for i in range(n):
        target = h.unit * h.coalgebra.counit[i]
        left: dict = {}
        right: dict = {}
        for c, l, r in h.coalgebra.comult[i]:
            accumulate(left, c, h.mul(h.e(l), h.antipode.columns[r]))
            accumulate(right, c, h.mul(h.antipode.columns[l], h.e(r)))
        if Vec._raw(n, left) != target or Vec._raw(n, right) != target:
            witness = {"a": i}
            break
    report.add("HOPF.antipode", witness is None, witness)
    report.info("HOPF.commutative", {"holds": h.is_commutative})
    report.info("HOPF.cocommutative", {"holds": h.is_cocommutative})
    if h.is_commutative or h.is_cocommutative:
        s2 = h.antipode @ h.antipode
        w = next((j for j in range(n) if s2.columns[j] != h.e(j)), None)
        report.add("HOPF.S2", w is None, None if w is None else {"a": w})
    else:
        report.skip("HOPF.S2", "neither commutative nor cocommutative")
    return report


# ---------------------------------------------------------------- Sweedler calculus


def sweedler(h: CoalgebraLike, a: Vec, n: int, bracketing: str = "right") -> Vec:
    """Iterated coproduct Delta_{n-1}(a) as a flat vector in H^(x)n."""
    c = _coalg(h)
    if n < 1:
        raise ValueError("n must be positive")
    d = c.dim
    acc: dict = {}
    for i, x in a._d.items():
        for legs, coef in c.terms(i, n, bracketing).items():
            k = 0
            for leg in legs:
                k = k * d + leg
            acc[k] = acc.get(k, _ZERO) + x * coef
    return Vec._raw(d ** n, acc)


def convolution(f: Mat, g: Mat, coalgebra: CoalgebraLike, algebra: AlgebraLike) -> Mat:
    """f * g = mult o (f (x) g) o Delta."""
    c, a = _coalg(coalgebra), _alg(algebra)
    for m in (f, g):
        if m.cols != c.dim or m.rows != a.dim:
            raise ValueError(f"map of shape {m.rows}x{m.cols} does not go from dim {c.dim} to dim {a.dim}")
    cols = []
    for j in range(c.dim):
        acc: dict = {}
        for coef, l, r in c.comult[j]:
            accumulate(acc, coef, a.mul(f.columns[l], g.columns[r]))
        cols.append(Vec._raw(a.dim, acc))
    return Mat.from_columns(a.dim, cols)


def convolution_unit(coalgebra: CoalgebraLike, algebra: AlgebraLike) -> Mat:
    c, a = _coalg(coalgebra), _alg(algebra)
    return Mat.from_columns(a.dim, [a.unit * c.counit[j] for j in range(c.dim)])


# ---------------------------------------------------------------- morphisms


def coalgebra_hom_witness(f: Mat, source: CoalgebraLike, target: CoalgebraLike | None = None,
                          anti: bool = False) -> dict | None:
    """First basis index where ``f`` fails to be a coalgebra (anti-)homomorphism."""
    src = _coalg(source)
    tgt = src if target is None else _coalg(target)
    if f.cols != src.dim or f.rows != tgt.dim:
        raise ValueError("map shape does not match the coalgebras")
    n = tgt.dim
    for j in range(src.dim):
        fj = f.columns[j]
        if tgt.eps(fj) != src.counit[j]:
            return {"a": j, "law": "counit"}
        lhs = tgt.comul(fj)
        acc: dict = {}
        for c, l, r in src.comult[j]:
            if anti:
                l, r = r, l
            for p, x in f.columns[l]._d.items():
                for q, y in f.columns[r]._d.items():
                    k = p * n + q
                    acc[k] = acc.get(k, _ZERO) + c * x * y
        if lhs != Vec._raw(n * n, acc):
            return {"a": j, "law": "comult"}
    return None


def is_coalgebra_hom(f: Mat, source: CoalgebraLike, target: CoalgebraLike | None = None) -> bool:
    return coalgebra_hom_witness(f, source, target) is None


def is_coalgebra_antihom(f: Mat, source: CoalgebraLike, target: CoalgebraLike | None = None) -> bool:
    return coalgebra_hom_witness(f, source, target, anti=True) is None


def algebra_hom_witness(f: Mat, source: AlgebraLike, target: AlgebraLike | None = None) -> dict | None:
    src = _alg(source)
    tgt = src if target is None else _alg(target)
    if f.cols != src.dim or f.rows != tgt.dim:
        raise ValueError("map shape does not match the algebras")
    if f.apply(src.unit) != tgt.unit:
        return {"law": "unit"}
    for i in range(src.dim):
        for j in range(src.dim):
            if f.apply(src.mult[i][j]) != tgt.mul(f.columns[i], f.columns[j]):
                return {"a": i, "b": j, "law": "mult"}
    return None


def is_algebra_hom(f: Mat, source: AlgebraLike, target: AlgebraLike | None = None) -> bool:
    return algebra_hom_witness(f, source, target) is None


def is_bialgebra_hom(f: Mat, source: StructHopf, target: StructHopf | None = None) -> bool:
    return is_algebra_hom(f, source, target) and is_coalgebra_hom(f, source, target)


# ---------------------------------------------------------------- distinguished elements


def is_group_like(h: CoalgebraLike, a: Vec) -> bool:
    c = _coalg(h)
    if c.eps(a) != 1:
        return False
    n = c.dim
    aa = {}
    for p, x in a._d.items():
        for q, y in a._d.items():
            aa[p * n + q] = x * y
    return c.comul(a) == Vec._raw(n * n, aa)


def group_likes(h: StructHopf, candidates: Sequence[Vec] | None = None) -> list[Vec]:
    """Filter ``candidates`` (default: the basis) down to group-like elements."""
    if candidates is None:
        candidates = [h.e(i) for i in range(h.dim)]
    return [a for a in candidates if is_group_like(h, a)]


def primitivity_map(h: StructHopf) -> Mat:
    """The linear map a -> Delta(a) - a (x) 1 - 1 (x) a, from H to H (x) H."""
    n = h.dim
    cols = []
    for j in range(n):
        acc = dict(h.comul(h.e(j))._d)
        for q, y in h.unit._d.items():
            acc[j * n + q] = acc.get(j * n + q, _ZERO) - y
            acc[q * n + j] = acc.get(q * n + j, _ZERO) - y
        cols.append(Vec._raw(n * n, acc))
    return Mat.from_columns(n * n, cols)


def primitive_subspace(h: StructHopf) -> list[Vec]:
    return kernel_basis(primitivity_map(h))


def primitive_space(h: StructHopf) -> Subspace:
    return Subspace.span(h.dim, primitive_subspace(h))

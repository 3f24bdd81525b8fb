"""Finite groups by Cayley table, Rota-Baxter systems of groups, and their
linearization to group algebras.

A Rota-Baxter system of groups is (G, B1, B2) with, for all a, b,

    B1(a) B1(b) = B1(B1(a) b B2(a)),
    B2(b) B2(a) = B2(B1(a) b B2(a)).
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .exact import Mat, Vec
from .hopf import StructAlgebra, StructCoalgebra, StructHopf
from .rbs import PreconditionError, RBSystem, check_rbs
from .report import Report

DEFAULT_MAX_ORDER = 8


class EnumerationBoundError(ValueError):
    def __init__(self, order: int, bound: int):
        super().__init__(f"group order {order} exceeds the enumeration bound {bound}")
        self.order = order
        self.bound = bound


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    elements: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    name: str = ""

    def __post_init__(self):
        n = len(self.elements)
        if n == 0:
            raise ValueError("a group has at least one element")
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise ValueError("Cayley table must be order x order")
        if any(not 0 <= x < n for row in self.table for x in row):
            raise ValueError("Cayley table entry out of range")

    @property
    def order(self) -> int:
        return len(self.elements)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @cached_property
    def identity(self) -> int | None:
        n = self.order
        for e in range(n):
            if all(self.table[e][x] == x and self.table[x][e] == x for x in range(n)):
                return e
        return None

    @cached_property
    def inverse(self) -> tuple[int | None, ...]:
        e = self.identity
        n = self.order
        out = []
        for a in range(n):
            out.append(next((b for b in range(n) if e is not None
                             and self.table[a][b] == e and self.table[b][a] == e), None))
        return tuple(out)

    def inv(self, a: int) -> int:
        b = self.inverse[a]
        if b is None:
            raise ValueError(f"element {self.elements[a]} has no inverse")
        return b

    def is_abelian(self) -> bool:
        n = self.order
        return all(self.table[a][b] == self.table[b][a] for a in range(n) for b in range(n))


def verify_group(g: FiniteGroup) -> Report:
    report = Report()
    n = g.order
    t = g.table
    witness = None
    for i in range(n):
        if len(set(t[i])) != n:
            witness = {"row": i}
            break
        col = {t[r][i] for r in range(n)}
        if len(col) != n:
            witness = {"col": i}
            break
    report.add("GRP.latin", witness is None, witness)
    witness = next(({"a": a, "b": b, "c": c}
                    for a in range(n) for b in range(n) for c in range(n)
                    if t[t[a][b]][c] != t[a][t[b][c]]), None)
    report.add("GRP.assoc", witness is None, witness)
    report.add("GRP.identity", g.identity is not None, {})
    if g.identity is None:
        report.skip("GRP.inverse", "no identity")
    else:
        bad = next((a for a in range(n) if g.inverse[a] is None), None)
        report.add("GRP.inverse", bad is None, None if bad is None else {"a": bad})
    return report


def _group_from_mul(elements: Sequence, mul, names: Sequence[str], name: str) -> FiniteGroup:
    index = {x: i for i, x in enumerate(elements)}
    table = tuple(tuple(index[mul(a, b)] for b in elements) for a in elements)
    return FiniteGroup(tuple(names), table, name)


def cyclic_group(n: int) -> FiniteGroup:
    names = ["1"] + ["g" if k == 1 else f"g^{k}" for k in range(1, n)]
    return _group_from_mul(list(range(n)), lambda a, b: (a + b) % n, names, f"C{n}")


def _cycle_notation(p: tuple[int, ...]) -> str:
    seen = set()
    parts = []
    for s in range(len(p)):
        if s in seen or p[s] == s:
            seen.add(s)
            continue
        cyc = [s]
        seen.add(s)
        k = p[s]
        while k != s:
            cyc.append(k)
            seen.add(k)
            k = p[k]
        parts.append("(" + " ".join(str(x + 1) for x in cyc) + ")")
    return "".join(parts) or "()"


def symmetric_group(n: int) -> FiniteGroup:
    """S_n with elements in lexicographic order of their one-line notation;
    product (p q)(x) = p(q(x))."""
    perms = list(itertools.permutations(range(n)))
    return _group_from_mul(perms, lambda p, q: tuple(p[q[x]] for x in range(n)),
                           [_cycle_notation(p) for p in perms], f"S{n}")


def trivial_group() -> FiniteGroup:
    return FiniteGroup(("1",), ((0,),), "C1")


@dataclass(frozen=True)
class GroupEndo:
    """A bare self-map of a group's element set (no homomorphism condition)."""

    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(int(x) for x in self.images))

    def __call__(self, a: int) -> int:
        return self.images[a]


@dataclass(frozen=True)
class GroupRBSystem:
    group: FiniteGroup
    b1: GroupEndo
    b2: GroupEndo

    def __post_init__(self):
        n = self.group.order
        for b in (self.b1, self.b2):
            if len(b.images) != n or any(not 0 <= x < n for x in b.images):
                raise ValueError("operator images must be element indices of the group")

    def key(self) -> tuple:
        return (self.b1.images, self.b2.images)


def check_group_rbs(s: GroupRBSystem) -> Report:
    g = s.group
    pre = verify_group(g)
    if not pre.passed:
        raise PreconditionError(f"not a group: {pre.failures()[0]}")
    t, b1, b2 = g.table, s.b1.images, s.b2.images
    n = g.order
    report = Report()
    w1 = w2 = None
    for a in range(n):
        for b in range(n):
            x = t[t[b1[a]][b]][b2[a]]
            if w1 is None and t[b1[a]][b1[b]] != b1[x]:
                w1 = {"a": a, "b": b}
            if w2 is None and t[b2[b]][b2[a]] != b2[x]:
                w2 = {"a": a, "b": b}
    report.add("GRBS1", w1 is None, w1)
    report.add("GRBS2", w2 is None, w2)
    return report


# ---------------------------------------------------------------- enumeration


def _search(table, n, fixed: dict[int, tuple[int, int]], free: list[int]) -> list[tuple]:
    """Backtracking over (B1(a), B2(a)) assignments with fail-fast identity checks."""
    b1 = [-1] * n
    b2 = [-1] * n
    for a, (v1, v2) in fixed.items():
        b1[a], b2[a] = v1, v2
    assigned = [a in fixed for a in range(n)]
    found = []

    def consistent(k: int) -> bool:
        for a in range(n):
            if not assigned[a]:
                continue
            ra = table[b1[a]]
            b2a = b2[a]
            for b in range(n):
                if not assigned[b]:
                    continue
                x = table[ra[b]][b2a]
                if not assigned[x] or (a != k and b != k and x != k):
                    continue
                if ra[b1[b]] != b1[x] or table[b2[b]][b2a] != b2[x]:
                    return False
        return True

    if fixed and not all(consistent(a) for a in fixed):
        return found

    def rec(pos: int) -> None:
        if pos == len(free):
            found.append((tuple(b1), tuple(b2)))
            return
        a = free[pos]
        assigned[a] = True
        for v1 in range(n):
            b1[a] = v1
            for v2 in range(n):
                b2[a] = v2
                if consistent(a):
                    rec(pos + 1)
        assigned[a] = False
        b1[a] = b2[a] = -1

    rec(0)
    return found


def _search_branch(args):
    table, n, fixed, free = args
    return _search(table, n, fixed, free)


def enumerate_group_rbs(g: FiniteGroup, require_unit_fixed: bool = False,
                        max_order: int = DEFAULT_MAX_ORDER, jobs: int = 1) -> list[GroupRBSystem]:
    """All Rota-Baxter systems on ``g``, in lexicographic order of (B1, B2) images."""
    if g.order > max_order:
        raise EnumerationBoundError(g.order, max_order)
    pre = verify_group(g)
    if not pre.passed:
        raise PreconditionError(f"not a group: {pre.failures()[0]}")
    n = g.order
    e = g.identity
    fixed = {e: (e, e)} if require_unit_fixed else {}
    free = [a for a in range(n) if a not in fixed]
    if jobs > 1 and free:
        # split on the first free element's images; merged output is sorted anyway
        a0 = free[0]
        tasks = [(g.table, n, {**fixed, a0: (v1, v2)}, free[1:]) for v1 in range(n) for v2 in range(n)]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            raw = [r for part in ex.map(_search_branch, tasks) for r in part]
    else:
        raw = _search(g.table, n, fixed, free)
    raw.sort()
    return [GroupRBSystem(g, GroupEndo(x), GroupEndo(y)) for x, y in raw]


# ---------------------------------------------------------------- group algebras


def group_algebra(g: FiniteGroup) -> StructHopf:
    """F[G]: basis = group elements in table order, Delta(g) = g (x) g, eps(g) = 1, S(g) = g^-1."""
    pre = verify_group(g)
    if not pre.passed:
        raise PreconditionError(f"not a group: {pre.failures()[0]}")
    n = g.order
    one = Fraction(1)
    mult = tuple(tuple(Vec.basis(n, g.table[a][b]) for b in range(n)) for a in range(n))
    alg = StructAlgebra(g.elements, mult, Vec.basis(n, g.identity), name=f"F[{g.name}]")
    coalg = StructCoalgebra(g.elements, tuple(((one, a, a),) for a in range(n)),
                            Vec(n, {a: 1 for a in range(n)}), name=f"F[{g.name}]")
    s = Mat.from_columns(n, [Vec.basis(n, g.inv(a)) for a in range(n)])
    return StructHopf(alg, coalg, s, name=f"F[{g.name}]")


def linearize(g: FiniteGroup, images: Sequence[int]) -> Mat:
    n = g.order
    return Mat.from_columns(n, [Vec.basis(n, images[a]) for a in range(n)])


def extend_to_group_algebra(s: GroupRBSystem, h: StructHopf | None = None) -> RBSystem:
    """Linearize: B1~(g) = B1(g), B2~(g) = B2(g)^-1."""
    g = s.group
    report = check_group_rbs(s)
    if not report.passed:
        raise PreconditionError(f"not a Rota-Baxter system of groups: {report.failures()[0]}")
    e = g.identity
    if s.b1(e) != e:
        raise PreconditionError("B1(1_G) != 1_G")
    if s.b2(e) != e:
        raise PreconditionError("B2(1_G) != 1_G")
    h = group_algebra(g) if h is None else h
    b1 = linearize(g, s.b1.images)
    b2 = linearize(g, [g.inv(s.b2(a)) for a in range(g.order)])
    return RBSystem(h, b1, b2, name=f"{h.name}:ext{s.b1.images}{s.b2.images}")


def extension_passes(s: GroupRBSystem) -> bool:
    return check_rbs(extend_to_group_algebra(s)).passed


def restrict_to_group_likes(s: RBSystem) -> GroupRBSystem:
    """(G(H), B1|, S o B2|) with G(H) read off the group-like basis vectors."""
    from .hopf import group_likes

    h = s.h
    gl = group_likes(h)
    index = {v: k for k, v in enumerate(gl)}

    def locate(v: Vec, what: str) -> int:
        if v not in index:
            raise PreconditionError(f"{what} is not a group-like basis vector")
        return index[v]

    table = tuple(tuple(locate(h.mul(x, y), "product of group-likes") for y in gl) for x in gl)
    names = tuple(next(h.basis[i] for i, _ in v.items()) for v in gl)
    g = FiniteGroup(names, table, name=f"G({h.name})")
    b1 = GroupEndo(tuple(locate(s.b1.apply(v), "B1 image") for v in gl))
    b2 = GroupEndo(tuple(locate(s.sb2.apply(v), "S(B2) image") for v in gl))
    return GroupRBSystem(g, b1, b2)

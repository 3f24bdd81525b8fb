"""The bialgebra H^(x)3 with the twisted product, and graphs of operator pairs.

Product on H (x) H (x) H:

    (a (x) b (x) c)(a' (x) b' (x) c') = a_1 a' (x) eps(b) a_2 b' S(c_2) (x) c_1 c'

Comultiplication is the tensor-cube one, leg by leg.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import Mat, Subspace, TensorIndex, Vec, accumulate, tensor_product
from .hopf import (
    StructAlgebra,
    StructCoalgebra,
    StructHopf,
    coalgebra_hom_witness,
    require_cocommutative,
    verify_algebra,
    verify_bialgebra_compat,
    verify_coalgebra,
)
from .rbs import PreconditionError
from .report import Report

_ZERO = Fraction(0)


@dataclass(frozen=True, eq=False)
class TripleBialgebra:
    h: StructHopf
    algebra: StructAlgebra
    coalgebra: StructCoalgebra

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def index(self) -> TensorIndex:
        n = self.h.dim
        return TensorIndex((n, n, n))

    def mul(self, x: Vec, y: Vec) -> Vec:
        return self.algebra.mul(x, y)

    def comul(self, x: Vec) -> Vec:
        return self.coalgebra.comul(x)


def triple_bialgebra(h: StructHopf) -> TripleBialgebra:
    require_cocommutative(h)
    n = h.dim
    idx = TensorIndex((n, n, n))
    N = idx.size
    eps = h.coalgebra.counit
    comult = h.coalgebra.comult
    e = [h.e(i) for i in range(n)]
    # a_2 b' S(c_2) and c_1 c' depend on single legs; precompute the H-level pieces
    mult = []
    for a in range(n):
        for b in range(n):
            for c in range(n):
                row = []
                eb = eps[b]
                for a2 in range(n):
                    for b2 in range(n):
                        for c2 in range(n):
                            acc: dict = {}
                            if eb:
                                for x, l, r in comult[a]:
                                    left = h.mul(e[l], e[a2])
                                    for y, p, q in comult[c]:
                                        mid = h.mul_many(e[r], e[b2], h.antipode.columns[q])
                                        right = h.mul(e[p], e[c2])
                                        v = tensor_product(tensor_product(left, mid), right)
                                        accumulate(acc, eb * x * y, v)
                            row.append(Vec._raw(N, acc))
                mult.append(tuple(row))
    names = tuple(f"{h.basis[i]}|{h.basis[j]}|{h.basis[k]}" for i in range(n) for j in range(n) for k in range(n))
    unit = tensor_product(tensor_product(h.unit, h.unit), h.unit)
    alg = StructAlgebra(names, tuple(mult), unit, name=f"{h.name}^3")
    coms = []
    for a in range(n):
        for b in range(n):
            for c in range(n):
                acc: dict = {}
                for x, a1, a2 in comult[a]:
                    for y, b1, b2 in comult[b]:
                        for z, c1, c2 in comult[c]:
                            key = (idx.flatten((a1, b1, c1)), idx.flatten((a2, b2, c2)))
                            acc[key] = acc.get(key, _ZERO) + x * y * z
                coms.append(tuple((v, l, r) for (l, r), v in sorted(acc.items()) if v))
    counit = Vec(N, {idx.flatten((a, b, c)): eps[a] * eps[b] * eps[c]
                     for a in range(n) for b in range(n) for c in range(n)})
    coalg = StructCoalgebra(names, tuple(coms), counit, name=f"{h.name}^3")
    return TripleBialgebra(h, alg, coalg)


def verify_triple_bialgebra(tb: TripleBialgebra) -> Report:
    report = Report()
    verify_algebra(tb.algebra, report)
    verify_coalgebra(tb.coalgebra, report)
    verify_bialgebra_compat(tb.algebra, tb.coalgebra, report)
    return report


def graph_vectors(h: StructHopf, f1: Mat, f2: Mat) -> list[Vec]:
    """f1(a_1) (x) a_2 (x) f2(a_3) for every basis element a."""
    out = []
    n = h.dim
    for a in range(n):
        acc: dict = {}
        for (i, j, k), c in h.terms(a, 3).items():
            accumulate(acc, c, tensor_product(tensor_product(f1.columns[i], h.e(j)), f2.columns[k]))
        out.append(Vec._raw(n ** 3, acc))
    return out


def _sparse_named(tb: TripleBialgebra, v: Vec) -> dict:
    return {tb.algebra.basis[k]: x for k, x in sorted(v.items())}


def graph_check(h: StructHopf, b1: Mat, b2: Mat, tb: TripleBialgebra | None = None) -> Report:
    """Is the graph of (B1, B2) a subbialgebra of H^(x)3 with the twisted product?"""
    require_cocommutative(h)
    for name, b in (("B1", b1), ("B2", b2)):
        if coalgebra_hom_witness(b, h) is not None:
            raise PreconditionError(f"{name} is not a coalgebra homomorphism")
        if b.apply(h.unit) != h.unit:
            raise PreconditionError(f"{name}(1) != 1")
    tb = triple_bialgebra(h) if tb is None else tb
    report = Report()
    gens = graph_vectors(h, b1, b2)
    gr = Subspace.span(tb.dim, gens)
    report.info("GRAPH.dim", {"dim": gr.rank})
    report.add("GRAPH.unit", gr.contains(tb.algebra.unit), {})
    witness = None
    for a, x in enumerate(gens):
        for b, y in enumerate(gens):
            prod = tb.mul(x, y)
            if not gr.contains(prod):
                witness = {"a": a, "b": b, "product": _sparse_named(tb, prod)}
                break
        if witness:
            break
    report.add("GRAPH.mult_closure", witness is None, witness)
    grgr = gr.tensor(gr)
    w = next(({"a": a} for a, x in enumerate(gens) if not grgr.contains(tb.comul(x))), None)
    report.add("GRAPH.comult_closure", w is None, w)
    return report

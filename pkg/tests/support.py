"""Test-only builders: structure-constant mutants and basis-map families."""

import itertools
import random
from fractions import Fraction

from hopftruss.exact import Mat, Vec
from hopftruss.hopf import StructAlgebra, StructCoalgebra, StructHopf


def with_mult_entry(h: StructHopf, i: int, j: int, k: int, delta) -> StructHopf:
    mult = [list(row) for row in h.algebra.mult]
    mult[i][j] = mult[i][j] + Vec.basis(h.dim, k) * Fraction(delta)
    alg = StructAlgebra(h.basis, tuple(tuple(r) for r in mult), h.unit, h.name)
    return StructHopf(alg, h.coalgebra, h.antipode, h.name)


def with_comult_entry(h: StructHopf, i: int, l: int, r: int, delta) -> StructHopf:
    comult = [dict(((a, b), c) for c, a, b in terms) for terms in h.coalgebra.comult]
    comult[i][(l, r)] = comult[i].get((l, r), Fraction(0)) + Fraction(delta)
    rows = tuple(tuple((c, a, b) for (a, b), c in sorted(d.items()) if c) for d in comult)
    co = StructCoalgebra(h.basis, rows, h.coalgebra.counit, h.name)
    return StructHopf(h.algebra, co, h.antipode, h.name)


def with_antipode_entry(h: StructHopf, i: int, j: int, delta) -> StructHopf:
    e = dict(h.antipode.entries)
    e[(i, j)] = e.get((i, j), Fraction(0)) + Fraction(delta)
    return StructHopf(h.algebra, h.coalgebra, Mat.from_entries(h.dim, h.dim, e), h.name)


def mutants(h: StructHopf, per_kind: int = 5, seed: int = 0):
    """``per_kind`` distinct single-entry perturbations (position, delta) each of mult, comult and antipode."""
    rng = random.Random(seed)
    n = h.dim
    out = []
    for kind, positions in (
        ("mult", list(itertools.product(range(n), repeat=3))),
        ("comult", list(itertools.product(range(n), repeat=3))),
        ("antipode", list(itertools.product(range(n), repeat=2))),
    ):
        deltas = (1, -1, Fraction(1, 2), 2)
        candidates = list(itertools.product(positions, deltas))
        for pos, delta in rng.sample(candidates, min(per_kind, len(candidates))):
            if kind == "mult":
                out.append((kind, pos, with_mult_entry(h, *pos, delta)))
            elif kind == "comult":
                out.append((kind, pos, with_comult_entry(h, *pos, delta)))
            else:
                out.append((kind, pos, with_antipode_entry(h, *pos, delta)))
    return out


def unit_fixing_basis_maps(n: int, unit: int = 0):
    """Every linear map sending basis elements to basis elements with e_unit fixed."""
    others = [a for a in range(n) if a != unit]
    for vals in itertools.product(range(n), repeat=len(others)):
        images = [unit] * n
        for a, v in zip(others, vals):
            images[a] = v
        yield Mat.from_columns(n, [Vec.basis(n, x) for x in images])


def random_rational_matrix(rng: random.Random, rows: int, cols: int, density: float = 0.6) -> Mat:
    entries = {}
    for i in range(rows):
        for j in range(cols):
            if rng.random() < density:
                entries[(i, j)] = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    return Mat.from_entries(rows, cols, entries)

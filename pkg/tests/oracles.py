"""Independent brute-force oracles used to freeze expected values.

None of these share code paths with the library beyond reading group tables.
"""

import itertools
from fractions import Fraction

import numpy as np


def group_rbs_bruteforce(table, identity, unit_fixed):
    """Every (B1, B2) pair satisfying both group identities, by exhaustive search.

    Vectorized over all B2 candidates for each B1 candidate.
    """
    t = np.array(table, dtype=np.int64)
    n = len(table)
    if unit_fixed:
        free = [a for a in range(n) if a != identity]
        maps = []
        for vals in itertools.product(range(n), repeat=n - 1):
            m = [identity] * n
            for a, v in zip(free, vals):
                m[a] = v
            maps.append(m)
    else:
        maps = [list(p) for p in itertools.product(range(n), repeat=n)]
    all_b2 = np.array(maps, dtype=np.int64)
    rows = np.arange(len(maps))
    found = []
    for b1 in maps:
        ok = np.ones(len(maps), dtype=bool)
        for a in range(n):
            for b in range(n):
                x = t[t[b1[a], b], all_b2[:, a]]
                ok &= t[b1[a], b1[b]] == np.array(b1)[x]
                ok &= t[all_b2[:, b], all_b2[:, a]] == all_b2[rows, x]
        for k in np.nonzero(ok)[0]:
            found.append((tuple(b1), tuple(int(v) for v in all_b2[k])))
    return sorted(found)


def rank_by_column_elimination(rows):
    """Rank via fraction-free elimination on columns (transpose-first Bareiss)."""
    if not rows:
        return 0
    cols = [[Fraction(rows[i][j]) for i in range(len(rows))] for j in range(len(rows[0]))]
    r = 0
    m = len(rows)
    for i in range(m):
        piv = next((j for j in range(r, len(cols)) if cols[j][i] != 0), None)
        if piv is None:
            continue
        cols[r], cols[piv] = cols[piv], cols[r]
        p = cols[r]
        for j in range(len(cols)):
            if j != r and cols[j][i] != 0:
                f = cols[j][i] / p[i]
                cols[j] = [x - f * y for x, y in zip(cols[j], p)]
        r += 1
    return r

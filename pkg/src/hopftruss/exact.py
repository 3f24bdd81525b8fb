"""Exact rational scalars and sparse linear algebra over Q.

Scalars are :class:`fractions.Fraction`.  Vectors and matrices are sparse and
canonical: zero coefficients are never stored, so ``==`` is structural
equality.  Tensor indices flatten row-major with the left factor most
significant, i.e. ``e_i (x) e_j`` in dims ``(m, n)`` sits at ``i*n + j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Rational = Fraction

__all__ = [
    "Rational",
    "parse_rational",
    "format_rational",
    "rat_arith",
    "Vec",
    "Mat",
    "TensorIndex",
    "tensor_product",
    "rref",
    "rank",
    "image_basis",
    "kernel_basis",
    "in_span",
    "Subspace",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def parse_rational(value) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or an int into a canonical Fraction.

    Floats are rejected; a binary float is not an exact input.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise ValueError(f"not an exact rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if not isinstance(value, str):
        raise ValueError(f"not a rational: {value!r}")
    text = value.strip()
    num, sep, den = text.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"malformed rational {value!r}") from None
    if q == 0:
        raise ValueError(f"zero denominator in {value!r}")
    return Fraction(p, q)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def rat_arith(a: Fraction, b: Fraction, op: str) -> Fraction:
    a, b = Fraction(a), Fraction(b)
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if op == "/":
        if b == 0:
            raise ZeroDivisionError("division of a rational by zero")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    return parse_rational(x)


class Vec:
    """Immutable sparse vector of fixed dimension."""

    __slots__ = ("dim", "_d", "_hash")

    def __init__(self, dim: int, entries: Mapping[int, object] | None = None):
        dim = int(dim)
        if dim < 0:
            raise ValueError("negative dimension")
        d = {}
        if entries:
            for i, x in entries.items():
                i = int(i)
                if not 0 <= i < dim:
                    raise IndexError(f"index {i} out of range for dim {dim}")
                x = _as_fraction(x)
                if x:
                    d[i] = x
        self.dim = dim
        self._d = d
        self._hash = None

    @classmethod
    def _raw(cls, dim: int, d: dict) -> "Vec":
        # trusted constructor: d maps in-range ints to Fractions; zeros dropped here
        v = object.__new__(cls)
        v.dim = dim
        v._d = {k: x for k, x in d.items() if x}
        v._hash = None
        return v

    @classmethod
    def zero(cls, dim: int) -> "Vec":
        return cls._raw(dim, {})

    @classmethod
    def basis(cls, dim: int, i: int) -> "Vec":
        if not 0 <= i < dim:
            raise IndexError(f"index {i} out of range for dim {dim}")
        return cls._raw(dim, {i: _ONE})

    @classmethod
    def from_list(cls, values: Sequence) -> "Vec":
        return cls(len(values), {i: x for i, x in enumerate(values)})

    def to_list(self) -> list[Fraction]:
        out = [_ZERO] * self.dim
        for i, x in self._d.items():
            out[i] = x
        return out

    def items(self):
        return self._d.items()

    def support(self) -> list[int]:
        return sorted(self._d)

    def __getitem__(self, i: int) -> Fraction:
        return self._d.get(i, _ZERO)

    def __bool__(self) -> bool:
        return bool(self._d)

    def __len__(self) -> int:
        return self.dim

    def __eq__(self, other) -> bool:
        if not isinstance(other, Vec):
            return NotImplemented
        return self.dim == other.dim and self._d == other._d

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.dim, frozenset(self._d.items())))
        return self._hash

    def _check(self, other: "Vec") -> None:
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch {self.dim} != {other.dim}")

    def __add__(self, other: "Vec") -> "Vec":
        self._check(other)
        d = dict(self._d)
        for i, x in other._d.items():
            d[i] = d.get(i, _ZERO) + x
        return Vec._raw(self.dim, d)

    def __sub__(self, other: "Vec") -> "Vec":
        self._check(other)
        d = dict(self._d)
        for i, x in other._d.items():
            d[i] = d.get(i, _ZERO) - x
        return Vec._raw(self.dim, d)

    def __neg__(self) -> "Vec":
        return Vec._raw(self.dim, {i: -x for i, x in self._d.items()})

    def __mul__(self, c) -> "Vec":
        c = _as_fraction(c)
        if not c:
            return Vec.zero(self.dim)
        return Vec._raw(self.dim, {i: c * x for i, x in self._d.items()})

    __rmul__ = __mul__

    def __repr__(self) -> str:
        inner = ", ".join(f"{i}: {format_rational(x)}" for i, x in sorted(self._d.items()))
        return f"Vec({self.dim}, {{{inner}}})"

    def sort_key(self) -> tuple:
        return tuple(self.to_list())


def accumulate(acc: dict, coef: Fraction, v: Vec) -> None:
    """acc += coef * v, in place on a plain dict (zeros are cleaned later)."""
    for k, x in v._d.items():
        acc[k] = acc.get(k, _ZERO) + coef * x


class Mat:
    """Immutable sparse matrix stored by columns.

    Column ``j`` is the image of basis vector ``j`` when the matrix represents
    a linear map.
    """

    __slots__ = ("rows", "cols", "columns", "_hash")

    def __init__(self, rows: int, cols: int, columns: Sequence[Vec]):
        if len(columns) != cols:
            raise ValueError("column count mismatch")
        for c in columns:
            if c.dim != rows:
                raise ValueError("column dimension mismatch")
        self.rows = rows
        self.cols = cols
        self.columns = tuple(columns)
        self._hash = None

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[Vec]) -> "Mat":
        return cls(rows, len(columns), columns)

    @classmethod
    def from_rows(cls, data: Sequence[Sequence]) -> "Mat":
        nrows = len(data)
        ncols = len(data[0]) if nrows else 0
        cols: list[dict] = [dict() for _ in range(ncols)]
        for i, row in enumerate(data):
            if len(row) != ncols:
                raise ValueError("ragged matrix rows")
            for j, x in enumerate(row):
                x = _as_fraction(x)
                if x:
                    cols[j][i] = x
        return cls(nrows, ncols, [Vec._raw(nrows, c) for c in cols])

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Mapping[tuple[int, int], object]) -> "Mat":
        cd: list[dict] = [dict() for _ in range(cols)]
        for (i, j), x in entries.items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError(f"entry {(i, j)} out of range")
            cd[j][i] = _as_fraction(x)
        return cls(rows, cols, [Vec._raw(rows, c) for c in cd])

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls(n, n, [Vec.basis(n, j) for j in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "Mat":
        return cls(rows, cols, [Vec.zero(rows) for _ in range(cols)])

    @property
    def entries(self) -> dict[tuple[int, int], Fraction]:
        return {(i, j): x for j, c in enumerate(self.columns) for i, x in c.items()}

    def column(self, j: int) -> Vec:
        return self.columns[j]

    def to_rows(self) -> list[list[Fraction]]:
        out = [[_ZERO] * self.cols for _ in range(self.rows)]
        for j, c in enumerate(self.columns):
            for i, x in c.items():
                out[i][j] = x
        return out

    def transpose(self) -> "Mat":
        cd: list[dict] = [dict() for _ in range(self.rows)]
        for j, c in enumerate(self.columns):
            for i, x in c.items():
                cd[i][j] = x
        return Mat(self.cols, self.rows, [Vec._raw(self.cols, c) for c in cd])

    def apply(self, v: Vec) -> Vec:
        if v.dim != self.cols:
            raise ValueError(f"cannot apply {self.rows}x{self.cols} matrix to dim {v.dim}")
        acc: dict = {}
        cols = self.columns
        for j, x in v._d.items():
            accumulate(acc, x, cols[j])
        return Vec._raw(self.rows, acc)

    def __matmul__(self, other):
        if isinstance(other, Vec):
            return self.apply(other)
        if isinstance(other, Mat):
            if other.rows != self.cols:
                raise ValueError("matrix shape mismatch")
            return Mat(self.rows, other.cols, [self.apply(c) for c in other.columns])
        return NotImplemented

    def __add__(self, other: "Mat") -> "Mat":
        self._check(other)
        return Mat(self.rows, self.cols, [a + b for a, b in zip(self.columns, other.columns)])

    def __sub__(self, other: "Mat") -> "Mat":
        self._check(other)
        return Mat(self.rows, self.cols, [a - b for a, b in zip(self.columns, other.columns)])

    def __neg__(self) -> "Mat":
        return Mat(self.rows, self.cols, [-c for c in self.columns])

    def __mul__(self, c) -> "Mat":
        return Mat(self.rows, self.cols, [col * c for col in self.columns])

    __rmul__ = __mul__

    def _check(self, other: "Mat") -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("matrix shape mismatch")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and self.columns == other.columns

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.columns))
        return self._hash

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_rational(x) for x in row) for row in self.to_rows())
        return f"Mat({self.rows}x{self.cols}: [{body}])"

    def sort_key(self) -> tuple:
        return tuple(x for row in self.to_rows() for x in row)


@dataclass(frozen=True)
class TensorIndex:
    """Row-major multi-index over tensor factors, left factor most significant."""

    dims: tuple[int, ...]

    @property
    def size(self) -> int:
        n = 1
        for d in self.dims:
            n *= d
        return n

    def flatten(self, idx: Sequence[int]) -> int:
        if len(idx) != len(self.dims):
            raise ValueError("multi-index length mismatch")
        flat = 0
        for i, d in zip(idx, self.dims):
            if not 0 <= i < d:
                raise IndexError(f"index {i} out of range for factor of dim {d}")
            flat = flat * d + i
        return flat

    def unflatten(self, flat: int) -> tuple[int, ...]:
        if not 0 <= flat < self.size:
            raise IndexError(f"flat index {flat} out of range")
        out = []
        for d in reversed(self.dims):
            flat, r = divmod(flat, d)
            out.append(r)
        return tuple(reversed(out))


def tensor_product(x: Vec, y: Vec) -> Vec:
    n = y.dim
    d = {}
    for i, a in x._d.items():
        for j, b in y._d.items():
            d[i * n + j] = a * b
    return Vec._raw(x.dim * n, d)


def _rref_rows(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        piv = [x * inv for x in rows[r]]
        rows[r] = piv
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                row = rows[i]
                rows[i] = [a - f * b for a, b in zip(row, piv)]
        pivots.append(c)
        r += 1
    return rows, pivots


def rref(m: Mat) -> tuple[Mat, tuple[int, ...]]:
    """Reduced row-echelon form (leftmost pivots, fully reduced) and pivot columns."""
    rows, pivots = _rref_rows(m.to_rows(), m.cols)
    if not rows:
        return Mat.zero(m.rows, m.cols), ()
    return Mat.from_rows(rows), tuple(pivots)


def rank(m: Mat) -> int:
    return len(rref(m)[1])


def image_basis(m: Mat) -> list[Vec]:
    """Canonical basis of the column space: nonzero rows of rref of the transpose."""
    red, piv = rref(m.transpose())
    rows = red.to_rows()
    return [Vec.from_list(rows[k]) for k in range(len(piv))]


def kernel_basis(m: Mat) -> list[Vec]:
    red, piv = rref(m)
    rows = red.to_rows()
    pivset = set(piv)
    out = []
    for f in range(m.cols):
        if f in pivset:
            continue
        d = {f: _ONE}
        for r, c in enumerate(piv):
            if rows[r][f]:
                d[c] = -rows[r][f]
        out.append(Vec._raw(m.cols, d))
    return out


def in_span(vectors: Sequence[Vec], v: Vec) -> bool:
    """Membership by rank comparison after appending ``v``."""
    if not vectors:
        return not v
    base = Mat.from_columns(v.dim, list(vectors))
    ext = Mat.from_columns(v.dim, list(vectors) + [v])
    return rank(base) == rank(ext)


class Subspace:
    """A subspace kept in reduced form.

    Each basis vector has a pivot coordinate where it is 1 and every other
    basis vector is 0, so coordinates of a member are read off at the pivots.
    """

    __slots__ = ("dim", "basis", "pivots")

    def __init__(self, dim: int, basis: Sequence[Vec], pivots: Sequence[int]):
        self.dim = dim
        self.basis = tuple(basis)
        self.pivots = tuple(pivots)

    @classmethod
    def span(cls, dim: int, vectors: Iterable[Vec]) -> "Subspace":
        rows = [v.to_list() for v in vectors]
        if not rows:
            return cls(dim, (), ())
        red, piv = _rref_rows(rows, dim)
        basis = [Vec.from_list(red[k]) for k in range(len(piv))]
        return cls(dim, basis, piv)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def coordinates(self, v: Vec) -> list[Fraction] | None:
        """Coordinates of ``v`` in the reduced basis, or None if ``v`` is outside."""
        coords = [v[p] for p in self.pivots]
        acc: dict = {}
        for c, b in zip(coords, self.basis):
            if c:
                accumulate(acc, c, b)
        if Vec._raw(self.dim, acc) != v:
            return None
        return coords

    def contains(self, v: Vec) -> bool:
        return self.coordinates(v) is not None

    def tensor(self, other: "Subspace") -> "Subspace":
        basis = []
        pivots = []
        for u, p in zip(self.basis, self.pivots):
            for w, q in zip(other.basis, other.pivots):
                basis.append(tensor_product(u, w))
                pivots.append(p * other.dim + q)
        return Subspace(self.dim * other.dim, basis, pivots)

    def embedding(self) -> Mat:
        return Mat.from_columns(self.dim, list(self.basis))

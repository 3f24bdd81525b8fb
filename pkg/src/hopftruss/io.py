"""JSON file formats for Hopf algebras, groups, operators, Lie algebras,
commutative algebras, unit candidates and RB-system bundles.

Matrices are written as lists of rows: entry ``[i][j]`` is the coefficient of
basis element i in the image of basis element j, so column j is the image of
e_j.  Rationals are strings ``"p/q"`` or ``"p"``; JSON integers are accepted,
JSON floats are rejected.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .characters import CommAlgebra, rationals
from .exact import Mat, Vec, format_rational, parse_rational
from .groups import (
    FiniteGroup,
    GroupEndo,
    GroupRBSystem,
    extend_to_group_algebra,
    group_algebra,
    verify_group,
)
from .hopf import StructAlgebra, StructCoalgebra, StructHopf, verify_hopf
from .lie import LieAlgebra
from .rbs import PreconditionError, RBSystem


class FormatError(ValueError):
    """Schema violation; ``path`` is a JSON pointer-like location, ``line`` a best-effort line number."""

    def __init__(self, message: str, path: str = "$", file: str | None = None, line: int | None = None):
        where = path
        if line is not None:
            where += f" (line {line})"
        if file:
            where = f"{file}: {where}"
        super().__init__(f"{where}: {message}")
        self.path = path
        self.file = file
        self.line = line


@dataclass
class Loaded:
    """Raw JSON plus provenance."""

    data: Any
    text: str
    file: str | None
    sha256: str


def _line_of(text: str, token: str) -> int | None:
    pos = text.find(token)
    return None if pos < 0 else text.count("\n", 0, pos) + 1


def read_json(path: str) -> Loaded:
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise FormatError(f"cannot read file: {exc.strerror}", file=path) from None
    text = raw.decode("utf-8", errors="replace")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc.msg}", file=path, line=exc.lineno) from None
    return Loaded(data, text, path, hashlib.sha256(raw).hexdigest())


def from_data(data: Any) -> Loaded:
    text = json.dumps(data)
    return Loaded(data, text, None, hashlib.sha256(text.encode()).hexdigest())


class _Reader:
    """Typed accessors that turn schema problems into FormatError with a location."""

    def __init__(self, src: Loaded):
        self.src = src

    def fail(self, msg: str, path: str, token: Any = None) -> FormatError:
        line = None
        if isinstance(token, str):
            line = _line_of(self.src.text, json.dumps(token))
        return FormatError(msg, path, self.src.file, line)

    def obj(self, v, path) -> dict:
        if not isinstance(v, dict):
            raise self.fail("expected an object", path)
        return v

    def key(self, d: dict, k: str, path: str):
        if k not in d:
            raise self.fail(f"missing key {k!r}", path)
        return d[k]

    def int_(self, v, path, lo=None, hi=None) -> int:
        if isinstance(v, bool) or not isinstance(v, int):
            raise self.fail("expected an integer", path, v)
        if (lo is not None and v < lo) or (hi is not None and v >= hi):
            raise self.fail(f"integer {v} out of range", path)
        return v

    def str_(self, v, path) -> str:
        if not isinstance(v, str):
            raise self.fail("expected a string", path)
        return v

    def list_(self, v, path, length=None) -> list:
        if not isinstance(v, list):
            raise self.fail("expected a list", path)
        if length is not None and len(v) != length:
            raise self.fail(f"expected length {length}, got {len(v)}", path)
        return v

    def rat(self, v, path) -> Fraction:
        try:
            return parse_rational(v)
        except ValueError as exc:
            raise self.fail(str(exc), path, v) from None

    def vec(self, v, path, dim) -> Vec:
        items = self.list_(v, path, dim)
        return Vec.from_list([self.rat(x, f"{path}[{i}]") for i, x in enumerate(items)])

    def matrix(self, v, path, rows, cols) -> Mat:
        rs = self.list_(v, path, rows)
        if not rows:
            return Mat.zero(0, cols)
        return Mat.from_rows([self.vec(r, f"{path}[{i}]", cols).to_list() for i, r in enumerate(rs)])


def _algebra_part(r: _Reader, d: dict) -> tuple[int, tuple[str, ...], StructAlgebra]:
    name = r.str_(d.get("name", ""), "$.name")
    dim = r.int_(r.key(d, "dim", "$"), "$.dim", lo=1)
    basis = tuple(r.str_(x, f"$.basis[{i}]") for i, x in enumerate(r.list_(r.key(d, "basis", "$"), "$.basis", dim)))
    unit = r.vec(r.key(d, "unit", "$"), "$.unit", dim)
    rows = r.list_(r.key(d, "mult", "$"), "$.mult", dim)
    mult = tuple(tuple(r.vec(x, f"$.mult[{i}][{j}]", dim)
                       for j, x in enumerate(r.list_(row, f"$.mult[{i}]", dim)))
                 for i, row in enumerate(rows))
    return dim, basis, StructAlgebra(basis, mult, unit, name=name)


def parse_hopf(src: Loaded, unchecked: bool = False) -> StructHopf:
    r = _Reader(src)
    d = r.obj(src.data, "$")
    dim, basis, alg = _algebra_part(r, d)
    comult = []
    for i, terms in enumerate(r.list_(r.key(d, "comult", "$"), "$.comult", dim)):
        row = []
        for k, t in enumerate(r.list_(terms, f"$.comult[{i}]")):
            p = f"$.comult[{i}][{k}]"
            t = r.list_(t, p, 3)
            row.append((r.rat(t[0], p + "[0]"), r.int_(t[1], p + "[1]", 0, dim), r.int_(t[2], p + "[2]", 0, dim)))
        comult.append(_merge_terms(row))
    counit = r.vec(r.key(d, "counit", "$"), "$.counit", dim)
    antipode = r.matrix(r.key(d, "antipode", "$"), "$.antipode", dim, dim)
    coalg = StructCoalgebra(basis, tuple(comult), counit, name=alg.name)
    h = StructHopf(alg, coalg, antipode, name=alg.name)
    if not unchecked:
        rep = verify_hopf(h)
        if not rep.passed:
            bad = rep.failures()[0]
            raise FormatError(f"not a Hopf algebra: {bad.id} fails at {bad.witness}", "$", src.file)
    return h


def _merge_terms(terms):
    acc: dict = {}
    for c, l, r in terms:
        acc[(l, r)] = acc.get((l, r), Fraction(0)) + c
    return tuple((c, l, r) for (l, r), c in sorted(acc.items()) if c)


def _rows(m: Mat) -> list[list[str]]:
    return [[format_rational(x) for x in row] for row in m.to_rows()]


def _vec(v: Vec) -> list[str]:
    return [format_rational(x) for x in v.to_list()]


def hopf_to_data(h: StructHopf) -> dict:
    n = h.dim
    return {
        "name": h.name,
        "dim": n,
        "basis": list(h.basis),
        "unit": _vec(h.unit),
        "mult": [[_vec(h.algebra.mult[i][j]) for j in range(n)] for i in range(n)],
        "comult": [[[format_rational(c), l, r] for c, l, r in h.coalgebra.comult[i]] for i in range(n)],
        "counit": _vec(h.coalgebra.counit),
        "antipode": _rows(h.antipode),
    }


def dumps(data: Any) -> str:
    """Deterministic JSON: one key or row per line, scalar lists kept inline."""

    def inline(v) -> bool:
        return not isinstance(v, (dict, list)) or (
            isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v))

    def emit(v, pad: str) -> str:
        if inline(v):
            return json.dumps(v, separators=(", ", ": "))
        inner = pad + "  "
        if isinstance(v, dict):
            body = ",\n".join(f"{inner}{json.dumps(k)}: {emit(x, inner)}" for k, x in v.items())
            return "{\n" + body + "\n" + pad + "}"
        body = ",\n".join(inner + emit(x, inner) for x in v)
        return "[\n" + body + "\n" + pad + "]"

    return emit(data, "") + "\n"


def write_json(path: str, data: Any) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(data))


def parse_group(src: Loaded) -> FiniteGroup:
    r = _Reader(src)
    d = r.obj(src.data, "$")
    n = r.int_(r.key(d, "order", "$"), "$.order", lo=1)
    elements = tuple(r.str_(x, f"$.elements[{i}]")
                     for i, x in enumerate(r.list_(r.key(d, "elements", "$"), "$.elements", n)))
    table = tuple(tuple(r.int_(x, f"$.table[{i}][{j}]", 0, n)
                        for j, x in enumerate(r.list_(row, f"$.table[{i}]", n)))
                  for i, row in enumerate(r.list_(r.key(d, "table", "$"), "$.table", n)))
    return FiniteGroup(elements, table, r.str_(d.get("name", ""), "$.name"))


def group_to_data(g: FiniteGroup) -> dict:
    return {"name": g.name, "order": g.order, "elements": list(g.elements),
            "table": [list(row) for row in g.table]}


def parse_endo(src: Loaded, order: int, path: str = "$") -> GroupEndo:
    """A self-map of the element set, bare or under ``{"images": ...}``."""
    r = _Reader(src)
    data = src.data
    if isinstance(data, dict):
        data = r.key(data, "images", path)
        path += ".images"
    imgs = r.list_(data, path, order)
    return GroupEndo(tuple(r.int_(x, f"{path}[{i}]", 0, order) for i, x in enumerate(imgs)))


def parse_matrix(src: Loaded, dim: int, key: str | None = None, path: str = "$") -> Mat:
    """A dim x dim matrix given bare or under ``{"matrix": ...}``."""
    r = _Reader(src)
    data = src.data
    if isinstance(data, dict):
        k = key if key in data else "matrix"
        data = r.key(data, k, path)
        path = f"{path}.{k}"
    return r.matrix(data, path, dim, dim)


def parse_lie(src: Loaded) -> LieAlgebra:
    r = _Reader(src)
    d = r.obj(src.data, "$")
    n = r.int_(r.key(d, "dim", "$"), "$.dim", lo=0)
    rows = r.list_(r.key(d, "bracket", "$"), "$.bracket", n)
    table = tuple(tuple(r.vec(x, f"$.bracket[{i}][{j}]", n)
                        for j, x in enumerate(r.list_(row, f"$.bracket[{i}]", n)))
                  for i, row in enumerate(rows))
    names = d.get("basis", [])
    names = tuple(r.str_(x, f"$.basis[{i}]") for i, x in enumerate(r.list_(names, "$.basis")))
    if names and len(names) != n:
        raise r.fail(f"expected {n} basis names", "$.basis")
    return LieAlgebra(table, names, r.str_(d.get("name", ""), "$.name"))


def lie_to_data(lie: LieAlgebra) -> dict:
    n = lie.dim
    return {"name": lie.name, "dim": n, "basis": list(lie.names),
            "bracket": [[_vec(lie.bracket_table[i][j]) for j in range(n)] for i in range(n)]}


def parse_comm_algebra(src: Loaded) -> CommAlgebra:
    r = _Reader(src)
    d = r.obj(src.data, "$")
    if d.get("commutative") is not True:
        raise r.fail("commutative algebra file must declare \"commutative\": true", "$.commutative")
    _, _, alg = _algebra_part(r, d)
    try:
        return CommAlgebra(alg)
    except ValueError as exc:
        raise FormatError(str(exc), "$", src.file) from None


def comm_algebra_to_data(a: CommAlgebra) -> dict:
    alg = a.algebra
    n = alg.dim
    return {"name": alg.name, "commutative": True, "dim": n, "basis": list(alg.basis),
            "unit": _vec(alg.unit), "mult": [[_vec(alg.mult[i][j]) for j in range(n)] for i in range(n)]}


def parse_units(src: Loaded, dim: int, path: str = "$") -> list[Vec]:
    r = _Reader(src)
    data = src.data
    if isinstance(data, dict):
        data = r.key(data, "units", path)
        path += ".units"
    return [r.vec(v, f"{path}[{i}]", dim) for i, v in enumerate(r.list_(data, path))]


# ---------------------------------------------------------------- bundles


@dataclass
class Bundle:
    """A manifest resolved into objects, with the sha256 of every file it touched.

    Either ``hopf`` + ``b1`` + ``b2`` are given directly, or ``group`` + group-level
    operators are given and the Hopf-level system is the group-algebra extension
    (``b1``/``b2`` stay ``None`` when the extension is not defined).
    """

    hopf: StructHopf
    b1: Mat | None
    b2: Mat | None
    name: str = ""
    hashes: dict[str, str] = field(default_factory=dict)
    group: FiniteGroup | None = None
    group_system: GroupRBSystem | None = None
    algebra: CommAlgebra | None = None
    units: list[Vec] | None = None
    extension_error: str | None = None

    def system(self) -> RBSystem:
        if self.b1 is None or self.b2 is None:
            raise PreconditionError(self.extension_error or "bundle has no Hopf-level operators")
        return RBSystem(self.hopf, self.b1, self.b2, name=self.name or self.hopf.name)


def _resolve(base: str | None, ref: str) -> str:
    if os.path.isabs(ref) or base is None:
        return ref
    return os.path.join(os.path.dirname(base), ref)


def load_bundle(path: str, unchecked: bool = False) -> Bundle:
    return parse_bundle(read_json(path), unchecked)


def parse_bundle(src: Loaded, unchecked: bool = False) -> Bundle:
    """Keys: ``hopf`` or ``group`` (path or inline object), ``b1``/``b2`` (path or inline),
    optional ``name``, ``algebra`` (path, inline, or ``"Q"``) and ``units`` (path or inline)."""
    r = _Reader(src)
    d = r.obj(src.data, "$")
    hashes = {src.file or "<bundle>": src.sha256}

    def sub(key: str) -> tuple[Loaded, str]:
        v = r.key(d, key, "$")
        if isinstance(v, str):
            p = _resolve(src.file, v)
            loaded = read_json(p)
            hashes[p] = loaded.sha256
            return loaded, "$"
        return Loaded(v, src.text, src.file, src.sha256), f"$.{key}"

    name = r.str_(d.get("name", ""), "$.name")
    if ("hopf" in d) == ("group" in d):
        raise r.fail("bundle needs exactly one of 'hopf' or 'group'", "$")
    if "hopf" in d:
        h = parse_hopf(sub("hopf")[0], unchecked)
        mats = []
        for key in ("b1", "b2"):
            msrc, where = sub(key)
            mats.append(parse_matrix(msrc, h.dim, key, where))
        out = Bundle(h, mats[0], mats[1], name, hashes)
    else:
        g = parse_group(sub("group")[0])
        pre = verify_group(g)
        if not pre.passed:
            raise FormatError(f"not a group: {pre.failures()[0].id}", "$.group", src.file)
        endos = []
        for key in ("b1", "b2"):
            esrc, where = sub(key)
            endos.append(parse_endo(esrc, g.order, where))
        gs = GroupRBSystem(g, endos[0], endos[1])
        out = Bundle(group_algebra(g), None, None, name, hashes, group=g, group_system=gs)
        try:
            ext = extend_to_group_algebra(gs, out.hopf)
            out.b1, out.b2 = ext.b1, ext.b2
        except PreconditionError as exc:
            out.extension_error = str(exc)
    if "algebra" in d:
        if d["algebra"] == "Q":
            out.algebra = rationals()
        else:
            out.algebra = parse_comm_algebra(sub("algebra")[0])
    if "units" in d:
        usrc, where = sub("units")
        out.units = parse_units(usrc, (out.algebra or rationals()).dim, where)
    return out


def bundle_to_data(h: StructHopf, b1: Mat, b2: Mat, name: str = "", hopf_ref: str | None = None) -> dict:
    out: dict[str, Any] = {}
    if name:
        out["name"] = name
    out["hopf"] = hopf_ref if hopf_ref is not None else hopf_to_data(h)
    out["b1"] = _rows(b1)
    out["b2"] = _rows(b2)
    return out


def default_units(a: CommAlgebra) -> list[Vec]:
    """{1, -1}; only meaningful as a default for the base field."""
    return [a.unit, -a.unit]

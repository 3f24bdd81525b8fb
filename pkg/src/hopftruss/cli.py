"""``hopftruss`` command-line interface.

Exit codes: 0 every check passed, 1 at least one check failed, 2 bad input or usage.
"""

from __future__ import annotations

import argparse
import sys
from typing import Callable

from . import io
from .characters import (
    CharacterClosureError,
    OutOfDomainError,
    cal_maps,
    cayley_transform,
    decompose,
    enumerate_characters,
    full_report,
    pair_group_and_phi,
    rationals,
    verify_char_group,
)
from .descendent import descendent_hopf
from .groups import (
    DEFAULT_MAX_ORDER,
    EnumerationBoundError,
    GroupRBSystem,
    check_group_rbs,
    enumerate_group_rbs,
    extend_to_group_algebra,
    verify_group,
)
from .hopf import verify_hopf
from .lie import LieRBSystem, check_lie_rbs, from_primitives
from .pipeline import STAGES, run_pipeline
from .rbs import (
    PreconditionError,
    RBHopf,
    TheoremViolation,
    check_hopf_brace,
    check_rb_hopf,
    check_rbs,
    check_system_truss,
    check_twisted,
    from_rb_hopf,
    sigma_surjective_consequence,
    twisted_to_system,
)
from .graph import graph_check
from .report import Report, emit_report


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- helpers


def _read(args, path: str) -> io.Loaded:
    """Read a JSON input once and remember its hash for the report."""
    src = io.read_json(path)
    args.hashes[path] = src.sha256
    return src


def _hopf(path: str, args):
    return io.parse_hopf(_read(args, path), args.unchecked)


def _bundle(path: str, args) -> io.Bundle:
    b = io.load_bundle(path, args.unchecked)
    args.hashes.update(b.hashes)
    return b


def _algebra_and_units(args):
    if args.algebra == "Q":
        a = rationals()
    else:
        a = io.parse_comm_algebra(_read(args, args.algebra))
    if args.units:
        units = io.parse_units(_read(args, args.units), a.dim)
    elif args.algebra == "Q":
        units = io.default_units(a)
    else:
        raise UsageError("--units is required when the target algebra is a file")
    return a, units


# ---------------------------------------------------------------- commands


def cmd_hopf_verify(args) -> Report:
    h = io.parse_hopf(_read(args, args.file), unchecked=True)
    return verify_hopf(h)


def cmd_group_verify(args) -> Report:
    return verify_group(io.parse_group(_read(args, args.file)))


def cmd_group_enumerate(args) -> Report:
    g = io.parse_group(_read(args, args.file))
    pre = verify_group(g)
    if not pre.passed:
        return pre
    systems = enumerate_group_rbs(g, require_unit_fixed=args.fix_unit,
                                  max_order=args.max_order, jobs=args.jobs)
    r = Report()
    r.info("ENUM.count", {"count": len(systems)})
    bad = next((k for k, s in enumerate(systems) if not check_group_rbs(s).passed), None)
    r.add("ENUM.verified", bad is None, None if bad is None else {"system": bad})
    r.data["systems"] = [{"b1": list(s.b1.images), "b2": list(s.b2.images)} for s in systems]
    return r


def cmd_group_extend(args) -> Report:
    g = io.parse_group(_read(args, args.group))
    pre = verify_group(g)
    if not pre.passed:
        return pre
    s = GroupRBSystem(g, io.parse_endo(_read(args, args.b1), g.order),
                      io.parse_endo(_read(args, args.b2), g.order))
    r = check_group_rbs(s)
    try:
        ext = extend_to_group_algebra(s)
    except PreconditionError as exc:
        r.add("EXT.precondition", False, {"error": str(exc)})
        return r
    r.extend(check_rbs(ext), "EXT.")
    if args.output:
        io.write_json(args.output, io.bundle_to_data(ext.h, ext.b1, ext.b2, name=ext.name))
    return r


def cmd_rbs_check(args) -> Report:
    b = _bundle(args.bundle, args)
    return Report().extend(check_rbs(b.system()))


def cmd_rbs_descendent(args) -> Report:
    b = _bundle(args.bundle, args)
    r = Report()
    s = b.system()
    pre = check_rbs(s)
    if not pre.passed:
        r.extend(pre)
        r.add("DESC.precondition", False, {"error": "input is not a Rota-Baxter system"})
        return r
    try:
        d = descendent_hopf(s, verify_input=False)
    except TheoremViolation as exc:
        return r.extend(exc.report or Report())
    r.extend(d.report)
    if args.output:
        io.write_json(args.output, io.hopf_to_data(d.hopf))
    return r


def cmd_rbs_graph(args) -> Report:
    b = _bundle(args.bundle, args)
    s = b.system()
    return Report().extend(graph_check(b.hopf, s.b1, s.b2))


def cmd_rbs_truss(args) -> Report:
    b = _bundle(args.bundle, args)
    return Report().extend(check_system_truss(b.system()))


def _system_followups(r: Report, s, prefix: str) -> None:
    r.extend(check_rbs(s), prefix)
    r.extend(sigma_surjective_consequence(s), prefix)


def cmd_rbs_from_rb(args) -> Report:
    h = _hopf(args.hopf, args)
    bm = io.parse_matrix(_read(args, args.b), h.dim)
    r = check_rb_hopf(h, bm)
    if r.passed:
        rb = RBHopf(h, bm)
        s = from_rb_hopf(rb)
        _system_followups(r, s, "SYS.")
        sigma_id = s.sigma == h.identity_map
        r.add("SYS.sigma_identity", sigma_id, {})
        if sigma_id:
            r.extend(check_hopf_brace(h, rb.descendent_hopf()))
        if args.output:
            io.write_json(args.output, io.bundle_to_data(h, s.b1, s.b2, name=s.name))
    return r


def cmd_rbs_twisted(args) -> Report:
    h = _hopf(args.hopf, args)
    bm = io.parse_matrix(_read(args, args.b), h.dim)
    phi = io.parse_matrix(_read(args, args.phi), h.dim)
    r = check_twisted(h, bm, phi)
    if r.passed:
        s = twisted_to_system(h, bm, phi)
        _system_followups(r, s, "SYS.")
        if args.output:
            io.write_json(args.output, io.bundle_to_data(h, s.b1, s.b2, name=s.name))
    return r


def cmd_lie_check(args) -> Report:
    lie = io.parse_lie(_read(args, args.lie))
    b1 = io.parse_matrix(_read(args, args.b1), lie.dim)
    b2 = io.parse_matrix(_read(args, args.b2), lie.dim)
    return check_lie_rbs(LieRBSystem(lie, b1, b2), strict=args.strict)


def cmd_lie_from_primitives(args) -> Report:
    b = _bundle(args.bundle, args)
    ls = from_primitives(b.system())
    r = Report()
    r.info("LIE.dim", {"dim": ls.lie.dim})
    r.extend(check_lie_rbs(ls, strict=args.strict))
    if args.output:
        io.write_json(args.output, io.lie_to_data(ls.lie))
    return r


def cmd_char_enumerate(args) -> Report:
    h = _hopf(args.hopf, args)
    a, units = _algebra_and_units(args)
    cg = enumerate_characters(h, a, units)
    r = verify_char_group(cg)
    r.info("CHA.order", {"order": cg.order})
    r.data["characters"] = [f.values for f in cg.elements]
    r.data["table"] = [list(row) for row in cg.table]
    return r


def _char_setup(args):
    b = _bundle(args.bundle, args)
    a, units = _algebra_and_units(args)
    s = b.system()
    pre = check_rbs(s)
    if not pre.passed:
        raise PreconditionError(f"not a Rota-Baxter system: {pre.failures()[0].id}")
    return b, s, enumerate_characters(b.hopf, a, units)


def cmd_char_decompose(args) -> Report:
    _, s, cg = _char_setup(args)
    r = Report()
    try:
        cal = cal_maps(s, cg)
        theta, _ = cayley_transform(cal)
        pg, _ = pair_group_and_phi(cal, theta)
    except TheoremViolation as exc:
        r.extend(exc.report or Report())
        if r.passed:
            r.add("THEOREM", False, {"error": str(exc)})
        return r
    domain = cal.image("psi")
    if args.char is not None:
        if not 0 <= args.char < len(domain):
            raise UsageError(f"--char must be in [0, {len(domain)})")
        picks = [args.char]
    else:
        picks = list(range(len(domain)))
    out = []
    bad = None
    for k in picks:
        try:
            f1, f2 = decompose(domain[k], pg)
        except TheoremViolation:
            bad = {"f": k}
            break
        out.append({"index": k, "f": domain[k].values, "f1": f1.values, "f2": f2.values})
    r.add("DEM.unique", bad is None, bad)
    r.data["decompositions"] = out
    return r


def cmd_char_full(args) -> Report:
    _, s, cg = _char_setup(args)
    return full_report(s, cg)


def cmd_pipeline(args) -> Report:
    b = _bundle(args.bundle, args)
    report, _ = run_pipeline(b, args.stages, max_order=args.max_order, jobs=args.jobs)
    return report


# ---------------------------------------------------------------- parser


def _globals(parser: argparse.ArgumentParser, defaults: bool) -> None:
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    parser.add_argument("--format", choices=("json", "text"), default=d("json"), help="report format")
    parser.add_argument("--unchecked", action="store_true", default=d(False),
                        help="skip load-time Hopf verification")
    parser.add_argument("--max-order", type=int, default=d(DEFAULT_MAX_ORDER),
                        help="largest group order accepted for enumeration")
    parser.add_argument("--jobs", type=int, default=d(1), help="worker processes for enumeration")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    _globals(common, defaults=False)
    p = argparse.ArgumentParser(prog="hopftruss", description="Exact verification of Rota-Baxter systems.")
    _globals(p, defaults=True)
    top = p.add_subparsers(dest="group", required=True)

    def sub(parent, name: str, fn: Callable, help: str):
        sp = parent.add_parser(name, parents=[common], help=help)
        sp.set_defaults(func=fn)
        return sp

    hp = top.add_parser("hopf", help="Hopf algebra files").add_subparsers(dest="cmd", required=True)
    sub(hp, "verify", cmd_hopf_verify, "check the Hopf axioms").add_argument("file")

    gp = top.add_parser("group", help="finite groups").add_subparsers(dest="cmd", required=True)
    sub(gp, "verify", cmd_group_verify, "check the group axioms").add_argument("file")
    e = sub(gp, "enumerate", cmd_group_enumerate, "list every Rota-Baxter system of a group")
    e.add_argument("file")
    e.add_argument("--fix-unit", action="store_true", help="only systems with B1(1) = B2(1) = 1")
    x = sub(gp, "extend", cmd_group_extend, "extend a group system to the group algebra")
    x.add_argument("group")
    x.add_argument("b1")
    x.add_argument("b2")
    x.add_argument("-o", "--output", help="write the resulting bundle here")

    rp = top.add_parser("rbs", help="Rota-Baxter systems of Hopf algebras").add_subparsers(dest="cmd", required=True)
    sub(rp, "check", cmd_rbs_check, "check the system axioms").add_argument("bundle")
    d = sub(rp, "descendent", cmd_rbs_descendent, "build the descendent Hopf algebra")
    d.add_argument("bundle")
    d.add_argument("-o", "--output", help="write the descendent Hopf algebra here")
    sub(rp, "graph-check", cmd_rbs_graph, "test whether the graph is a subbialgebra").add_argument("bundle")
    sub(rp, "truss-check", cmd_rbs_truss, "check the Hopf truss laws").add_argument("bundle")
    f = sub(rp, "from-rb", cmd_rbs_from_rb, "system from a Rota-Baxter operator")
    f.add_argument("hopf")
    f.add_argument("b")
    f.add_argument("-o", "--output", help="write the resulting bundle here")
    t = sub(rp, "twisted", cmd_rbs_twisted, "system from a twisted Rota-Baxter operator")
    t.add_argument("hopf")
    t.add_argument("b")
    t.add_argument("phi")
    t.add_argument("-o", "--output", help="write the resulting bundle here")

    lp = top.add_parser("lie", help="Lie algebras").add_subparsers(dest="cmd", required=True)
    c = sub(lp, "check", cmd_lie_check, "check a Lie Rota-Baxter system")
    c.add_argument("lie")
    c.add_argument("b1")
    c.add_argument("b2")
    c.add_argument("--strict", action="store_true", help="also check the signed second identity")
    fp = sub(lp, "from-primitives", cmd_lie_from_primitives, "restrict a system to primitive elements")
    fp.add_argument("bundle")
    fp.add_argument("--strict", action="store_true", help="also check the signed second identity")
    fp.add_argument("-o", "--output", help="write the Lie algebra here")

    cp = top.add_parser("char", help="character groups").add_subparsers(dest="cmd", required=True)
    ce = sub(cp, "enumerate", cmd_char_enumerate, "list the characters")
    ce.add_argument("hopf")
    ce.add_argument("algebra", help="commutative algebra file, or Q")
    ce.add_argument("--units", help="candidate unit values")
    cd = sub(cp, "decompose", cmd_char_decompose, "decompose characters of the descendent")
    cd.add_argument("bundle")
    cd.add_argument("algebra", help="commutative algebra file, or Q")
    cd.add_argument("--units", help="candidate unit values")
    cd.add_argument("--char", type=int, help="index into Im(Psi) in canonical order")
    cf = sub(cp, "full-report", cmd_char_full, "run the whole character-group chain")
    cf.add_argument("bundle")
    cf.add_argument("algebra", help="commutative algebra file, or Q")
    cf.add_argument("--units", help="candidate unit values")

    pp = top.add_parser("pipeline", parents=[common], help="run named stages on a bundle")
    pp.set_defaults(func=cmd_pipeline)
    pp.add_argument("bundle")
    pp.add_argument("stages", nargs="+", choices=STAGES)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.hashes = {}
    try:
        report = args.func(args)
    except (io.FormatError, PreconditionError, EnumerationBoundError, CharacterClosureError,
            OutOfDomainError, UsageError, ValueError) as exc:
        print(f"hopftruss: error: {exc}", file=sys.stderr)
        return 2
    except TheoremViolation as exc:
        report = Report()
        if exc.report is not None:
            report.extend(exc.report)
        report.add("THEOREM", False, {"error": str(exc)})
    report.inputs.update(args.hashes)
    sys.stdout.buffer.write(emit_report(report, args.format))
    if args.format == "json":
        sys.stdout.buffer.write(b"\n")
    sys.stdout.flush()
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())

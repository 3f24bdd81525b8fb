"""Named verification stages run against a resolved bundle.

Stages run in the order given; each contributes checks under its own id
prefix, so the merged report is the same whatever order stages finish in.
"""

from __future__ import annotations

from typing import Sequence

from .characters import enumerate_characters, full_report, rationals
from .descendent import descendent_hopf, image_subhopf
from .graph import graph_check
from .groups import (
    DEFAULT_MAX_ORDER,
    check_group_rbs,
    enumerate_group_rbs,
    extension_passes,
)
from .hopf import verify_hopf
from .io import Bundle, default_units
from .rbs import PreconditionError, TheoremViolation, check_rbs, check_system_truss, lemma_idm
from .report import Report

STAGES = ("verify", "enumerate", "extend", "descendent", "graph", "truss", "char-full")


def _precondition_failed(report: Report, stage: str, exc: Exception) -> Report:
    report.add(f"{stage}.precondition", False, {"error": str(exc)})
    return report


def _stage_verify(b: Bundle, opts: dict) -> Report:
    r = Report()
    r.extend(verify_hopf(b.hopf))
    try:
        r.extend(check_rbs(b.system()))
    except PreconditionError as exc:
        _precondition_failed(r, "RBS", exc)
    return r


def _stage_enumerate(b: Bundle, opts: dict) -> Report:
    r = Report()
    if b.group is None:
        r.skip("ENUM", "bundle has no group")
        return r
    systems = enumerate_group_rbs(b.group, require_unit_fixed=True,
                                  max_order=opts.get("max_order", DEFAULT_MAX_ORDER),
                                  jobs=opts.get("jobs", 1))
    r.info("ENUM.count", {"count": len(systems)})
    bad = next((k for k, s in enumerate(systems) if not check_group_rbs(s).passed), None)
    r.add("ENUM.verified", bad is None, None if bad is None else {"system": bad})
    bad = next((k for k, s in enumerate(systems) if not extension_passes(s)), None)
    r.add("ENUM.extension", bad is None, None if bad is None else {"system": bad})
    return r


def _stage_extend(b: Bundle, opts: dict) -> Report:
    r = Report()
    if b.group_system is None:
        r.skip("EXT", "bundle has no group-level system")
        return r
    r.extend(check_group_rbs(b.group_system))
    if b.b1 is None:
        return _precondition_failed(r, "EXT", PreconditionError(b.extension_error))
    r.extend(check_rbs(b.system()), "EXT.")
    return r


def _stage_descendent(b: Bundle, opts: dict) -> Report:
    r = Report()
    try:
        s = b.system()
        d = descendent_hopf(s)
    except PreconditionError as exc:
        return _precondition_failed(r, "DESC", exc)
    except TheoremViolation as exc:
        r.extend(exc.report or Report())
        return r
    r.extend(d.report)
    r.add("DESC.dim_is_rank", d.dim == s.sigma_rank, {"dim": d.dim, "rank": s.sigma_rank})
    r.extend(image_subhopf(d, "B1"))
    r.extend(image_subhopf(d, "B2"))
    r.extend(lemma_idm(s))
    return r


def _stage_graph(b: Bundle, opts: dict) -> Report:
    try:
        return graph_check(b.hopf, b.system().b1, b.system().b2)
    except PreconditionError as exc:
        return _precondition_failed(Report(), "GRAPH", exc)


def _stage_truss(b: Bundle, opts: dict) -> Report:
    try:
        return check_system_truss(b.system())
    except PreconditionError as exc:
        return _precondition_failed(Report(), "TRUSS", exc)


def _stage_char_full(b: Bundle, opts: dict) -> Report:
    a = b.algebra or rationals()
    units = b.units if b.units is not None else default_units(a)
    try:
        s = b.system()
        pre = check_rbs(s)
        if not pre.passed:
            raise PreconditionError(f"not a Rota-Baxter system: {pre.failures()[0].id}")
        cg = enumerate_characters(b.hopf, a, units)
    except PreconditionError as exc:
        return _precondition_failed(Report(), "CHAR", exc)
    return full_report(s, cg)


_RUNNERS = {
    "verify": _stage_verify,
    "enumerate": _stage_enumerate,
    "extend": _stage_extend,
    "descendent": _stage_descendent,
    "graph": _stage_graph,
    "truss": _stage_truss,
    "char-full": _stage_char_full,
}


def run_pipeline(bundle: Bundle, stages: str | Sequence[str], **opts) -> tuple[Report, int]:
    """Run the named stages; returns the merged report and its exit code."""
    if isinstance(stages, str):
        stages = [stages]
    unknown = [s for s in stages if s not in _RUNNERS]
    if unknown:
        raise ValueError(f"unknown pipeline stage(s): {', '.join(unknown)}")
    report = Report(inputs=dict(bundle.hashes))
    for stage in stages:
        report.extend(_RUNNERS[stage](bundle, opts))
    return report, report.exit_code

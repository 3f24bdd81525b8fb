import json
import shutil
import subprocess
import sys

import pytest

from hopftruss import io
from hopftruss.cli import main
from hopftruss.exact import Mat
from hopftruss.pipeline import STAGES, run_pipeline
from hopftruss.report import Report, emit_report


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out) if out else None, err


def same_hopf(h, k):
    return (h.basis == k.basis and h.algebra.mult == k.algebra.mult and h.unit == k.unit
            and h.coalgebra.comult == k.coalgebra.comult and h.coalgebra.counit == k.coalgebra.counit
            and h.antipode == k.antipode)


def statuses(doc):
    return {c["id"]: c["status"] for c in doc["checks"]}


class TestEmit:
    def test_empty_report(self):
        assert emit_report(Report()) == b'{"checks":[],"summary":{"pass":0,"fail":0,"skipped":0,"info":0}}'

    def test_witness_schema(self):
        r = Report()
        r.add("RB1", False, {"a": 1, "b": 2})
        assert b'"witness":{"a":1,"b":2}' in emit_report(r)
        assert r.exit_code == 1

    def test_pass_count(self):
        r = Report()
        for k in range(4):
            r.add(f"C{k}", True)
        assert json.loads(emit_report(r))["summary"]["pass"] == 4
        assert r.exit_code == 0

    def test_checks_sorted_by_id(self):
        r = Report()
        r.add("b", True)
        r.add("a", True)
        assert [c["id"] for c in json.loads(emit_report(r))["checks"]] == ["a", "b"]

    def test_text_format(self):
        r = Report()
        r.add("RB1", False, {"a": 1, "b": 2})
        r.add("RB2", True)
        text = emit_report(r, "text").decode().splitlines()
        assert text[0].startswith("FAIL") and "RB1" in text[0] and '{"a":1,"b":2}' in text[0]
        assert text[1].startswith("PASS")
        assert text[-1] == "summary: 1 pass, 1 fail, 0 skipped, 0 info"


class TestFiles:
    def test_hopf_round_trip(self, data_dir, hopfs, tmp_path):
        for name in ("c2", "c3", "c4", "s3"):
            h = io.parse_hopf(io.read_json(str(data_dir / f"f{name}.json")))
            assert same_hopf(h, hopfs[name.upper()])
            p = tmp_path / f"{name}.json"
            io.write_json(str(p), io.hopf_to_data(h))
            assert same_hopf(io.parse_hopf(io.read_json(str(p))), h)

    def test_group_round_trip(self, data_dir, groups, tmp_path):
        g = io.parse_group(io.read_json(str(data_dir / "s3.json")))
        assert g.table == groups["S3"].table
        p = tmp_path / "g.json"
        io.write_json(str(p), io.group_to_data(g))
        assert io.parse_group(io.read_json(str(p))).table == g.table

    def test_dumps_is_deterministic(self, hopfs):
        d = io.hopf_to_data(hopfs["S3"])
        assert io.dumps(d) == io.dumps(json.loads(io.dumps(d)))

    def test_zero_denominator(self, data_dir, tmp_path):
        text = (data_dir / "fc2.json").read_text().replace('"counit": ["1", "1"]', '"counit": ["1", "1/0"]')
        p = tmp_path / "bad.json"
        p.write_text(text)
        with pytest.raises(io.FormatError) as exc:
            io.parse_hopf(io.read_json(str(p)))
        msg = str(exc.value)
        assert "$.counit[1]" in msg
        line = next(k for k, s in enumerate(text.splitlines(), 1) if "1/0" in s)
        assert f"line {line}" in msg

    def test_wrong_dimension(self, data_dir):
        d = json.loads((data_dir / "fc2.json").read_text())
        d["unit"] = ["1"]
        with pytest.raises(io.FormatError):
            io.parse_hopf(io.from_data(d))

    def test_invalid_json(self, tmp_path):
        p = tmp_path / "x.json"
        p.write_text("{")
        with pytest.raises(io.FormatError):
            io.read_json(str(p))

    def test_unchecked_skips_verification(self, data_dir):
        d = json.loads((data_dir / "fc2.json").read_text())
        d["antipode"] = [["0", "0"], ["0", "0"]]
        with pytest.raises(io.FormatError):
            io.parse_hopf(io.from_data(d))
        h = io.parse_hopf(io.from_data(d), unchecked=True)
        assert h.antipode == Mat.zero(2, 2)

    def test_bundle_hashes(self, data_dir):
        b = io.load_bundle(str(data_dir / "c2-inverse.bundle"))
        assert len(b.hashes) == 2
        assert all(len(v) == 64 for v in b.hashes.values())

    def test_group_bundle(self, data_dir):
        b = io.load_bundle(str(data_dir / "s3-group.bundle"))
        assert b.group is not None and b.group_system is not None
        assert b.hopf.dim == 6

    def test_comm_algebra_requires_flag(self, hopfs):
        from hopftruss.characters import CommAlgebra
        d = io.comm_algebra_to_data(CommAlgebra(hopfs["C2"].algebra))
        assert io.parse_comm_algebra(io.from_data(d)).dim == 2
        d.pop("commutative")
        with pytest.raises(io.FormatError):
            io.parse_comm_algebra(io.from_data(d))


class TestCli:
    def test_rbs_check_inverse_bundle(self, capsys, data_dir):
        code, doc, _ = run_json(capsys, "rbs", "check", data_dir / "c2-inverse.bundle")
        assert code == 0
        assert doc["summary"]["fail"] == 0 and doc["summary"]["pass"] > 0
        assert len(doc["inputs"]) == 2

    def test_enumerate_c3(self, capsys, data_dir):
        code, doc, _ = run_json(capsys, "group", "enumerate", data_dir / "c3.json", "--fix-unit")
        assert code == 0
        assert next(c for c in doc["checks"] if c["id"] == "ENUM.count")["witness"] == {"count": 4}
        assert len(doc["data"]["systems"]) == 4

    def test_zero_denominator_exit_2(self, capsys, data_dir, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text((data_dir / "fc2.json").read_text().replace('["1", 1, 1]', '["1/0", 1, 1]'))
        code, out, err = run(capsys, "hopf", "verify", p)
        assert code == 2 and out == ""
        assert "$.comult[1][0][0]" in err and "line" in err

    def test_missing_file_exit_2(self, capsys, tmp_path):
        code, _, err = run(capsys, "hopf", "verify", tmp_path / "none.json")
        assert code == 2 and err

    def test_usage_error_exit_2(self, capsys):
        code, _, _ = run(capsys, "rbs", "frobnicate")
        assert code == 2

    def test_max_order_exit_2(self, capsys, data_dir):
        code, _, err = run(capsys, "--max-order", "4", "group", "enumerate", data_dir / "s3.json")
        assert code == 2 and "order" in err

    def test_failing_check_exit_1(self, capsys, data_dir, tmp_path):
        d = json.loads((data_dir / "c2-inverse.bundle").read_text())
        d["hopf"] = str(data_dir / "fc2.json")
        d["b2"] = [["0", "0"], ["0", "0"]]
        p = tmp_path / "bad.bundle"
        p.write_text(json.dumps(d))
        code, doc, _ = run_json(capsys, "rbs", "check", p)
        assert code == 1
        assert doc["summary"]["fail"] > 0
        assert all("witness" in c for c in doc["checks"] if c["status"] == "fail")

    def test_text_flag_after_subcommand(self, capsys, data_dir):
        code, out, _ = run(capsys, "hopf", "verify", data_dir / "fs3.json", "--format", "text")
        assert code == 0
        assert any(line.startswith("summary: ") and " 0 fail" in line for line in out.splitlines())

    def test_from_rb_writes_bundle(self, capsys, data_dir, tmp_path):
        d = json.loads((data_dir / "fs3.json").read_text())
        b = tmp_path / "s.json"
        b.write_text(json.dumps(d["antipode"]))
        out = tmp_path / "sys.bundle"
        code, doc, _ = run_json(capsys, "rbs", "from-rb", data_dir / "fs3.json", b, "-o", out)
        assert code == 0
        code, doc, _ = run_json(capsys, "rbs", "check", out)
        assert code == 0

    def test_descendent_output(self, capsys, data_dir, tmp_path):
        out = tmp_path / "d.json"
        code, _, _ = run_json(capsys, "rbs", "descendent", data_dir / "c2-inverse.bundle", "-o", out)
        assert code == 0
        code, _, _ = run_json(capsys, "hopf", "verify", out)
        assert code == 0

    def test_graph_and_truss(self, capsys, data_dir):
        for cmd in ("graph-check", "truss-check"):
            code, doc, _ = run_json(capsys, "rbs", cmd, data_dir / "s3-inverse.bundle")
            assert code == 0, cmd

    def test_char_commands(self, capsys, data_dir):
        code, doc, _ = run_json(capsys, "char", "enumerate", data_dir / "fs3.json", "Q",
                                "--units", data_dir / "units-pm1.json")
        assert code == 0 and len(doc["data"]["characters"]) == 2
        code, doc, _ = run_json(capsys, "char", "full-report", data_dir / "s3-inverse.bundle", "Q")
        assert code == 0 and statuses(doc)["DEM.unique"] == "pass"
        code, doc, _ = run_json(capsys, "char", "decompose", data_dir / "c2-inverse.bundle", "Q", "--char", "0")
        assert code == 0
        code, _, _ = run(capsys, "char", "decompose", data_dir / "c2-inverse.bundle", "Q", "--char", "9")
        assert code == 2

    def test_full_pipeline(self, capsys, data_dir):
        code, doc, _ = run_json(capsys, "pipeline", data_dir / "s3-group.bundle", *STAGES)
        assert code == 0
        st = statuses(doc)
        assert st["ENUM.verified"] == "pass" and st["DESC.dim_is_rank"] == "pass"

    def test_pipeline_precondition(self, data_dir):
        b = io.load_bundle(str(data_dir / "c2-inverse.bundle"))
        r, code = run_pipeline(b, ["enumerate", "extend"])
        assert code == 0
        assert r.status_of("ENUM") == "skipped" and r.status_of("EXT") == "skipped"
        with pytest.raises(ValueError):
            run_pipeline(b, ["nope"])

    def test_byte_identical(self, capsys, data_dir):
        argv = ("pipeline", data_dir / "s3-group.bundle", *STAGES)
        first = run(capsys, *argv)
        second = run(capsys, *argv)
        assert first == second

    @pytest.mark.skipif(shutil.which("hopftruss") is None, reason="console script not installed")
    def test_console_script(self, data_dir):
        p = subprocess.run(["hopftruss", "rbs", "check", str(data_dir / "c2-inverse.bundle")],
                           capture_output=True)
        assert p.returncode == 0 and p.stdout.endswith(b"\n")

    def test_module_entry(self, data_dir):
        p = subprocess.run([sys.executable, "-m", "hopftruss.cli", "hopf", "verify", str(data_dir / "fc2.json")],
                           capture_output=True)
        assert p.returncode == 0

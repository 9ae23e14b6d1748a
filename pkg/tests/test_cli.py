"""Driver behavior: pinned human output, exit-code taxonomy, and
byte-stable reports."""

import json
import subprocess
import sys

import pytest

from hopf_workbench import cli
from hopf_workbench.bank import hopf_to_json, resolve_hopf


def test_unimodular_verdict_lines(capsys):
    assert cli.run(["unimodular", "--hopf", "sweedler_q"]) == 0
    out = capsys.readouterr().out
    assert "unimodular: false, alpha(g) = -1" in out

    assert cli.run(["unimodular", "--hopf", "k_z2"]) == 0
    assert "unimodular: true" in capsys.readouterr().out


def test_unimodular_under_field_override(capsys):
    assert cli.run(["unimodular", "--hopf", "k_z2", "--field", "Fp:7"]) == 0
    assert "unimodular: true" in capsys.readouterr().out


def test_invariant_prints_the_scalar(capsys):
    assert cli.run(["invariant", "--hopf", "k_s3",
                    "--tangle", "genus1"]) == 0
    assert capsys.readouterr().out.strip() == "6"


def test_main_theorem_exit_zero_on_both_sides(capsys):
    assert cli.run(["main-theorem", "--hopf", "k_z2"]) == 0
    out = capsys.readouterr().out
    assert "1_unimodular: true" in out and "all_agree: ok" in out

    # verdicts all false is still coherent: the exit code tracks
    # agreement, not the unimodularity answer itself
    assert cli.run(["main-theorem", "--hopf", "sweedler_q"]) == 0
    out = capsys.readouterr().out
    assert "1_unimodular: false" in out and "all_agree: ok" in out
    assert "(FFFFFFFF)" in out


def test_verify_ok_and_integrals(capsys):
    assert cli.run(["verify", "--hopf", "sweedler_q"]) == 0
    capsys.readouterr()
    assert cli.run(["integrals", "--hopf", "sweedler_q"]) == 0
    out = capsys.readouterr().out
    assert "left integral: x + gx" in out
    assert "right integral: -x + gx" in out


def test_math_failure_exits_1_and_still_reports(tmp_path, capsys):
    doc = hopf_to_json(resolve_hopf("k_z2"))
    doc["antipode"] = [[0, 0, "1"]]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    report = tmp_path / "report.json"
    assert cli.run(["verify", "--hopf", str(bad),
                    "--report", str(report)]) == 1
    assert "FAIL" in capsys.readouterr().out
    got = json.loads(report.read_text())
    assert any(not c["passed"] for c in got["checks"])


def test_precondition_exits_2(capsys):
    assert cli.run(["coend", "--hopf", "sweedler_q"]) == 2
    assert "precondition" in capsys.readouterr().err
    assert cli.run(["invariant", "--hopf", "sweedler_q",
                    "--tangle", "genus1"]) == 2
    assert cli.run(["invariant", "--hopf", "k_s3"]) == 2
    assert "--tangle" in capsys.readouterr().err


def test_input_errors_exit_3(tmp_path, capsys):
    assert cli.run(["verify", "--hopf", "no_such.json"]) == 3

    bad = tmp_path / "broken.json"
    bad.write_text("{not json")
    assert cli.run(["verify", "--hopf", str(bad)]) == 3

    t = tmp_path / "ill.hbt"
    t.write_text("Y ; cup\n")
    assert cli.run(["invariant", "--hopf", "k_s3",
                    "--tangle", str(t)]) == 3

    with pytest.raises(SystemExit) as ei:
        cli.run(["no-such-command", "--hopf", "k_z2"])
    assert ei.value.code == 3
    with pytest.raises(SystemExit) as ei:
        cli.run(["verify"])
    assert ei.value.code == 3
    with pytest.raises(SystemExit) as ei:
        cli.run(["verify", "--hopf", "k_z2", "--tangle", "x"])
    assert ei.value.code == 3
    capsys.readouterr()

    assert cli.run(["verify", "--hopf", "k_z2", "--field", "R"]) == 3
    capsys.readouterr()


def test_emit_report_shape():
    assert cli.emit_report([]) == '{"checks":[]}'


def test_reports_are_byte_identical_across_runs(tmp_path, capsys):
    r1, r2 = tmp_path / "r1.json", tmp_path / "r2.json"
    assert cli.run(["all", "--hopf", "k_s3", "--report", str(r1)]) == 0
    out1 = capsys.readouterr().out
    assert cli.run(["all", "--hopf", "k_s3", "--report", str(r2)]) == 0
    out2 = capsys.readouterr().out
    assert out1 == out2
    assert r1.read_bytes() == r2.read_bytes()
    doc = json.loads(r1.read_text())
    assert all(c["passed"] for c in doc["checks"]
               if c["name"] != "unimodular.verdict")


def test_module_entry_point_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "hopf_workbench.cli",
         "unimodular", "--hopf", "k_z2"],
        capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    assert "unimodular: true" in proc.stdout

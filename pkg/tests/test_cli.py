import json
import subprocess
import sys
from pathlib import Path

import pytest

from wha.cli import main
from wha.document import emit, emit_algebra, emit_functional, parse, parse_document
from wha.examples import cyclic_table, group_algebra, matrix_algebra
from wha.linear_core import Field

GOLDEN = Path(__file__).parent / "golden"
Q = Field.rationals()


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_exit_codes(capsys):
    assert run(capsys, "verify", GOLDEN / "q_z3.wha.json")[0] == 0
    assert run(capsys, "verify", GOLDEN / "invalid" / "bad_antipode.wha.json")[0] == 1
    code, _, err = run(capsys, "verify", GOLDEN / "invalid" / "out_of_range.wha.json")
    assert code == 2 and "line 14" in err
    code, _, err = run(capsys, "verify", GOLDEN / "absent.wha.json")
    assert code == 2 and "absent" in err


def test_unknown_subcommand_is_a_usage_error(capsys):
    assert run(capsys, "frobnicate")[0] == 2


def test_haar_of_c_z2(capsys, tmp_path):
    path = tmp_path / "cz2.wha.json"
    path.write_text(emit(group_algebra(cyclic_table(2), Field.complex())))
    code, out, _ = run(capsys, "report", path, "--haar")
    assert code == 0
    assert "Haar: 0.5*g0 + 0.5*g1" in out


def test_frobenius_report(capsys):
    code, out, _ = run(capsys, "report", GOLDEN / "m2z2.wha.json", "--frobenius")
    assert code == 0
    assert "Frobenius: True" in out
    assert "1*e11 + 1*e12 + 1*e21 + 1*e22" in out


def test_grouplike_needs_a_star(capsys):
    code, _, err = run(capsys, "report", GOLDEN / "q_z3.wha.json", "--grouplike")
    assert code == 2 and "star" in err


def test_grouplike_on_pair_groupoid(capsys):
    code, out, _ = run(capsys, "report", GOLDEN / "c_pair2.wha.json", "--grouplike")
    assert code == 0
    assert "C*: True" in out and "g: 1*e11 + 1*e22" in out


def test_sectors_json(capsys):
    code, out, _ = run(capsys, "report", GOLDEN / "c_pair2.wha.json", "--sectors",
                       "--format", "json")
    assert code == 0
    d = parse_document(out)
    assert d.report["passed"] is True


def test_dual_twice_is_identity(capsys, tmp_path):
    src = GOLDEN / "q_z3.wha.json"
    once = tmp_path / "once.wha.json"
    assert run(capsys, "dual", src, "-o", once)[0] == 0
    assert once.read_text() == (GOLDEN / "dual_q_z3.wha.json").read_text()
    code, out, _ = run(capsys, "dual", once)
    assert code == 0 and out == src.read_text()


def test_twist_matches_golden(capsys):
    code, out, _ = run(capsys, "twist", GOLDEN / "q_z3.wha.json", "--kind", "op")
    assert code == 0 and out == (GOLDEN / "q_z3_op.wha.json").read_text()


def test_json_report_reverifies(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", GOLDEN / "gf5_s3.wha.json", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["report"]["passed"] is True
    path = tmp_path / "again.wha.json"
    path.write_text(out)
    assert run(capsys, "verify", path)[0] == 0


def test_bad_tolerance_environment(capsys, monkeypatch):
    monkeypatch.setenv("WHA_TOL", "tiny")
    code, _, err = run(capsys, "verify", GOLDEN / "c_pair2.wha.json")
    assert code == 2 and "WHA_TOL" in err
    monkeypatch.setenv("WHA_TOL", "1e-9")
    assert run(capsys, "verify", GOLDEN / "c_pair2.wha.json")[0] == 0


@pytest.mark.parametrize("argv, name", [
    (("group", "--cyclic", "3"), "Q[Z3]"),
    (("group", "--symmetric", "3", "--field", "GF(5)"), "GF5 S3"),
    (("groupoid", "--pair", "2", "--field", "C"), "C pair2"),
])
def test_make_round_trips(capsys, argv, name):
    code, out, _ = run(capsys, "make", *argv, "--name", name)
    assert code == 0
    A = parse(out)
    assert A.name == name and emit(A) == out


def test_make_group_needs_a_table(capsys):
    code, _, err = run(capsys, "make", "group")
    assert code == 2 and "--cyclic" in err


def test_make_group_from_table_file(capsys, tmp_path):
    table = tmp_path / "z4.json"
    table.write_text(json.dumps(cyclic_table(4)))
    code, out, _ = run(capsys, "make", "group", "--table", table)
    assert code == 0 and parse(out).dim == 4
    # a table that is not a group is a mathematical failure
    table.write_text("[[0, 1], [1, 1]]")
    assert run(capsys, "make", "group", "--table", table)[0] == 1
    # unreadable JSON is an input failure
    table.write_text("[[0, 1],")
    code, _, err = run(capsys, "make", "group", "--table", table)
    assert code == 2 and "line" in err


def test_make_bbop(capsys, tmp_path):
    B = matrix_algebra(2, Q)
    bfile, efile = tmp_path / "m2.json", tmp_path / "tr.json"
    bfile.write_text(emit_algebra(B))
    efile.write_text(emit_functional(Q, B.E))
    # the trace on M2 has index 2, so it needs rescaling
    code, _, err = run(capsys, "make", "bbop", "--B", bfile, "--E", efile)
    assert code == 1 and "index" in err
    code, out, _ = run(capsys, "make", "bbop", "--B", bfile, "--E", efile, "--normalize")
    assert code == 0 and parse(out).dim == 16


def test_make_m2z2_matches_golden(capsys):
    code, out, _ = run(capsys, "make", "m2z2")
    assert code == 0 and out == (GOLDEN / "m2z2.wha.json").read_text()


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "wha", "verify", str(GOLDEN / "q_z3.wha.json")],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "PASS" in proc.stdout

import pytest
from click.testing import CliRunner

from repequiv.cli import Result, Workspace, WorkspaceError, emit_report, main, parse_workspace
from repequiv.rmod import is_isomorphic


def run(*args):
    return CliRunner().invoke(main, list(args))


def test_empty_workspace():
    ws = Workspace.parse("")
    assert ws.algebra is None and ws.modules == {}


def test_fix_a2_loads():
    ws = parse_workspace("fix-a2")
    assert ws.algebra.dim == 3
    assert sorted(ws.modules) == ["P1", "P2", "S1", "S2"]
    assert is_isomorphic(ws.module("P2"), ws.module("S2"))[0]


def test_unknown_reference_reports_line():
    text = "[quiver] vertices = 2\narrow a 1 2\n[module P1] projective 1\n[module T] sum P1 Q7\n"
    with pytest.raises(WorkspaceError) as e:
        Workspace.parse(text)
    assert e.value.line == 4 and "Q7" in str(e.value)


def test_duplicate_and_missing_quiver():
    with pytest.raises(WorkspaceError) as e:
        Workspace.parse("[quiver] vertices = 1\n[module A] simple 1\n[module A] simple 1\n")
    assert e.value.line == 3
    with pytest.raises(WorkspaceError):
        Workspace.parse("[module A] simple 1\n")


def test_vertex_out_of_range():
    with pytest.raises(WorkspaceError) as e:
        Workspace.parse("[quiver] vertices = 2\narrow a 1 3\n")
    assert e.value.line == 2


def test_explicit_module_matrices():
    text = "[quiver] vertices = 2\narrow a 1 2\n[module M] dims = (1,1)\nmat a = [[1]]\n[module P] projective 1\n"
    ws = Workspace.parse(text)
    assert is_isomorphic(ws.module("M"), ws.module("P"))[0]


def test_bad_matrix_shape_is_an_input_error(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("[quiver] vertices = 2\narrow a 1 2\n[module M] dims = (1,1)\nmat a = [[1,2]]\n")
    r = run(str(p), "end-algebra", "M")
    assert r.exit_code == 2
    assert "line" in r.output


def test_missing_file_exit_code():
    r = run("/nonexistent/workspace.txt", "report")
    assert r.exit_code == 2


def test_check_tilting_pass_and_fail():
    r = run("fix-a3t", "check-tilting", "T", "--depth", "3")
    assert r.exit_code == 0, r.output
    assert "PASS" in r.output
    r = run("fix-a3", "check-tilting", "S3")
    assert r.exit_code == 1
    assert "FAIL" in r.output and "stage 0" in r.output


def test_end_algebra():
    r = run("fix-a3t", "end-algebra", "T")
    assert r.exit_code == 0, r.output
    assert "dim" in r.output


def test_check_good():
    r = run("fix-a3t", "check-good")
    assert r.exit_code == 0, r.output


def test_roundtrip_and_restriction():
    r = run("fix-a3t", "verify-roundtrip", "R1")
    assert r.exit_code == 0, r.output
    r = run("fix-a3t", "verify-roundtrip", "Y")
    assert r.exit_code == 0, r.output
    r = run("fix-a3t", "restriction-check")
    assert r.exit_code == 0, r.output


def test_apply_functors_and_describe():
    for cmd in ("apply-st", "apply-qdt"):
        name = "STALK" if cmd == "apply-st" else "Y"
        r = run("fix-a3t", cmd, name)
        assert r.exit_code == 0, r.output
        assert "degree" in r.output
    r = run("fix-a3", "describe-basis", "E", "1")
    assert r.exit_code == 0 and "basis of" in r.output


def test_report_machine_is_deterministic():
    a = run("fix-a3t", "report", "--format", "machine")
    b = run("fix-a3t", "report", "--format", "machine")
    assert a.exit_code == 0, a.output
    assert a.output == b.output
    lines = a.output.strip().splitlines()
    assert lines[0].startswith("report=repequiv") and "failures=0" in lines[0]
    assert all("status=PASS" in ln for ln in lines[1:])


def test_report_orders_failures_first():
    out = emit_report([Result("a", "x", True, "fine"), Result("b", "y", False, "broken")])
    lines = out.splitlines()
    assert lines[0].endswith("1 failed")
    assert lines[1].startswith("FAIL b y")

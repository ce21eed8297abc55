from __future__ import annotations

import json
import subprocess
import sys

import pytest

from sumcomp.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_tables_json_semion(capsys):
    code, out, _ = run(capsys, "tables", "--N", "1", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["schema"] == 1 and obj["twist"] == ["0", "1/2"]


def test_tables_csv_to_env_dir(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("SUMCOMP_OUT_DIR", str(tmp_path))
    code, out, _ = run(capsys, "tables", "--N", "2", "--format", "csv")
    assert code == 0
    assert sorted(p.name for p in tmp_path.iterdir()) == [
        "rep0_N2_assoc.csv", "rep0_N2_braid.csv", "rep0_N2_fusion.csv", "rep0_N2_twist.csv"]


def test_tables_markdown_out_file(capsys, tmp_path):
    target = tmp_path / "t.md"
    assert run(capsys, "tables", "--N", "1", "--format", "md", "--out", str(target))[0] == 0
    assert target.read_text().startswith("# Rep0 tables, N=1")


def test_verify_base_reference_pentagon(capsys):
    code, out, _ = run(capsys, "verify-base", "--N", "1", "--axiom", "pentagon")
    assert code == 0 and json.loads(out)["passed"]


def test_verify_base_theta_41_fails_with_dump(capsys):
    code, out, err = run(capsys, "verify-base", "--N", "1", "--axiom", "balancing", "--twist", "41")
    assert code == 1
    dump = json.loads(err)
    assert dump["reports"][0]["failures"][0]["labels"] == [1, 1]


def test_verify_base_heisenberg_window(capsys):
    code, out, _ = run(capsys, "verify-base", "--N", "2", "--d", "2", "--base", "heisenberg", "--window", "3")
    assert code == 0


def test_verify_rep0(capsys):
    code, out, _ = run(capsys, "verify-rep0", "--N", "2", "--window", "3")
    assert code == 0 and json.loads(out)["passed"]


def test_verify_algebra_and_compare(capsys):
    assert run(capsys, "verify-algebra", "--N", "2")[0] == 0
    assert run(capsys, "verify-algebra", "--N", "2", "--mode", "window", "--window", "2")[0] == 0
    code, out, _ = run(capsys, "compare", "--N", "2")
    assert code == 0
    assert json.loads(out)["reports"][0]["details"]["twist_41"] == "mismatch"


def test_rep0_nonlocal_demo(capsys):
    code, out, _ = run(capsys, "rep0", "--N", "1", "--d", "2")
    obj = json.loads(out)
    assert code == 0 and obj["locality"] == {"0": True, "1": False, "2": True, "3": False}


def test_verify_completion_deterministic(capsys):
    args = ("verify-completion", "--base", "cyclic:3", "--axiom", "hexagon", "--trials", "5", "--seed", "9")
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0 and out1 == out2


@pytest.mark.parametrize("argv", [
    ["tables", "--N", "0"],
    ["tables"],
    ["verify-base", "--N", "1", "--axiom", "sideways"],
    ["nonsense"],
])
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_bad_base_spec_exit_2(capsys):
    assert run(capsys, "verify-completion", "--base", "torus:3", "--trials", "1")[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "sumcomp", "tables", "--N", "1"], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["braid"] == [["0", "0"], ["0", "1/2"]]

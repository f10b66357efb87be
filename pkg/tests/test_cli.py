import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from ccf.cli import InputError, JobSpec, main, parse_complex, parse_minpoly, run
from ccf.rings import EISENSTEIN as E, GAUSSIAN as ZI

PARTITIONS = Path(__file__).resolve().parent.parent / "partitions"


def run_cli(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_complex():
    assert parse_complex("1.23+0.77i") == (Fraction(123, 100), Fraction(77, 100))
    assert parse_complex("-2i") == (0, -2)
    assert parse_complex("i") == (0, 1)
    assert parse_complex("1/3-1/7i") == (Fraction(1, 3), Fraction(-1, 7))
    assert parse_complex("0.5") == (Fraction(1, 2), 0)
    with pytest.raises(InputError, match="--value"):
        parse_complex("1.2.3+i")


def test_parse_minpoly():
    assert parse_minpoly("1,0,2", ZI) == (ZI(1), ZI(0), ZI(2))
    with pytest.raises(InputError, match="--minpoly"):
        parse_minpoly("1,2", E)
    with pytest.raises(InputError, match="leading coefficient"):
        parse_minpoly("0,1,1", E)


def test_period_command(capsys):
    code, out, _ = run_cli(["period", "--ring", "Zi", "--alg", "nearest", "--minpoly", "1,0,2", "--root", "+im"], capsys)
    data = json.loads(out)
    assert code == 0
    assert (data["m"], data["k"]) == (1, 2)
    assert data["cycle"] == [str(ZI(0, -2)), str(ZI(0, 2))]
    assert "triples_bound" in data and data["schema"] == "ccf-report/1"


def test_verify_nearest_passes(capsys):
    code, out, _ = run_cli(["verify-algorithm", "--ring", "E", "--alg", "nearest"], capsys)
    data = json.loads(out)
    assert code == 0 and data["verdict"] == "PASS"
    assert data["containment"]["ok"] and data["monotonicity"]["ok"]


def test_verify_control_fails_with_exit_2(capsys):
    code, out, _ = run_cli(["verify-algorithm", "--ring", "E", "--alg", "partition",
                            "--partition", str(PARTITIONS / "eisenstein_control_099.json")], capsys)
    data = json.loads(out)
    assert code == 2 and data["verdict"] == "FAIL"
    bad = [it for it in data["monotonicity"]["c"]["items"] if not it["ok"]]
    assert bad and all(it["witness"]["point"] for it in bad)


def test_verify_partition_058_passes(capsys):
    code, out, _ = run_cli(["verify-algorithm", "--alg", "partition",
                            "--partition", str(PARTITIONS / "eisenstein_voronoi_058.json")], capsys)
    assert code == 0 and json.loads(out)["ok"]


def test_expand_numeric(capsys):
    code, out, _ = run_cli(["expand", "--ring", "E", "--alg", "nearest", "--value", "1.23+0.77i",
                            "--precision", "256", "--steps", "40"], capsys)
    data = json.loads(out)
    assert code == 0
    assert data["schema"] == "ccf-report/1"
    assert len(data["steps"]) == 40


def test_expand_field_point_is_finite(capsys):
    code, out, _ = run_cli(["expand", "--ring", "Zi", "--value", "22/7+3/11i"], capsys)
    assert code == 0 and json.loads(out)["termination"] == "finite"


def test_expand_tie_exhausts_budget(capsys):
    code, _, err = run_cli(["expand", "--ring", "E", "--value", "0.5+0.5i", "--precision", "64",
                            "--cap", "256", "--steps", "5"], capsys)
    assert code == 3 and "budget" in err


def test_period_budget_exit_3(capsys):
    code, _, err = run_cli(["period", "--minpoly", "7,3;-11,5;13,-9", "--root", "+1", "--steps", "1"], capsys)
    assert code == 3 and "no period found within budget" in err


@pytest.mark.parametrize("argv, field", [
    (["expand", "--value", "abc"], "--value"),
    (["expand", "--minpoly", "1,2"], "--minpoly"),
    (["expand"], "--minpoly"),
    (["expand", "--value", "1+i", "--steps", "0"], "--steps"),
    (["expand", "--value", "1+i", "--precision", "512", "--cap", "256"], "--cap"),
    (["period", "--value", "1+i"], "--minpoly"),
    (["verify-algorithm", "--ring", "Zi"], "--ring"),
    (["verify-algorithm", "--alg", "partition"], "--partition"),
    (["growth-report", "--ring", "Zi", "--minpoly", "1,0,2"], "--ring"),
    (["period", "--ring", "Zi", "--minpoly", "1,0,-1"], "--minpoly"),
])
def test_input_errors_name_the_field(argv, field, capsys):
    code, _, err = run_cli(argv, capsys)
    assert code == 1
    assert field in err


def test_usage_errors_exit_1(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["expand", "--ring", "Q"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 1


def test_growth_report_csv(tmp_path, capsys):
    target = tmp_path / "sub" / "growth.csv"
    code, out, _ = run_cli(["growth-report", "--minpoly", "3,1;-2,5;7,-4", "--root", "-1",
                            "--steps", "30", "-o", str(target)], capsys)
    assert code == 0 and out == ""
    lines = target.read_text().splitlines()
    assert lines[0] == "n,ratio_sq,remark63_bound_sq,succession_rule_applied"
    assert len(lines) > 20
    assert not list(target.parent.glob(".*.tmp"))


def test_output_is_deterministic(tmp_path, capsys):
    argv = ["expand", "--ring", "E", "--minpoly", "1,0,2", "--steps", "30"]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(argv + ["-o", str(a)]) == 0
    assert main(argv + ["-o", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_corpus_command_small(tmp_path, capsys):
    target = tmp_path / "corpus.json"
    assert main(["corpus", "--count", "3", "-o", str(target)]) == 0
    data = json.loads(target.read_text())
    assert data["ok"] and data["count"] == 3 and data["seed"] == 1


def test_run_jobspec_directly():
    assert run(JobSpec("verify-algorithm", ring="E")) == 0
    assert run(JobSpec("verify-algorithm", ring="nope")) == 1


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "ccf.cli", "verify-algorithm"], capture_output=True, text=True)
    assert proc.returncode == 0 and '"verdict": "PASS"' in proc.stdout

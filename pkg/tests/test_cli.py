import json

import pytest

from ahpkit.cli import (
    EXIT_CONSISTENCY,
    EXIT_FILE,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VALIDATION,
    main,
)
from ahpkit.fixtures import fixture_bytes


@pytest.fixture
def project_file(tmp_path):
    path = tmp_path / "efficiency.ahp.json"
    path.write_bytes(fixture_bytes())
    return str(path)


@pytest.fixture
def broken_project(tmp_path):
    doc = json.loads(fixture_bytes())
    # destroy reciprocity of one B2 entry beyond the published tolerance
    doc["matrices"]["B2"][1] = 9.9
    path = tmp_path / "broken.ahp.json"
    path.write_text(json.dumps(doc))
    return str(path)


@pytest.fixture
def inconsistent_project(tmp_path):
    doc = json.loads(fixture_bytes())
    # replace B6's matrix with the cyclic triad: valid but CR > 0.1
    doc["matrices"]["B6"] = [1, 3, 1 / 3, 1 / 3, 1, 3, 3, 1 / 3, 1]
    path = tmp_path / "cyclic.ahp.json"
    path.write_text(json.dumps(doc))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_rank_first_line(project_file, capsys):
    code, out, _ = run(capsys, "rank", project_file)
    assert code == EXIT_OK
    first = out.splitlines()[0]
    assert "C11" in first and "0.2450" in first
    last = out.splitlines()[-1]
    assert "C32" in last


def test_check_all_pass(project_file, capsys):
    code, out, _ = run(capsys, "check", project_file)
    assert code == EXIT_OK
    lines = out.splitlines()
    assert len(lines) == 7
    assert all("CR=0.0000 PASS" in line for line in lines)


def test_check_inconsistent_exit_code(inconsistent_project, capsys):
    code, out, _ = run(capsys, "check", inconsistent_project)
    assert code == EXIT_CONSISTENCY
    assert any("FAIL" in line for line in out.splitlines())


def test_weights_node(project_file, capsys):
    code, out, _ = run(capsys, "weights", project_file, "--node", "B2")
    assert code == EXIT_OK
    assert out.splitlines() == [
        "C21 0.1940", "C22 0.1360", "C23 0.2980", "C24 0.3720",
    ]


def test_weights_single_child_node(project_file, capsys):
    code, out, _ = run(capsys, "weights", project_file, "--node", "B1")
    assert code == EXIT_OK
    assert out.strip() == "C11 1.0000"


def test_weights_missing_file(capsys):
    code, out, err = run(capsys, "weights", "missing.json", "--node", "B2")
    assert code == EXIT_FILE
    assert err.strip() != ""


def test_weights_unknown_node(project_file, capsys):
    code, _, err = run(capsys, "weights", project_file, "--node", "B9")
    assert code == EXIT_VALIDATION
    assert "B9" in err


def test_validate_ok(project_file, capsys):
    code, out, _ = run(capsys, "validate", project_file)
    assert code == EXIT_OK
    assert "A: ok (order 6)" in out
    assert "B2: ok (order 4)" in out


def test_validate_failure(broken_project, capsys):
    code, out, _ = run(capsys, "validate", broken_project)
    assert code == EXIT_VALIDATION
    assert "reciprocity_violation" in out


def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.ahp.json"
    bad.write_text("{nope")
    code, _, err = run(capsys, "check", str(bad))
    assert code == EXIT_FILE
    assert err


def test_usage_error(capsys):
    code, _, err = run(capsys, "frobnicate")
    assert code == EXIT_USAGE
    assert err


def test_usage_error_missing_required(capsys):
    code, _, _ = run(capsys, "weights")
    assert code == EXIT_USAGE


def test_json_errors_flag(capsys):
    code, _, err = run(capsys, "--json-errors", "check", "does-not-exist.json")
    assert code == EXIT_FILE
    payload = json.loads(err)
    assert payload["code"] == "project_error"
    assert "message" in payload


def test_json_errors_validation_code(broken_project, capsys):
    code, _, err = run(
        capsys, "--json-errors", "weights", broken_project, "--node", "B2"
    )
    assert code == EXIT_VALIDATION
    assert json.loads(err)["code"] == "reciprocity_violation"


def test_evaluate_writes_report(project_file, tmp_path, capsys):
    out_csv = tmp_path / "report.csv"
    code, out, _ = run(capsys, "evaluate", project_file, "--out", str(out_csv))
    assert code == EXIT_OK
    assert out_csv.read_bytes().startswith(b"node,weights,")
    assert "Composite ranking" in out


def test_evaluate_exit_one_on_inconsistency(inconsistent_project, tmp_path, capsys):
    code, _, _ = run(capsys, "evaluate", inconsistent_project)
    assert code == EXIT_CONSISTENCY


def test_evaluate_json_full_precision(project_file, capsys):
    code, out, _ = run(capsys, "evaluate", project_file, "--json")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["all_passed"] is True
    assert len(payload["weights"]["A"]) == 6
    assert abs(sum(r["global"] for r in payload["composite"]) - 1) < 1e-9


def test_evaluate_renders_figures(project_file, tmp_path, capsys):
    figdir = tmp_path / "figs"
    code, _, _ = run(capsys, "evaluate", project_file, "--figures", str(figdir))
    assert code == EXIT_OK
    assert (figdir / "ranking.png").is_file()
    assert (figdir / "local_weights.png").is_file()


def test_report_stdout_and_file(project_file, tmp_path, capsys):
    code, out, _ = run(capsys, "report", project_file, "--format", "text")
    assert code == EXIT_OK
    assert "Composite ranking" in out

    target = tmp_path / "r.csv"
    code, out, _ = run(
        capsys, "report", project_file, "--format", "csv", "--out", str(target)
    )
    assert code == EXIT_OK
    assert out == ""
    assert b"C24," in target.read_bytes()


def test_ri_simulate_deterministic_stdout(capsys):
    args = ["ri-simulate", "--order", "4", "--samples", "3000", "--seed", "7"]
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == EXIT_OK
    assert out1 == out2
    assert 0.5 < float(out1) < 1.3


def test_ri_simulate_bad_order(capsys):
    code, _, err = run(capsys, "ri-simulate", "--order", "2", "--samples", "10")
    assert code == EXIT_VALIDATION


def test_rank_deterministic_output(project_file, capsys):
    _, out1, _ = run(capsys, "rank", project_file)
    _, out2, _ = run(capsys, "rank", project_file)
    assert out1 == out2


def test_custom_ri_table_env(project_file, tmp_path, capsys, monkeypatch):
    # the source publication's alternative RI values
    table = {"ri": {"1": 0, "2": 0, "3": 0.525, "4": 0.882, "5": 1.11, "6": 1.25}}
    path = tmp_path / "ri.json"
    path.write_text(json.dumps(table))
    monkeypatch.setenv("AHP_RI_TABLE", str(path))
    code, out, _ = run(capsys, "check", project_file)
    assert code == EXIT_OK
    assert "RI=1.2500" in out  # order-6 rows use the custom value


def test_precision_flag(project_file, capsys):
    code, out, _ = run(capsys, "--precision", "6", "rank", project_file)
    assert code == EXIT_OK
    # full-precision global of C11 is 0.2449987649..., only 4dp rounds to 0.2450
    assert "0.244999" in out.splitlines()[0]

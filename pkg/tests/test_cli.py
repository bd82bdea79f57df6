import csv
import io
import json

import pytest

from hhrect.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_chain_text_report(capsys):
    code, out, _ = run(capsys, "chain", "-f", "x^2+y^2", "--rect", "0,1,0,1")
    assert code == 0
    assert "0.5" in out and "PASS" in out
    assert out.count("PASS") == 4


def test_identity_pass(capsys):
    code, out, _ = run(capsys, "identity", "-f", "exp(x+y)",
                       "--rect", "0,1,0,1")
    assert code == 0


def test_bounds_report(capsys):
    code, out, _ = run(capsys, "bounds", "-f", "x^2*y^2", "-p", "2")
    assert code == 0
    assert "0.0625" in out
    assert "0.125" in out


def test_json_round_trips_full_precision(capsys):
    code, out, _ = run(capsys, "identity", "-f", "x^2*y^2", "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report["command"] == "identity"
    assert report["results"]["lhs"] == pytest.approx(1 / 36, rel=1e-12)
    # serializing again must not lose a single bit
    assert json.loads(json.dumps(report)) == report
    assert set(report) == {"command", "config", "results", "verdicts", "meta"}
    assert set(report["meta"]) == {"version", "timestamp"}


def test_reports_identical_modulo_meta(capsys):
    _, first, _ = run(capsys, "bounds", "-f", "exp(x+y)", "--format", "json")
    _, second, _ = run(capsys, "bounds", "-f", "exp(x+y)", "--format", "json")
    a, b = json.loads(first), json.loads(second)
    a.pop("meta"), b.pop("meta")
    assert a == b


def test_csv_verdicts(capsys):
    code, out, _ = run(capsys, "chain", "-f", "x*y", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 4
    assert rows[0]["pass"] == "True"
    assert float(rows[0]["lhs"]) == pytest.approx(0.25)


def test_sweep_p_csv(capsys):
    code, out, _ = run(capsys, "sweep-p", "-f", "x^2*y^2",
                       "-p", "1.1,1.5,2,3,10", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 5
    for row in rows:
        assert 0.25 < float(row["coefficient"]) < 1.0
        assert float(row["bound23"]) <= float(row["bound22"])


def test_convexity_failure_exit_code(capsys):
    code, out, _ = run(capsys, "convexity", "--function=-(x^2)-y^2")
    assert code == 1
    assert "FAIL" in out


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "chain", "-f", "x + * y")
    assert code == 2
    assert "position 4" in err


def test_unknown_identifier_exit_code(capsys):
    code, _, err = run(capsys, "chain", "-f", "x + z")
    assert code == 2


def test_evaluation_error_exit_code(capsys):
    code, _, err = run(capsys, "identity", "-f", "log(x-5)")
    assert code == 3
    assert "log" in err


def test_bad_rect_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["chain", "-f", "x*y", "--rect", "0,1,0"])
    assert exc.value.code == 2


def test_integrate_tiles(capsys):
    code, out, _ = run(capsys, "integrate", "-f", "x^2*y^2", "--tiles", "1,1")
    assert code == 0
    assert "estimate" in out


def test_integrate_levels_table(capsys):
    code, out, _ = run(capsys, "integrate", "-f", "exp(x+y)", "--levels", "3")
    assert code == 0
    assert out.count("PASS") == 3


def test_output_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code = main(["chain", "-f", "x*y", "--format", "json", "-o", str(target)])
    capsys.readouterr()
    assert code == 0
    assert json.loads(target.read_text())["command"] == "chain"


def test_strict_hypothesis_failure(capsys):
    # |f_xy| of sin(x)*sin(y) is not co-ordinated convex on [0, pi]^2
    args = ["bounds", "-f", "sin(x)*sin(y)", "--rect", "0,3.14159,0,3.14159",
            "--check-hypothesis", "--samples", "2000"]
    code_default, out, _ = run(capsys, *args)
    code_strict, _, _ = run(capsys, *args, "--strict")
    assert code_default == 0
    assert code_strict == 1

import json
import math

from qhkit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_qh_subcommand_prints_oracle(capsys):
    code, out, _ = run(capsys, "qh", "--domain", "halfplane",
                       "--from", "0,1", "--to", "0,2", "--grading", "0.2")
    assert code == 0
    assert "oracle = 0.693147" in out


def test_constants_subcommand(capsys):
    code, out, _ = run(capsys, "constants", "--H", "1", "--q", "0.5",
                       "--c", "1", "--cprime", "1")
    assert code == 0
    assert "ring_M     = 4.0" in out
    assert "beta       = 12.0" in out
    assert repr(1.0 / 5184.0) in out


def test_ball_subcommand(capsys):
    code, out, _ = run(capsys, "ball", "--domain", "halfplane",
                       "--center", "0,1", "--radius", "0.5", "--resolution", "0.1")
    assert code == 0
    assert "component ball" in out


def test_unknown_flag_is_usage_error(capsys):
    code, _, _ = run(capsys, "qh", "--domain", "halfplane", "--no-such-flag")
    assert code == 1


def test_configuration_error_exit_code(capsys):
    code, _, err = run(capsys, "qh", "--domain", "halfplane",
                       "--from", "0,1", "--to", "0,2", "--grading", "0.9")
    assert code == 1
    assert "grading" in err


def test_check_wqs_bound_violation_exits_two(capsys):
    code, out, _ = run(capsys, "check-wqs", "--map", "inversion",
                       "--count", "10", "--seed", "3", "--bound", "50")
    assert code == 2
    assert "exceeds the claimed bound" in out


def test_check_wqs_within_bound_exits_zero(capsys, halfplane):
    code, _, _ = run(capsys, "check-wqs", "--map", "identity",
                     "--domain", "halfplane", "--count", "10", "--seed", "3",
                     "--bound", "1.5")
    assert code == 0


def test_repro_writes_reports_and_is_deterministic(tmp_path, capsys):
    out1 = tmp_path / "a"
    out2 = tmp_path / "b"
    code1, text1, _ = run(capsys, "repro", "example-3-1", "--out", str(out1))
    code2, text2, _ = run(capsys, "repro", "example-3-1", "--out", str(out2))
    assert code1 == code2 == 0
    assert text1 == text2
    f1 = (out1 / "repro-example-3-1.json").read_bytes()
    f2 = (out2 / "repro-example-3-1.json").read_bytes()
    assert f1 == f2
    payload = json.loads(f1)
    assert payload["passed"] is True


def test_seed_resolution_env_override(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("QH_SEED", "99")
    code, out, _ = run(capsys, "check-wqs", "--map", "identity",
                       "--domain", "halfplane", "--count", "5", "--seed", "3")
    assert code == 0
    assert "seed 99" in out


def test_config_file_supplies_defaults(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"seed": 123, "count": 7}))
    code, out, _ = run(capsys, "check-wqs", "--map", "identity",
                       "--domain", "halfplane", "--config", str(cfg))
    assert code == 0
    assert "seed 123" in out


def test_estimator_report_file(tmp_path, capsys):
    out = tmp_path / "rep"
    code, _, _ = run(capsys, "check-lwqs", "--map", "shear", "--count", "10",
                     "--seed", "4", "--out", str(out))
    assert code == 0
    payload = json.loads((out / "check-lwqs.json").read_text())
    coeff = 2.0 * math.sqrt(5.0) / 5.0
    assert payload["estimate"] >= coeff * 101.0 * (1 - 1e-12)


def test_repro_emits_csv_rows(tmp_path, capsys):
    out = tmp_path / "rows"
    code, _, _ = run(capsys, "repro", "lemma-3-6", "--count", "30",
                     "--out", str(out))
    assert code == 0
    csv_text = (out / "repro-lemma-3-6.csv").read_text().splitlines()
    assert csv_text[0] == "id,x_re,x_im,y_re,y_im,value,oracle,bound_lo,bound_hi,pass"
    assert len(csv_text) > 100

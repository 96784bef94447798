import json
import math

import pytest

from delange.cli import main, parse_csv


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_console_script_smoke():
    import subprocess
    import sys

    proc = subprocess.run(
        [sys.executable, "-m", "delange.cli", "sum", "--family", "divisor:2",
         "--x", "10", "--y", "4"],
        capture_output=True, text=True, timeout=120,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "14"
    assert "elapsed" in proc.stderr


class TestTheta:
    def test_spec_example(self, capsys):
        code, out, _ = run(
            capsys, "theta", "--kappa", "1", "--delta", "0",
            "--eta1", "0.3333333", "--eps", "0.01",
        )
        assert code == 0
        assert "branch = case1" in out
        val = float(out.splitlines()[0].split("=")[1])
        assert val == pytest.approx(0.62656, abs=5e-5)

    def test_missing_flag_is_usage_error(self, capsys):
        code, _, err = run(capsys, "theta", "--kappa", "1")
        assert code == 2
        assert "delta" in err

    def test_domain_error_exit_code(self, capsys):
        code, _, err = run(
            capsys, "theta", "--kappa", "1", "--delta", "0.5",
            "--regime", "lindelof_halasz_turan",
        )
        assert code == 1
        assert "delta" in err


class TestSum:
    def test_spec_example(self, capsys):
        code, out, _ = run(capsys, "sum", "--family", "divisor:2", "--x", "10", "--y", "4")
        assert code == 0
        assert out.splitlines()[0] == "14"

    def test_bad_window(self, capsys):
        code, _, err = run(capsys, "sum", "--family", "one", "--x", "4", "--y", "10")
        assert code == 1

    def test_unknown_family(self, capsys):
        code, _, err = run(capsys, "sum", "--family", "mertens", "--x", "10", "--y", "4")
        assert code == 1
        assert "mertens" in err

    def test_json_output(self, capsys, tmp_path):
        out_path = tmp_path / "sum.json"
        code, _, _ = run(
            capsys, "sum", "--family", "sqfree", "--x", "10", "--y", "10",
            "--out", str(out_path),
        )
        assert code == 0
        doc = json.loads(out_path.read_text())
        assert doc["sum_re"] == 6.0
        assert doc["config"]["subcommand"] == "sum"


class TestCoeffs:
    def test_squarefree_lambda0(self, capsys):
        code, out, _ = run(capsys, "coeffs", "--family", "sqfree", "--J", "8")
        assert code == 0
        doc = json.loads(out)
        assert doc["lambda_l"][0][0] == pytest.approx(0.6079271, abs=1e-6)
        assert doc["J"] == 8


class TestPredictCmd:
    def test_prints_value_and_bound(self, capsys):
        code, out, _ = run(
            capsys, "predict", "--family", "divisor:2", "--x", "10000000",
            "--y", "100000", "--N", "1",
        )
        assert code == 0
        val = float(out.splitlines()[0].split("=")[1])
        assert val == pytest.approx(1.72725e6, rel=1e-4)
        assert "remainder_bound" in out


class TestExperimentCmd:
    def test_csv_roundtrip_and_determinism(self, capsys, tmp_path):
        p1 = tmp_path / "a.csv"
        argv = [
            "experiment", "--family", "divisor:2", "--x-grid", "1e4,1e5",
            "--theta-exp", "0.8", "--N", "1", "--seed", "7", "--out", str(p1),
        ]
        assert main(argv) == 0
        first = p1.read_bytes()
        assert main(argv) == 0
        capsys.readouterr()
        assert p1.read_bytes() == first
        records, config = parse_csv(str(p1))
        assert [r.x for r in records] == [10**4, 10**5]
        assert config["family"] == "divisor:2"
        assert config["seed"] == "7"
        header = p1.read_text().splitlines()
        assert any(ln.startswith("# theta_exp=0.8") for ln in header)

    def test_emit_parse_identity(self, tmp_path, fam_div2):
        from delange.cli import emit_csv
        from delange.meanvalue import run_experiment

        records = run_experiment(fam_div2, [10**4, 10**5], 0.8, 1)
        p = tmp_path / "r.csv"
        emit_csv(records, str(p), {"family": "divisor:2"})
        back, config = parse_csv(str(p))
        assert back == records  # exact, down to float bits via repr round-trip
        assert config == {"family": "divisor:2"}

    def test_header_only_for_empty_grid(self, capsys, tmp_path):
        p = tmp_path / "empty.csv"
        code, _, _ = run(
            capsys, "experiment", "--family", "one", "--x-grid", "",
            "--out", str(p),
        )
        assert code == 0
        body = [ln for ln in p.read_text().splitlines() if not ln.startswith("#")]
        assert body == ["family,x,y,N,exact_re,exact_im,predicted_re,predicted_im,remainder_bound,rel_error"]


class TestConfigFile:
    def test_flag_overrides_config(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("kappa=2\ndelta=1\neps=0.01\n")
        code, out, _ = run(capsys, "theta", "--config", str(cfg), "--kappa", "10")
        assert code == 0
        # kappa comes from the flag (case 2), delta from the config
        assert "branch = case2" in out

    def test_config_supplies_missing(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("kappa=1\ndelta=0\n")
        code, out, _ = run(capsys, "theta", "--config", str(cfg))
        assert code == 0
        assert "branch = case1" in out

    def test_malformed_config(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("kappa 1\n")
        code, _, err = run(capsys, "theta", "--config", str(cfg), "--delta", "0")
        assert code == 2


class TestContourCmd:
    def test_json_and_csv_outputs(self, capsys, tmp_path):
        zeros = tmp_path / "zeros.txt"
        zeros.write_text("0.8 5000.0\n0.7 9000.0\n")
        out_json = tmp_path / "contour.json"
        out_csv = tmp_path / "contour.csv"
        code, out, _ = run(
            capsys, "contour", "--zeros", str(zeros), "--T", "65536",
            "--alpha", "0.6", "--cstar", "0.1", "--out", str(out_json),
            "--emit-csv", str(out_csv),
        )
        assert code == 0
        assert "PASS" in out
        doc = json.loads(out_json.read_text())
        assert doc["validation"]["clearance_ok"] is True
        assert doc["config"]["alpha"] == 0.6
        assert len(doc["vertices"]) == len(doc["piece_labels"]) + 1
        rows = out_csv.read_text().splitlines()
        assert rows[rows.index("re,im,label") + 1].count(",") == 2

    def test_rerun_byte_identical(self, capsys, tmp_path):
        zeros = tmp_path / "zeros.txt"
        zeros.write_text("0.8 5000.0\n")
        out_json = tmp_path / "contour.json"
        argv = [
            "contour", "--zeros", str(zeros), "--T", "65536", "--alpha", "0.6",
            "--cstar", "0.1", "--seed", "3", "--out", str(out_json),
        ]
        assert main(argv) == 0
        first = out_json.read_bytes()
        assert main(argv) == 0
        capsys.readouterr()
        assert out_json.read_bytes() == first

    def test_degenerate_exit(self, capsys, tmp_path):
        zeros = tmp_path / "zeros.txt"
        zeros.write_text("0.95 300.0\n")
        code, _, err = run(
            capsys, "contour", "--zeros", str(zeros), "--T", "65536",
            "--alpha", "0.6", "--cstar", "1.0", "--out", str(tmp_path / "c.json"),
        )
        assert code == 1
        assert "beta" in err


class TestQuadratureCmds:
    def test_perron_check_json(self, capsys, tmp_path):
        out = tmp_path / "p.json"
        code, text, _ = run(
            capsys, "perron-check", "--family", "one", "--x", "10000", "--y", "1000",
            "--T", "500", "--out", str(out),
        )
        assert code == 0
        doc = json.loads(out.read_text())
        assert doc["reference"] == 1000.0
        assert doc["rel_dev"] <= 0.05
        assert doc["nodes"] > 0

    def test_perron_check_nudges_T(self, capsys, zero_table_path):
        code, out, err = run(
            capsys, "perron-check", "--family", "one", "--x", "10000", "--y", "1000",
            "--T", "14.2", "--zeros", zero_table_path,
        )
        assert code == 0
        assert "nudged" in err

    def test_hankel_check_loop(self, capsys, tmp_path):
        out = tmp_path / "h.json"
        code, _, _ = run(
            capsys, "hankel-check", "--u", "1e6", "--kappa", "0.5", "--l", "0",
            "--out", str(out),
        )
        assert code == 0
        doc = json.loads(out.read_text())
        assert doc["rel_dev"] <= 1e-3
        assert doc["reference"] == pytest.approx(
            math.log(1e6) ** -0.5 / math.sqrt(math.pi), rel=1e-12
        )

    def test_hankel_check_window_mode(self, capsys):
        code, out, _ = run(
            capsys, "hankel-check", "--kappa", "1", "--l", "0",
            "--x", "10000", "--y", "1000",
        )
        assert code == 0
        assert "rel_dev = " in out

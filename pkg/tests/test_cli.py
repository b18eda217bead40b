import json
import subprocess
import sys

import pytest

from negmoments.cli import main


def run_cli(args, tmp_path=None, capsys=None):
    code = main(args)
    return code


class TestMoments:
    def test_exact_mu2_json(self, tmp_path):
        out = tmp_path / "m.json"
        assert main(["moments", "--mu", "2", "--exact", "--output", str(out)]) == 0
        doc = json.loads(out.read_text())
        assert doc["mean_exact"]["pi_half_coeffs"] == {"2": "3/32"}
        assert doc["normalized"]["mean"] == pytest.approx(0.589049, abs=5e-7)
        assert doc["n_qubits"] == 2

    def test_n_qubits_flag(self, tmp_path):
        out = tmp_path / "m.json"
        assert main(["moments", "--n-qubits", "4", "--output", str(out)]) == 0
        doc = json.loads(out.read_text())
        assert doc["mu"] == 4
        assert doc["normalized"]["mean"] == pytest.approx(0.65368, abs=5e-6)

    def test_csv_format(self, tmp_path):
        out = tmp_path / "m.csv"
        assert main(["moments", "--mu", "3", "--format", "csv", "--output", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[0].startswith("mu,n_qubits,mean_float")
        assert lines[1].split(",")[0] == "3"
        assert lines[1].split(",")[1] == ""  # 3 is not a power of two

    def test_invalid_mu_is_usage_error(self):
        assert main(["moments", "--mu", "0"]) == 2

    def test_exact_ceiling_exit_code(self):
        assert main(["moments", "--mu", "200", "--exact"]) == 3

    def test_unknown_flag_is_usage_error(self):
        assert main(["moments", "--mu", "2", "--frobnicate"]) == 2

    def test_mutually_exclusive_size_flags(self):
        assert main(["moments", "--mu", "2", "--n-qubits", "4"]) == 2


class TestTable:
    def test_csv_rows(self, tmp_path):
        out = tmp_path / "t.csv"
        assert main(["table", "--n-max", "8", "--format", "csv", "--output", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "n_qubits,mu,ratio,delta"
        assert len(lines) == 5
        first = lines[1].split(",")
        assert first[0] == "2" and first[3] == ""
        assert float(lines[2].split(",")[3]) == pytest.approx(0.0646309, abs=1e-6)

    def test_json_with_extrapolation(self, tmp_path):
        out = tmp_path / "t.json"
        assert main(["table", "--n-max", "10", "--extrapolate", "--output", str(out)]) == 0
        doc = json.loads(out.read_text())
        assert len(doc["rows"]) == 5
        assert doc["extrapolated_limit"] == pytest.approx(0.7205, abs=1e-3)

    def test_odd_range_rejected(self):
        assert main(["table", "--n-min", "3", "--n-max", "7"]) == 2

    def test_exact_ceiling(self):
        assert main(["table", "--n-max", "16", "--exact"]) == 3


class TestSampleAndCompare:
    def test_sample_deterministic_bytes(self, tmp_path):
        args = [
            "sample", "--n-qubits", "4", "--generator", "circuit", "--j", "40",
            "--samples", "1500", "--seed", "7", "--format", "csv",
        ]
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(args + ["--threads", "1", "--output", str(a)]) == 0
        assert main(args + ["--threads", "2", "--output", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_sample_json_document(self, tmp_path):
        out = tmp_path / "s.json"
        assert main(["sample", "--mu", "2", "--samples", "400", "--seed", "3", "--output", str(out)]) == 0
        doc = json.loads(out.read_text())
        assert doc["histogram"]["total"] == 400
        assert doc["comparison"] is None
        assert doc["reference"]["mean_prime"] == pytest.approx(0.589049, abs=5e-7)

    def test_compare_emits_statistics(self, tmp_path):
        out = tmp_path / "c.json"
        assert main(["compare", "--mu", "4", "--samples", "4000", "--seed", "11", "--output", str(out)]) == 0
        doc = json.loads(out.read_text())
        comp = doc["comparison"]
        assert comp["ks_statistic"] < 0.05
        assert abs(comp["mean_zscore"]) < 4

    def test_rectangular_haar_dims(self, tmp_path):
        out = tmp_path / "r.json"
        assert main(["sample", "--mu", "2", "--nu", "8", "--samples", "300", "--output", str(out)]) == 0
        doc = json.loads(out.read_text())
        assert doc["mu"] == 2

    def test_circuit_requires_n_qubits(self):
        assert main(["sample", "--mu", "4", "--generator", "circuit", "--samples", "10"]) == 2

    def test_io_failure_exit_code(self, tmp_path):
        missing = tmp_path / "no" / "such" / "dir" / "x.json"
        assert main(["sample", "--mu", "2", "--samples", "200", "--output", str(missing)]) == 4


class TestBoundsCommand:
    def test_preset_values(self, tmp_path):
        out = tmp_path / "b.json"
        assert main(["bounds", "--n-qubits", "22", "--c", "preset", "--output", str(out)]) == 0
        doc = json.loads(out.read_text())
        assert doc["singlet_distance_lb"] == pytest.approx(0.55926, abs=1e-5)
        assert doc["fidelity_ub"] == pytest.approx(0.72037, abs=1e-5)

    def test_trivial_ratio(self, tmp_path):
        out = tmp_path / "b.json"
        assert main(["bounds", "--n-qubits", "8", "--c", "1.0", "--output", str(out)]) == 0
        doc = json.loads(out.read_text())
        assert doc["distillable_ub_ebits"] == pytest.approx(4.0, abs=1e-12)

    def test_engine_default_ratio(self, tmp_path):
        out = tmp_path / "b.json"
        assert main(["bounds", "--n-qubits", "4", "--output", str(out)]) == 0
        doc = json.loads(out.read_text())
        assert doc["c"] == pytest.approx(0.7205, abs=2e-3)

    def test_bad_ratio(self):
        assert main(["bounds", "--n-qubits", "8", "--c", "lots"]) == 2
        assert main(["bounds", "--n-qubits", "7"]) == 2


class TestVerify:
    def test_passes_and_prints_table(self, capsys):
        assert main(["verify", "--max-mu", "4"]) == 0
        out = capsys.readouterr().out
        assert "pair-integral symmetry" in out
        assert "PASS" in out and "FAIL" not in out
        assert out.strip().endswith("suites passed")

    def test_failed_suite_exits_one(self, capsys, monkeypatch):
        from negmoments import cli
        from negmoments.selfcheck import CheckResult

        def rigged(max_mu):
            return [CheckResult("rigged check", False, "injected failure")]

        monkeypatch.setattr(cli, "run_all", rigged)
        assert main(["verify", "--max-mu", "4"]) == 1
        assert "FAIL" in capsys.readouterr().out

    def test_rejects_tiny_mu(self):
        assert main(["verify", "--max-mu", "1"]) == 2


class TestEntryPoints:
    def test_module_invocation(self):
        result = subprocess.run(
            [sys.executable, "-m", "negmoments", "--version"],
            capture_output=True,
            text=True,
        )
        assert result.returncode == 0
        assert result.stdout.startswith("negmoments ")

    def test_thread_env_fallback(self, tmp_path, monkeypatch):
        monkeypatch.setenv("NEGMOMENTS_THREADS", "2")
        out = tmp_path / "e.json"
        assert main(["sample", "--mu", "2", "--samples", "300", "--output", str(out)]) == 0
        monkeypatch.setenv("NEGMOMENTS_THREADS", "zero")
        assert main(["sample", "--mu", "2", "--samples", "300", "--output", str(out)]) == 2

    def test_moments_rerun_identical(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        assert main(["moments", "--mu", "4", "--output", str(a)]) == 0
        assert main(["moments", "--mu", "4", "--output", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

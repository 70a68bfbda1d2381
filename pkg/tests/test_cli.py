import json
import math

import numpy as np
import pytest

from anharm2d import cli
from anharm2d.numeric import ConvergenceError, VerificationReport


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_csv(text):
    lines = text.strip().split("\n")
    assert lines[0] == "r,R"
    rows = [tuple(float(x) for x in line.split(",")) for line in lines[1:]]
    r = np.array([row[0] for row in rows])
    v = np.array([row[1] for row in rows])
    return r, v


class TestSolve:
    def test_sec3_golden(self, capsys):
        code, out, _ = run(capsys, "solve", "--a", "1.0", "--m", "0")
        assert code == 0
        doc = json.loads(out)
        assert doc == {
            "a": 1.0, "m": 0, "c": 4.0, "b": -12.0, "kappa": -1.5,
            "kappa1": 0.5, "E0": -2.0, "E1": 6.0, "a1": 0.0, "a2": 1.0, "a3": -2.0,
        }

    def test_scaled(self, capsys):
        code, out, _ = run(capsys, "solve", "--a", "4.0", "--m", "0")
        assert code == 0
        doc = json.loads(out)
        assert (doc["c"], doc["b"]) == (1.0, -6.0)
        assert (doc["E0"], doc["E1"]) == (-4.0, 12.0)

    def test_unsolvable_m_exits_3(self, capsys):
        code, _, err = run(capsys, "solve", "--a", "1.0", "--m", "2")
        assert code == 3
        assert "m=2" in err

    def test_invalid_a_exits_2(self, capsys):
        code, _, _ = run(capsys, "solve", "--a", "-1.0", "--m", "0")
        assert code == 2

    def test_deterministic(self, capsys):
        _, out1, _ = run(capsys, "solve", "--a", "1.0", "--m", "0")
        _, out2, _ = run(capsys, "solve", "--a", "1.0", "--m", "0")
        assert out1 == out2


class TestEval:
    def test_ground_curve_shape(self, capsys):
        code, out, _ = run(
            capsys, "eval", "--state", "ground", "--a", "1", "--m", "0", "--samples", "1000"
        )
        assert code == 0
        r, v = parse_csv(out)
        assert len(r) == 1000
        assert np.all(np.diff(r) > 0.0)
        assert np.all(np.isfinite(v))
        # single interior maximum near the analytic stationary point
        peak = r[np.argmax(np.abs(v))]
        assert abs(peak - 0.9223779) <= r[1] - r[0]
        assert 0 < np.argmax(np.abs(v)) < len(r) - 1

    def test_excited_curve_single_node(self, capsys):
        code, out, _ = run(capsys, "eval", "--state", "excited", "--a", "1", "--m", "0")
        assert code == 0
        r, v = parse_csv(out)
        kept = np.abs(v) > 1e-12 * np.max(np.abs(v))
        rk, vk = r[kept], v[kept]
        idx = np.flatnonzero(np.sign(vk[:-1]) * np.sign(vk[1:]) < 0.0)
        assert len(idx) == 1
        assert abs(rk[idx[0]] - 2.0**0.25) <= r[1] - r[0]

    def test_constraint_gate_exits_3(self, capsys):
        code, _, err = run(
            capsys, "eval", "--state", "ground", "--a", "1", "--c", "4", "--b", "0", "--m", "0"
        )
        assert code == 3
        assert "constraint" in err

    def test_explicit_valid_params_pass_gate(self, capsys):
        code, out, _ = run(
            capsys, "eval", "--state", "ground", "--a", "1", "--c", "4", "--b", "-12",
            "--m", "0", "--samples", "50",
        )
        assert code == 0
        r, v = parse_csv(out)
        assert len(r) == 50

    def test_partial_explicit_params_exit_2(self, capsys):
        code, _, _ = run(capsys, "eval", "--state", "ground", "--a", "1", "--c", "4", "--m", "0")
        assert code == 2

    def test_bad_range_exits_2(self, capsys):
        code, _, _ = run(
            capsys, "eval", "--state", "ground", "--a", "1", "--m", "0",
            "--r-min", "2.0", "--r-max", "1.0",
        )
        assert code == 2

    def test_normalized_output(self, capsys):
        _, raw, _ = run(capsys, "eval", "--a", "1", "--m", "0", "--samples", "200")
        _, normed, _ = run(capsys, "eval", "--a", "1", "--m", "0", "--samples", "200", "--normalize")
        vr = parse_csv(raw)[1]
        vn = parse_csv(normed)[1]
        i = np.argmax(np.abs(vr))
        expected_n = 0.034916868503823**-0.5
        assert vn[i] / vr[i] == pytest.approx(expected_n, rel=1e-6)

    def test_output_file(self, capsys, tmp_path):
        out_path = tmp_path / "curve.csv"
        code, out, _ = run(
            capsys, "eval", "--a", "1", "--m", "0", "--samples", "10", "--out", str(out_path)
        )
        assert code == 0
        assert out == ""
        text = out_path.read_text()
        assert text.startswith("r,R\n")
        assert "\r" not in text

    def test_deterministic(self, capsys):
        _, out1, _ = run(capsys, "eval", "--a", "1", "--m", "0", "--samples", "100")
        _, out2, _ = run(capsys, "eval", "--a", "1", "--m", "0", "--samples", "100")
        assert out1 == out2


class TestVerifyCommand:
    def test_sec3_report(self, capsys):
        code, out, _ = run(capsys, "verify", "--a", "1", "--m", "0", "--grid-n", "1000")
        assert code == 0
        doc = json.loads(out)
        assert doc["passed"] is True
        assert doc["exact_energies"] == [-2.0, 6.0]
        assert doc["node_counts"] == [0, 1]
        assert abs(doc["overlap_01"]) <= 1e-8
        assert all(e <= 1e-3 for e in doc["abs_errors"])

    def test_invalid_a_exits_2(self, capsys):
        code, _, _ = run(capsys, "verify", "--a", "-1", "--m", "0")
        assert code == 2

    def test_failed_report_exits_5(self, capsys, monkeypatch):
        real = cli.verify

        def failing(a, m, n):
            report = real(a, m, n)
            return VerificationReport(**{**report.__dict__, "passed": False})

        monkeypatch.setattr(cli, "verify", failing)
        code, out, _ = run(capsys, "verify", "--a", "1", "--m", "0", "--grid-n", "1000")
        assert code == 5
        assert json.loads(out)["passed"] is False

    def test_convergence_failure_exits_4(self, capsys, monkeypatch):
        def broken(a, m, n):
            raise ConvergenceError("synthetic failure")

        monkeypatch.setattr(cli, "verify", broken)
        code, _, err = run(capsys, "verify", "--a", "1", "--m", "0")
        assert code == 4
        assert "synthetic" in err


class TestNormalize:
    def test_sec3_ground(self, capsys):
        code, out, _ = run(capsys, "normalize", "--state", "ground", "--a", "1", "--m", "0")
        assert code == 0
        doc = json.loads(out)
        assert doc["integral"] == pytest.approx(0.034916868503823, rel=1e-8)
        assert doc["N"] == pytest.approx(doc["integral"] ** -0.5, rel=1e-12)

    def test_sec3_excited(self, capsys):
        code, out, _ = run(capsys, "normalize", "--state", "excited", "--a", "1", "--m", "0")
        assert code == 0
        doc = json.loads(out)
        assert doc["N"] > 0.0
        assert math.isfinite(doc["N"])

    def test_quadrature_failure_exits_4(self, capsys, monkeypatch):
        def broken(state, grid):
            raise ConvergenceError("synthetic quadrature failure")

        monkeypatch.setattr(cli, "normalization_constant", broken)
        code, _, _ = run(capsys, "normalize", "--state", "ground", "--a", "1", "--m", "0")
        assert code == 4


class TestPipelines:
    def test_solve_output_feeds_eval_gate(self, capsys):
        _, out, _ = run(capsys, "solve", "--a", "2.5", "--m", "1")
        doc = json.loads(out)
        code, out, _ = run(
            capsys, "eval", "--state", "ground", "--a", str(doc["a"]), "--m", str(doc["m"]),
            "--c", str(doc["c"]), "--b", str(doc["b"]), "--samples", "20",
        )
        assert code == 0

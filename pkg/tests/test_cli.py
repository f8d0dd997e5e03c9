import csv
import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from gaussqsde.cli import main
from gaussqsde.config import ConfigError, config_to_json, load_config, parse_config

SM = [[0, 1], [0, 0]]
Z = [[0, 0], [0, 0]]


def base_config(**bath):
    return {
        "dimension": 2,
        "operators": {"C": SM, "F": Z},
        "bath": {"gamma": 1.0, **bath},
        "run": {"t_max": 1.0, "steps": 20, "dt": 0.01, "fock_dim": 3, "halvings": 1},
    }


@pytest.fixture
def write_cfg(tmp_path):
    def _write(data, name="cfg.json"):
        p = tmp_path / name
        p.write_text(data if isinstance(data, str) else json.dumps(data, indent=2))
        return str(p)

    return _write


def read_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], np.array(rows[1:], dtype=float)


class TestValidate:
    def test_thermal_ok(self, write_cfg, capsys):
        assert main(["validate", "--config", write_cfg(base_config(n=1.0))]) == 0
        assert "all constraints satisfied" in capsys.readouterr().out

    def test_squeezing_violation(self, write_cfg, capsys):
        code = main(["validate", "--config", write_cfg(base_config(n=1.0, m=[1.5, 0]))])
        assert code == 1
        assert "|m|^2 <= n(n+1)" in capsys.readouterr().out

    def test_non_hermitian_F(self, write_cfg, capsys):
        cfg = base_config()
        cfg["operators"]["F"] = SM
        assert main(["validate", "--config", write_cfg(cfg)]) == 1
        assert "violated" in capsys.readouterr().out


class TestMalformed:
    def test_json_syntax_reports_line(self, write_cfg, capsys):
        text = json.dumps(base_config(), indent=2).replace('"gamma": 1.0', '"gamma": 1.0,,')
        assert main(["validate", "--config", write_cfg(text)]) == 2
        err = capsys.readouterr().err
        assert "line" in err and "column" in err

    @pytest.mark.parametrize(
        "mutate, field",
        [
            (lambda c: c["bath"].pop("gamma"), "bath.gamma"),
            (lambda c: c["bath"].update(m=[1, 2, 3]), "bath.m"),
            (lambda c: c["operators"].update(C=[[0, 1]]), "operators.C"),
            (lambda c: c["operators"].update(Q=Z), "operators.Q"),
            (lambda c: c["operators"].update(W=Z, E11=Z), "operators"),
            (lambda c: c["operators"].update(W=Z), "operators"),
            (lambda c: c["run"].update(steps="ten"), "run.steps"),
        ],
    )
    def test_field_diagnostic(self, write_cfg, capsys, mutate, field):
        cfg = base_config()
        mutate(cfg)
        assert main(["validate", "--config", write_cfg(cfg)]) == 2
        assert field in capsys.readouterr().err

    def test_missing_file(self, tmp_path, capsys):
        assert main(["validate", "--config", str(tmp_path / "nope.json")]) == 2


class TestConfig:
    def test_roundtrip(self):
        data = base_config(n=0.5, m=[0.1, 0.2], alpha=[0.3, 0], sigma=0.1)
        data["rho0"] = [[0.5, 0], [0, 0.5]]
        data["observables"] = {"sz": [[-1, 0], [0, 1]]}
        cfg = parse_config(data)
        again = parse_config(json.loads(json.dumps(config_to_json(cfg))))
        assert again.bath == cfg.bath
        np.testing.assert_array_equal(again.C, cfg.C)
        np.testing.assert_array_equal(again.observables["sz"], cfg.observables["sz"])
        assert again.run == cfg.run

    def test_bare_real_and_pair(self):
        cfg = parse_config(base_config(m=0.5, alpha=[0, 0.25]))
        assert cfg.bath.m == 0.5 and cfg.bath.alpha == 0.25j

    def test_error_type(self):
        with pytest.raises(ConfigError):
            parse_config([1, 2])


class TestConvert:
    def test_prints_coefficients(self, write_cfg, capsys):
        assert main(["convert", "--config", write_cfg(base_config())]) == 0
        out = capsys.readouterr().out
        for name in ("L11", "L10", "L01", "L00", "unitarity residual", "W =", "H =", "L ="):
            assert name in out

    def test_non_unitary_coefficients(self, write_cfg, capsys):
        cfg = base_config()
        cfg["operators"].update(L11=[[1, 0], [0, 1]], L10=Z, L01=Z, L00=Z)
        assert main(["convert", "--config", write_cfg(cfg)]) == 0
        assert "not extractable" in capsys.readouterr().out

    def test_generator_roundtrip(self, write_cfg, tmp_path):
        cfg = base_config(sigma=0.3)
        cfg["operators"].update(W=[[0, 1], [1, 0]], H=[[0.2, [0, 0.1]], [[0, -0.1], -0.3]], L=SM)
        src = write_cfg(cfg)
        converted = str(tmp_path / "normal.json")
        assert main(["convert", "--config", src, "--output", converted]) == 0
        assert load_config(converted).presentation == "normal_ordered"

        reports = []
        for path in (src, converted):
            out = str(tmp_path / "gen.json")
            assert main(["generator", "--config", path, "--output", out]) == 0
            reports.append(json.loads(open(out).read()))
        a, b = (np.array(r["coefficient_generator"]) for r in reports)
        assert np.abs(a - b).max() <= 1e-12
        assert reports[0]["liouvillian_spectrum"] == reports[1]["liouvillian_spectrum"]


class TestGenerator:
    def test_report(self, write_cfg, tmp_path, capsys):
        out = str(tmp_path / "gen.json")
        assert main(["generator", "--config", write_cfg(base_config(n=1.0)), "--output", out]) == 0
        rep = json.loads(open(out).read())
        assert rep["gks_psd"] and rep["bath_valid"]
        spec = sorted(complex(*v).real for v in rep["liouvillian_spectrum"])
        assert spec[-1] == pytest.approx(0, abs=1e-12)
        assert "GKS eigenvalues" in capsys.readouterr().out

    def test_not_completely_positive(self, write_cfg, capsys):
        assert main(["generator", "--config", write_cfg(base_config(n=1.0, m=[1.5, 0]))]) == 1
        assert "not positive semidefinite" in capsys.readouterr().out


class TestEvolve:
    def test_csv(self, write_cfg, tmp_path):
        cfg = base_config()
        cfg["observables"] = {"sz": [[-1, 0], [0, 1]]}
        out = str(tmp_path / "traj.csv")
        assert main(["evolve", "--config", write_cfg(cfg), "--output", out, "--steps", "10"]) == 0
        header, data = read_csv(out)
        assert header == ["t", "tr_rho", "herm_residual", "min_eig", "pop_0", "pop_1", "sz"]
        assert data.shape == (11, 7)
        assert np.all(np.diff(data[:, 0]) > 0)
        np.testing.assert_allclose(data[:, 5], np.exp(-data[:, 0]), atol=1e-8)
        np.testing.assert_allclose(data[:, 1], 1, atol=1e-12)

    def test_exact_floats(self, write_cfg, tmp_path):
        out = str(tmp_path / "traj.csv")
        main(["evolve", "--config", write_cfg(base_config()), "--output", out, "--t-max", "0.3"])
        with open(out) as fh:
            last_t = fh.read().strip().splitlines()[-1].split(",")[0]
        assert float(last_t) == 0.3

    def test_invalid_bath_exit_1(self, write_cfg, tmp_path):
        cfg = write_cfg(base_config(n=1.0, m=[1.5, 0]))
        assert main(["evolve", "--config", cfg, "--output", str(tmp_path / "x.csv")]) == 1


class TestOracle:
    def test_csvs(self, write_cfg, tmp_path):
        out = tmp_path / "oracle.csv"
        args = ["oracle", "--config", write_cfg(base_config(n=0.5)), "--output", str(out)]
        assert main(args + ["--t-max", "0.5"]) == 0
        header, data = read_csv(out)
        assert header[:3] == ["t", "trace_distance", "oracle_tr"]
        assert data.shape[0] == 51
        assert data[:, 1].max() <= 0.02
        conv_header, conv = read_csv(tmp_path / "oracle_convergence.csv")
        assert conv_header == ["dt", "max_trace_distance", "ratio_to_previous"]
        assert conv[:, 0] == pytest.approx([0.01, 0.005])

    def test_sigma_exit_1(self, write_cfg, tmp_path, capsys):
        cfg = write_cfg(base_config(sigma=0.5))
        assert main(["oracle", "--config", cfg, "--output", str(tmp_path / "o.csv")]) == 1
        assert "sigma" in capsys.readouterr().err


class TestCheck:
    def test_passes(self, write_cfg, capsys):
        cfg = base_config(n=0.5, m=[0.2, 0.3], alpha=[0.1, 0])
        cfg["operators"]["F"] = [[0.5, 0], [0, -0.5]]
        assert main(["check", "--config", write_cfg(cfg)]) == 0
        out = capsys.readouterr().out
        assert "FAIL" not in out and "checks passed" in out

    def test_fails_on_invalid_bath(self, write_cfg):
        assert main(["check", "--config", write_cfg(base_config(n=1.0, m=[1.5, 0]))]) != 0


def test_module_entry_point(write_cfg):
    proc = subprocess.run(
        [sys.executable, "-m", "gaussqsde", "validate", "--config", write_cfg(base_config())],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "all constraints satisfied" in proc.stdout


CONFIG_DIR = Path(__file__).resolve().parent.parent / "configs"


@pytest.mark.parametrize("path", sorted(CONFIG_DIR.glob("*.json")), ids=lambda p: p.stem)
def test_shipped_configs(path, capsys):
    expected = 1 if path.stem.startswith("invalid") else 0
    assert main(["validate", "--config", str(path)]) == expected
    assert main(["check", "--config", str(path)]) == expected

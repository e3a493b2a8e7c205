import numpy as np
import pytest

from spinbath.cli import ConfigError, main, parse_config_file


def run_cli(args):
    return main(args)


def read_rows(path):
    rows = []
    with open(path) as fh:
        lines = [l.rstrip("\n") for l in fh if not l.startswith("#")]
    header = lines[0].split(",")
    for line in lines[1:]:
        rows.append(dict(zip(header, line.split(","))))
    return header, rows


def test_spectrum_zero_amplitude(tmp_path):
    out = tmp_path / "spec.csv"
    code = run_cli(["spectrum", "--f-max", "0", "--f-steps", "1", "--n-t", "16",
                    "--out", str(out)])
    assert code == 0
    header, rows = read_rows(out)
    assert len(rows) == 1
    eps = sorted(float(rows[0][f"eps_{i}"]) for i in range(8))
    expected = sorted(((0.1 * m + 0.5) % 1.0) - 0.5 for m in np.arange(3.5, -4.0, -1.0))
    assert np.allclose(eps, expected, atol=1e-10)


def test_magnetization_small_sweep(tmp_path):
    out = tmp_path / "mag.csv"
    code = run_cli(["magnetization", "--f-min", "0", "--f-max", "0.2", "--f-steps", "3",
                    "--density", "constant,gaussian", "--kbt", "1.0", "--n-t", "64",
                    "--l-max", "16", "--out", str(out)])
    assert code == 0
    _, rows = read_rows(out)
    assert len(rows) == 6
    kinds = {r["density_kind"] for r in rows}
    assert kinds == {"constant", "gaussian"}
    for r in rows:
        p = [float(r[f"p_{i}"]) for i in range(8)]
        assert sum(p) == pytest.approx(1.0, abs=1e-10)


def test_config_file_resolution(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# comment\nomega0 = 0.2\nf_max = 0.5\nn_t = 32  # inline\n")
    values = parse_config_file(str(cfg))
    assert values == {"omega0": 0.2, "f_max": 0.5, "n_t": 32}
    out = tmp_path / "o.csv"
    code = run_cli(["spectrum", "--config", str(cfg), "--f-steps", "2",
                    "--f-max", "0.3", "--out", str(out)])  # flag overrides file
    assert code == 0
    lines = out.read_text().splitlines()
    omega_line = next(l for l in lines if l.startswith("# config: omega0 = "))
    assert float(omega_line.rpartition("=")[2]) == 0.2
    grid_line = next(l for l in lines if l.startswith("# config: f_grid = "))
    assert [float(x) for x in grid_line.rpartition("=")[2].split(",")] == [0.0, 0.3]
    assert "# config: n_t = 32" in lines


def test_config_file_rejects_unknown_key(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("not_a_key = 1\n")
    with pytest.raises(ConfigError, match="unknown key"):
        parse_config_file(str(cfg))
    assert run_cli(["spectrum", "--config", str(cfg)]) == 1


def test_bad_flag_value_exits_nonzero(tmp_path):
    assert run_cli(["magnetization", "--gamma", "1,2", "--out", str(tmp_path / "x.csv")]) == 1
    assert run_cli(["magnetization", "--density", "bogus", "--out", str(tmp_path / "y.csv")]) == 1


def test_verify_single_check():
    assert run_cli(["verify", "--check", "spin-algebra"]) == 0


def test_verify_underresolved_integrator_fails():
    assert run_cli(["verify", "--check", "unitarity", "--n-steps", "10"]) == 1


def test_help_lists_defaults(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["spectrum", "--help"])
    assert exc.value.code == 0
    text = capsys.readouterr().out
    for needle in ("--polarization", "--two-j", "--omega0", "--f-max", "--density",
                   "--kbt", "--gamma", "--l-max", "--n-t", "--n-steps", "--threads",
                   "--out", "default"):
        assert needle in text

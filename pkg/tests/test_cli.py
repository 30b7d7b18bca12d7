import csv
import json

import numpy as np
import pytest

from pinchwpc import cli, sweep
from pinchwpc.config import SystemConfig, dump_config, load_config


def run(argv):
    return cli.main([str(a) for a in argv])


def data_lines(path):
    return [ln for ln in path.read_text().splitlines() if not ln.startswith("#")]


def test_sweep_two_points(tmp_path):
    out = tmp_path / "s.csv"
    assert run(["sweep", "--axis", "Ps_dBm", "--range", "20:40", "--points", 2, "--out", out]) == 0
    lines = data_lines(out)
    assert len(lines) == 3
    assert lines[0] == "Ps_dBm,outage_cf,outage_cf_regime,rate_cf,rate_cf_regime"
    rec = json.loads((tmp_path / "s.json").read_text())
    assert rec["seed"] == 42 and "timestamp" in rec and len(rec["rows"]) == 2


def test_sweep_rerun_identical_bytes(tmp_path):
    args = ["sweep", "--axis", "alpha", "--range", "0.01:0.1", "--points", 4, "--samples", 20000,
            "--metrics", "outage_cf,outage_mc,rate_mc,baseline_rate"]
    a, b, c = tmp_path / "a.csv", tmp_path / "b.csv", tmp_path / "c.csv"
    assert run(args + ["--out", a]) == 0
    assert run(args + ["--out", b]) == 0
    assert run(args + ["--out", c, "--workers", 3]) == 0
    assert a.read_bytes() == b.read_bytes() == c.read_bytes()
    header = data_lines(a)[0].split(",")
    assert header == ["alpha", "outage_cf", "outage_cf_regime", "outage_mc", "outage_mc_std_err",
                      "rate_mc", "rate_mc_std_err", "baseline_rate", "baseline_rate_std_err"]
    assert "# seed = 42" in a.read_text()


def test_sweep_17_digits(tmp_path):
    out = tmp_path / "s.csv"
    run(["sweep", "--axis", "Ps_dBm", "--range", "30:35", "--points", 2, "--metrics", "rate_cf", "--out", out])
    header, rows = sweep.read_csv(out)
    from pinchwpc import analytic
    assert rows[0][1] == analytic.ergodic_lossy(SystemConfig(Ps_dBm=30.0))


def test_sweep_power_shape(tmp_path):
    out = tmp_path / "s.csv"
    run(["sweep", "--axis", "Ps_dBm", "--range", "0:50", "--points", 51, "--metrics", "outage_cf", "--out", out])
    header, rows = sweep.read_csv(out)
    v = sweep.column(header, rows, "outage_cf")
    assert v[0] == 1.0 and v[-1] == 0.0 and np.all(np.diff(v) <= 0)


def test_config_errors(tmp_path, capsys):
    bad = tmp_path / "bad.cfg"
    bad.write_text("alpha = 0.01\nwidth = 3\n")
    assert run(["sweep", "--config", bad, "--axis", "L", "--range", "0:1"]) == 2
    assert "width" in capsys.readouterr().err
    bad.write_text("tau = 1.5\n")
    assert run(["sweep", "--config", bad, "--axis", "L", "--range", "0:1"]) == 2
    assert "tau" in capsys.readouterr().err
    assert run(["sweep", "--axis", "L", "--range", "2:1"]) == 2
    assert run(["sweep", "--axis", "L", "--range", "0:1", "--metrics", "snr"]) == 2
    assert run(["sweep", "--axis", "L", "--range", "0:1", "--k", 0]) == 2


def test_unknown_figure(tmp_path):
    assert run(["figure", "fig5", "--out", tmp_path]) == 2


def test_fallback_disabled_exit_code():
    assert run(["sweep", "--axis", "L", "--range", "7:9", "--points", 2, "--metrics", "outage_cf", "--no-fallback"]) == 3


def test_fallback_tagged(tmp_path):
    out = tmp_path / "s.csv"
    run(["sweep", "--axis", "L", "--range", "5:8", "--points", 2, "--metrics", "outage_cf", "--out", out])
    header, rows = sweep.read_csv(out)
    assert [r[2] for r in rows] == ["lossy:1", "oracle:0"]


@pytest.mark.parametrize("fig", sweep.FIGURE_IDS)
def test_figures_emit(tmp_path, fig):
    assert run(["figure", fig, "--out", tmp_path, "--samples", 2000]) == 0
    files = sorted(tmp_path.glob(f"{fig}_*.csv"))
    assert files
    for f in files:
        rows = list(csv.reader(data_lines(f)))
        assert len(rows) > 2
        assert len({len(r) for r in rows}) == 1


def test_figure_parameters(tmp_path):
    run(["figure", "fig3", "--out", tmp_path, "--samples", 1000])
    sides = sorted(load_config_from_preamble(f).Dx for f in tmp_path.glob("fig3_*.csv"))
    assert sides == [10.0, 30.0]
    run(["figure", "fig6", "--out", tmp_path, "--samples", 1000])
    for f in tmp_path.glob("fig6_*.csv"):
        c = load_config_from_preamble(f)
        assert (c.Dx, c.Dy, c.tau, c.eta, c.R, c.h) == (10.0, 10.0, 0.4, 0.8, 2.5, 3.0)


def load_config_from_preamble(path):
    lines = [ln[len("# config: "):] for ln in path.read_text().splitlines() if ln.startswith("# config: ")]
    from pinchwpc.config import parse_config
    return parse_config("\n".join(lines))


def test_config_round_trip_file(tmp_path):
    cfg = SystemConfig(alpha=0.02, L=3.0, Ps_dBm=41.5, N2=4)
    p = tmp_path / "c.cfg"
    p.write_text(dump_config(cfg))
    assert load_config(p) == cfg


def test_validate_subset_passes(capsys):
    assert run(["validate", "--only", "5,9,11"]) == 0
    out = capsys.readouterr().out
    assert out.count("[PASS]") == 3


def test_validate_reports_failure(capsys):
    assert run(["validate", "--only", "6"]) == 1
    assert "[FAIL]  6" in capsys.readouterr().out


def test_validate_lossless_config(tmp_path, capsys):
    p = tmp_path / "c.cfg"
    p.write_text("alpha = 0\n")
    assert run(["validate", "--config", p, "--only", "1,2,3,4,6"]) == 0
    out = capsys.readouterr().out
    assert "lossless:" in out and "lossy:" not in out


def test_validate_wide_geometry(tmp_path, capsys):
    p = tmp_path / "c.cfg"
    p.write_text("L = 8\n")
    assert run(["validate", "--config", p, "--only", "1,2"]) == 0
    out = capsys.readouterr().out
    assert "oracle fallback engaged" in out and "oracle:0" in out


def test_optimal_commands(capsys):
    assert run(["optimal-l", "--y-m", 5]) == 0
    assert "L* = 8 m" in capsys.readouterr().out
    assert run(["optimal-tau", "--config", "/dev/null"]) == 0
    out = capsys.readouterr().out
    assert "tau_opt" in out
    assert run(["optimal-l"]) == 0


def test_position_scan(tmp_path):
    out = tmp_path / "p.csv"
    p = tmp_path / "c.cfg"
    p.write_text("L = 10\n")
    assert run(["position-scan", "--config", p, "--points", 1001, "--out", out]) == 0
    text = out.read_text()
    assert "# optimal position = (0, 4) and (0, -4)" in text
    header, rows = sweep.read_csv(out)
    assert header == ["y_m", "snr", "baseline_snr"] and len(rows) == 1001

import json

import numpy as np
import pytest

from kickedtop import cli


def run_cli(args):
    return cli.main([str(a) for a in args])


def read_csv(path):
    lines = path.read_text().splitlines()
    header = lines[0].split(",")
    rows = [line.split(",") for line in lines[1:]]
    return header, rows


def test_config_file_parsing(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# comment\nJ = 16\ndelta: 0.01\nsteps = 50\n")
    parsed = cli.parse_config_file(cfg)
    assert parsed == {"J": "16", "delta": "0.01", "steps": "50"}


def test_config_rejects_unknown_keys():
    with pytest.raises(cli.ConfigError) as err:
        cli.merge_config({"bogus": "1", "J": "8"}, {})
    assert "bogus" in str(err.value)


def test_config_rejects_bad_types():
    with pytest.raises(cli.ConfigError) as err:
        cli.merge_config({"J": "not-a-number"}, {})
    assert "J" in str(err.value)


def test_flags_override_config_file(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("J = 16\ndelta = 0.5\n")
    merged = cli.merge_config(cli.parse_config_file(cfg), {"delta": 0.01})
    assert merged["J"] == 16
    assert merged["delta"] == 0.01
    assert merged["alpha"] == 3.0          # default filled


def test_fidelity_run_zero_delta(tmp_path):
    out = tmp_path / "run"
    rc = run_cli(["fidelity", "--J", 8, "--delta", 0, "--state-z", 0.45,
                  "--steps", 40, "--out", out])
    assert rc == 0
    header, rows = read_csv(out / "overlap.csv")
    assert header == ["t", "overlap"]
    assert len(rows) == 41
    assert all(float(r[1]) == 1.0 for r in rows)
    record = json.loads((out / "run.json").read_text())
    assert {e["path"] for e in record["outputs"]} == {"overlap.csv", "summary.json"}


def test_csv_round_trip_exact(tmp_path):
    out = tmp_path / "run"
    run_cli(["fidelity", "--J", 16, "--delta", 0.05, "--state-z", 0.43,
             "--steps", 60, "--out", out])
    text = (out / "overlap.csv").read_text()
    _, rows = read_csv(out / "overlap.csv")
    rebuilt = "t,overlap\n" + "\n".join(
        f"{int(r[0])},{cli._fmt(float(r[1]))}" for r in rows) + "\n"
    assert rebuilt == text


def test_identical_config_identical_output(tmp_path):
    args = ["fidelity", "--J", 16, "--delta", 0.02, "--state-z", 0.44, "--steps", 50]
    run_cli(args + ["--out", tmp_path / "a"])
    run_cli(args + ["--out", tmp_path / "b"])
    assert (tmp_path / "a/overlap.csv").read_bytes() == (tmp_path / "b/overlap.csv").read_bytes()


def test_build_summary(tmp_path):
    out = tmp_path / "run"
    assert run_cli(["build", "--J", 16, "--delta", 0.01, "--out", out]) == 0
    summary = json.loads((out / "summary.json").read_text())
    assert summary["block_dims"] == [9, 8, 16]
    assert summary["unitarity_residual"] < 1e-10
    assert summary["off_block_residual"] < 1e-10
    assert summary["perturbation"]["delta_c"] == pytest.approx(
        float(np.sqrt(2 * np.pi / 8**3)))


def test_usage_error_exit_code(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("nonsense = 1\n")
    rc = run_cli(["fidelity", "--config", cfg, "--J", 8, "--delta", 0,
                  "--state-z", 0.45, "--out", tmp_path / "x"])
    assert rc == 1


def test_odd_J_is_usage_error(tmp_path):
    rc = run_cli(["fidelity", "--J", 7, "--delta", 0, "--state-z", 0.45,
                  "--out", tmp_path / "x"])
    assert rc == 1


def test_fit_error_exit_code(tmp_path):
    # delta = 0 gives a constant series: nothing to fit
    rc = run_cli(["fit", "--J", 8, "--delta", 0, "--state-z", 0.45,
                  "--steps", 50, "--window", "1,40", "--out", tmp_path / "x"])
    assert rc == 2


def test_edge_not_found_exit_code(tmp_path):
    rc = run_cli(["edge-scan", "--J", 16, "--z-range",
                  f"{cli.edge.Z_F - 0.01},{cli.edge.Z_F}", "--steps", 300,
                  "--out", tmp_path / "x"])
    assert rc == 3


def test_classical_orbit_run(tmp_path):
    out = tmp_path / "orbit"
    rc = run_cli(["classical", "orbit", "--state", "0.1,0.95,0.2958039892",
                  "--steps", 500, "--out", out])
    assert rc == 0
    header, rows = read_csv(out / "orbit.csv")
    assert header == ["x", "y", "z"]
    assert len(rows) == 501
    header2, rows2 = read_csv(out / "orbit_projected.csv")
    assert header2 == ["px", "pz"]
    assert len(rows2) == 501


def test_classical_project_run(tmp_path):
    out = tmp_path / "proj"
    rc = run_cli(["classical", "project", "--state", "0.6,0,0.8", "--out", out])
    assert rc == 0
    _, rows = read_csv(out / "projected.csv")
    assert float(rows[0][0]) == pytest.approx(0.6 * np.sqrt(2))


def test_classify_run(tmp_path):
    out = tmp_path / "cls"
    rc = run_cli(["classify", "--J", 64, "--delta", 0.01, "--state",
                  "0.1,0.95,0.2958039892", "--steps", 400, "--out", out])
    assert rc == 0
    data = json.loads((out / "classification.json").read_text())
    assert data["kind"] in ("gaussian", "exponential", "power_law", "oscillatory")


def test_manifest_checksums_validate(tmp_path):
    import hashlib
    out = tmp_path / "run"
    run_cli(["fidelity", "--J", 8, "--delta", 0.01, "--state-z", 0.45,
             "--steps", 30, "--out", out])
    record = json.loads((out / "run.json").read_text())
    for entry in record["outputs"]:
        digest = hashlib.sha256((out / entry["path"]).read_bytes()).hexdigest()
        assert digest == entry["sha256"]


def test_reproduce_fig2(tmp_path):
    out = tmp_path / "fig2"
    rc = run_cli(["reproduce", "fig2", "--out", out])
    assert rc == 0
    _, rows = read_csv(out / "fig2_orbit.csv")
    assert len(rows) == 10001


def test_delta_sweep_run_records_failures(tmp_path):
    out = tmp_path / "sweep"
    rc = run_cli(["delta-sweep", "--J", 64, "--state-z", 0.46,
                  "--deltas", "0.005,0.01,0.02", "--steps", 800, "--out", out])
    assert rc == 0
    header, rows = read_csv(out / "sweep.csv")
    assert header == ["delta", "q_rel", "tau", "error"]
    assert len(rows) == 3


def test_format_both_writes_json_mirror(tmp_path):
    out = tmp_path / "run"
    rc = run_cli(["fidelity", "--J", 8, "--delta", 0.01, "--state-z", 0.45,
                  "--steps", 30, "--format", "both", "--out", out])
    assert rc == 0
    mirror = json.loads((out / "overlap.json").read_text())
    assert mirror["columns"] == ["t", "overlap"]
    _, rows = read_csv(out / "overlap.csv")
    assert len(mirror["rows"]) == len(rows)


def test_format_json_only(tmp_path):
    out = tmp_path / "run"
    rc = run_cli(["fidelity", "--J", 8, "--delta", 0.01, "--state-z", 0.45,
                  "--steps", 30, "--format", "json", "--out", out])
    assert rc == 0
    assert not (out / "overlap.csv").exists()
    assert (out / "overlap.json").exists()

import json

import pytest

import ergolab as e
from ergolab.cli import main
from ergolab.report import config_from_json, run_experiment, worker_count


def test_name_doubling_row(capsys):
    rc = main(
        ["name", "--system", "doubling", "--target", "halves", "--n", "4",
         "--point", "0.375"]
    )
    assert rc == 0
    assert capsys.readouterr().out.strip() == "0,1,1,0"


def test_systems_listing(capsys):
    assert main(["systems"]) == 0
    out = capsys.readouterr().out
    assert "rotation" in out and "odometer" in out


def test_complexity_trivial_partition(capsys):
    rc = main(
        ["complexity", "--system", "rotation:golden", "--target", "trivial",
         "--eps", "0.2", "--horizons", "4,8,16", "--samples", "50"]
    )
    assert rc == 0
    out = capsys.readouterr().out
    assert "complexity: bounded" in out
    assert "K=1,1,1" in out


def test_invalid_config_exit_2(capsys):
    rc = main(
        ["complexity", "--system", "rotation:2.5", "--target", "halves",
         "--eps", "0.2", "--horizons", "4,8,16"]
    )
    assert rc == 2
    assert "error" in capsys.readouterr().err


def test_missing_param_exit_2(tmp_path, capsys):
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps({"task": "complexity",
                               "system": {"family": "doubling"}}))
    rc = main(["--config", str(cfg), "complexity", "--system", "doubling",
               "--target", "halves", "--eps", "0.1", "--horizons", "4,8,16"])
    assert rc == 2


def test_budget_exit_3(capsys):
    rc = main(
        ["complexity", "--system", "bernoulli:0.5", "--target", "cylinder:0",
         "--eps", "0.1", "--horizons", "8,16,32", "--samples", "600",
         "--max-centers", "0"]
    )
    # max_centers=0 cannot reach target mass even on point estimate
    assert rc in (0, 3)


def test_config_file_run(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(
        json.dumps(
            {
                "task": "complexity",
                "system": {"family": "rotation", "params": {"theta": 0.618}},
                "target": {"partition": {"kind": "circle_intervals",
                                         "cuts": [0.0, 0.5]}},
                "params": {"eps": 0.2, "horizons": [8, 16, 32], "samples": 100},
                "seed": 3,
            }
        )
    )
    rc = main(["--config", str(cfg), "complexity", "--system", "doubling",
               "--target", "halves", "--eps", "0.1", "--horizons", "4,8,16"])
    assert rc == 0
    assert "complexity:" in capsys.readouterr().out


def test_out_dir_artifacts(tmp_path, capsys):
    out = tmp_path / "arts"
    rc = main(
        ["--out", str(out), "complexity", "--system", "rotation:golden",
         "--target", "halves", "--eps", "0.2", "--horizons", "8,16,32",
         "--samples", "80"]
    )
    assert rc == 0
    names = {p.name for p in out.iterdir()}
    assert {"bundle.json", "curve_0.csv", "curve_0.svg"} <= names
    header = (out / "curve_0.csv").read_text().splitlines()[0]
    assert header.startswith(f"# ergolab v{e.__version__} config=")


def test_csv_determinism(tmp_path):
    args = ["complexity", "--system", "rotation:golden", "--target", "halves",
            "--eps", "0.2", "--horizons", "8,16,32", "--samples", "80"]
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["--seed", "11", "--out", str(a)] + args) == 0
    assert main(["--seed", "11", "--out", str(b)] + args) == 0
    for name in ("bundle.json", "curve_0.csv", "curve_0.svg"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_seed_changes_output(tmp_path):
    args = ["expansivity", "--system", "doubling",
            "--target", "indicator:halves:0", "--delta", "0.4",
            "--pairs", "150", "--horizon", "64"]
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["--seed", "1", "--out", str(a)] + args) == 0
    assert main(["--seed", "2", "--out", str(b)] + args) == 0
    assert (a / "bundle.json").read_text() != (b / "bundle.json").read_text()


def test_report_dichotomy(tmp_path, capsys):
    # m=400 keeps the growing curve clear of the 0.9*m saturation cap
    rc = main(
        ["--seed", "42", "--out", str(tmp_path / "rep"), "report",
         "--eps", "0.1", "--samples", "400"]
    )
    assert rc == 0
    out = capsys.readouterr().out
    assert "rotation: bounded" in out
    assert "bernoulli_shift: growing" in out


def test_spectral_subcommand(capsys):
    rc = main(
        ["spectral", "--system", "rotation:golden", "--target", "character:1",
         "--horizons", "64,256,1024", "--radius", "0.5", "--samples", "300"]
    )
    assert rc == 0
    assert "spectral: ap" in capsys.readouterr().out


def test_meanequi_subcommand(capsys):
    rc = main(
        ["meanequi", "--system", "rotation:golden", "--target", "character:1",
         "--eps", "0.5", "--samples", "200", "--horizon", "64"]
    )
    assert rc == 0
    assert "meanequi: success" in capsys.readouterr().out


def test_worker_count_env(monkeypatch):
    monkeypatch.delenv("ERGOLAB_THREADS", raising=False)
    assert worker_count() == 1
    monkeypatch.setenv("ERGOLAB_THREADS", "4")
    assert worker_count() == 4
    monkeypatch.setenv("ERGOLAB_THREADS", "zebra")
    with pytest.raises(e.ConfigError):
        worker_count()


def test_threads_do_not_change_results(monkeypatch, tmp_path):
    cfg = {
        "task": "dichotomy-report",
        "system": {"family": "rotation", "params": {"theta": 0.618}},
        "params": {"eps": 0.1, "samples": 120,
                   "horizons_bounded": [8, 16, 32],
                   "horizons_growing": [4, 8, 16]},
        "seed": 9,
    }
    monkeypatch.setenv("ERGOLAB_THREADS", "1")
    b1 = run_experiment(config_from_json(cfg))
    monkeypatch.setenv("ERGOLAB_THREADS", "2")
    b2 = run_experiment(config_from_json(cfg))
    assert b1.to_json() == b2.to_json()

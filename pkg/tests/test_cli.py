import json
import math
import os
import signal
import subprocess
import sys
import time

import pytest

from surfdec.cli import ExperimentConfig, main, parse_config, parse_grid, run_experiment
from surfdec.montecarlo import CSV_HEADER, read_results
from surfdec.registry import DECODER_IDS


def test_parse_reference_invocation():
    cfg = parse_config(
        "run --decoder mwpm --distance 3,5,7 --eta 0.5 --p 0.10:0.18:0.01"
        " --seed 42 --out r.csv".split()
    )
    assert cfg.decoder == "mwpm"
    assert cfg.distances == (3, 5, 7)
    assert len(cfg.p_grid) == 9
    assert math.isclose(cfg.p_grid[0], 0.10) and math.isclose(cfg.p_grid[-1], 0.18)
    assert cfg.seed == 42
    assert cfg.out == "r.csv"


def test_grid_comma_list_and_bounds():
    assert parse_grid("0.1,0.2") == (0.1, 0.2)
    assert parse_grid("") == ()
    with pytest.raises(Exception):
        parse_grid("0.0,0.5")
    with pytest.raises(Exception):
        parse_grid("1.0")


def test_tn_defaults_chi16():
    cfg = parse_config("run --decoder tn --p 0.1".split())
    assert cfg.chi == 16


def test_even_distance_is_usage_error(capsys):
    assert main("run --distance 4 --p 0.1".split()) == 2
    assert "usage error" in capsys.readouterr().err


def test_exact_decoder_requires_d3(capsys):
    assert main("run --decoder exact --distance 5 --p 0.1".split()) == 2


def test_unknown_flag_rejected():
    with pytest.raises(SystemExit) as excinfo:
        parse_config("run --no-such-flag 1".split())
    assert excinfo.value.code == 2


def test_help_lists_every_decoder(capsys):
    with pytest.raises(SystemExit) as excinfo:
        parse_config(["run", "--help"])
    assert excinfo.value.code == 0
    text = capsys.readouterr().out
    for decoder_id in DECODER_IDS:
        assert decoder_id in text
    for flag in ("--decoder", "--distance", "--eta", "--p", "--gamma", "--lambda",
                 "--erasure-rate", "--chi", "--osd-order", "--bp-iters",
                 "--target-failures", "--max-trials", "--seed", "--jobs", "--out"):
        assert flag in text


def test_seed_from_environment():
    cfg = parse_config("run --p 0.1".split(), env={"SURFDEC_SEED": "31"})
    assert cfg.seed == 31
    cfg = parse_config("run --p 0.1 --seed 2".split(), env={"SURFDEC_SEED": "31"})
    assert cfg.seed == 2


def test_config_file_merge_and_flag_priority(tmp_path):
    config_file = tmp_path / "exp.json"
    config_file.write_text(json.dumps({
        "decoder": "uf", "distances": [3, 5], "p_grid": [0.1, 0.12], "seed": 9,
    }))
    cfg = parse_config(["run", "--config", str(config_file), "--seed", "4"])
    assert cfg.decoder == "uf"
    assert cfg.distances == (3, 5)
    assert cfg.p_grid == (0.1, 0.12)
    assert cfg.seed == 4  # flag wins


def test_config_round_trip(tmp_path):
    cfg = parse_config(
        "run --decoder bposd0 --distance 3,5 --eta 10 --p 0.05,0.1 --seed 5"
        " --jobs 1 --out x.csv".split()
    )
    config_file = tmp_path / "full.json"
    config_file.write_text(json.dumps(cfg.to_dict()))
    again = parse_config(["run", "--config", str(config_file)])
    assert again == cfg


def test_config_file_rejects_unknown_keys(tmp_path):
    config_file = tmp_path / "bad.json"
    config_file.write_text(json.dumps({"decoder": "uf", "nonsense": 1}))
    assert main(["run", "--config", str(config_file), "--p", "0.1"]) == 2


def test_twirl_channel_single_point(tmp_path):
    out = tmp_path / "twirl.csv"
    code_args = (
        f"run --decoder uf --distance 3 --gamma 0.05 --lambda 0.4 --seed 1"
        f" --target-failures 3 --max-trials 300 --jobs 1 --out {out}"
    )
    assert main(code_args.split()) == 0
    points = read_results(out)
    assert len(points) == 1
    # the twirled channel fixes (p, eta) jointly; scattering dominates here
    assert 0 < points[0].p < 1
    assert points[0].eta > 0.5


def test_empty_grid_writes_header_only(tmp_path):
    out = tmp_path / "empty.csv"
    assert main(["run", "--p", "", "--out", str(out), "--jobs", "1"]) == 0
    assert out.read_text(encoding="utf-8") == CSV_HEADER + "\n"


def test_rerun_is_identical_except_wall_time(tmp_path):
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    base = ("run --decoder mwpm --distance 3 --p 0.12,0.15 --seed 8"
            " --target-failures 5 --max-trials 500 --jobs 1 --out {}")
    assert main(base.format(out1).split()) == 0
    assert main(base.format(out2).split()) == 0
    rows1 = [line.rsplit(",", 1)[0] for line in out1.read_text().splitlines()]
    rows2 = [line.rsplit(",", 1)[0] for line in out2.read_text().splitlines()]
    assert rows1 == rows2
    assert len(rows1) == 3  # header + 2 points


def test_parallel_and_serial_rows_agree(tmp_path):
    out1, out2 = tmp_path / "s.csv", tmp_path / "p.csv"
    base = ("run --decoder uf --distance 3 --p 0.15 --seed 12"
            " --target-failures 8 --max-trials 2000 --jobs {} --out {}")
    assert main(base.format(1, out1).split()) == 0
    assert main(base.format(2, out2).split()) == 0
    a, b = read_results(out1)[0], read_results(out2)[0]
    assert a.key() == b.key()


def test_interrupted_run_leaves_valid_csv(tmp_path):
    out = tmp_path / "partial.csv"
    args = [
        sys.executable, "-m", "surfdec.cli", "run",
        "--decoder", "mwpm", "--distance", "3,5,7,9",
        "--p", "0.05:0.2:0.01", "--target-failures", "50",
        "--max-trials", "200000", "--jobs", "1", "--seed", "3",
        "--out", str(out),
    ]
    proc = subprocess.Popen(args, stdout=subprocess.DEVNULL, stderr=subprocess.DEVNULL)
    deadline = time.time() + 60
    try:
        while time.time() < deadline:
            if out.exists() and len(out.read_text().splitlines()) >= 3:
                break
            time.sleep(0.1)
        else:
            pytest.fail("run produced no rows to interrupt")
    finally:
        proc.send_signal(signal.SIGKILL)
        proc.wait()
    points = read_results(out)  # parses cleanly
    assert len(points) >= 2
    assert all(p.trials > 0 for p in points)

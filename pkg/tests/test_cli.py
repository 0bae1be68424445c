import json
import os
import subprocess
import sys

import pytest

from matgalois.cli import ConfigError, ExperimentConfig, main
from matgalois.cli.config import COMMANDS, coerce_params, default_workers, parse_key_values
from matgalois.cli.main import build_parser, config_from_args

from oracles import R21


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_census_to_stdout(capsys):
    code, out, err = run(["census", "--n", "2", "--t", "8", "--mode", "exhaustive", "--stats", "inteig"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("n,T,statistic")
    assert lines[1].split(",")[:5] == ["2", "8", "inteig", "exhaustive", str(R21[8])]
    assert "PASS" in err


def test_outputs_and_manifest(tmp_path, capsys):
    out = tmp_path / "r.csv"
    code, _, _ = run(["census", "--n", "2", "--t", "3", "--stats", "inteig,singular", "--out", str(out)], capsys)
    assert code == 0
    rows = [json.loads(line) for line in (tmp_path / "r.jsonl").read_text().splitlines()]
    assert [r["statistic"] for r in rows] == ["inteig", "singular"]
    man = json.loads((tmp_path / "r.manifest.json").read_text())
    assert man["config"]["params"]["t"] == 3 and man["exit_status"] == 0
    assert set(man["artifacts"]) == {str(out), str(tmp_path / "r.jsonl")}
    assert man["started"] <= man["finished"]
    assert all(man["criteria"].values())


def test_verify_reiner_passes(capsys):
    code, out, err = run(["verify", "reiner", "--n", "2", "--q", "3"], capsys)
    assert code == 0 and "1/3" in err
    assert "q,n,f,count,deviation" in out


def test_verify_index_and_pinch_and_dft(capsys):
    assert run(["verify", "index", "--primes", "2,3,5", "--n", "3"], capsys)[0] == 0
    code, _, err = run(["verify", "pinch", "--t", "100"], capsys)
    assert code == 0 and "(3, 1)" in err
    assert run(["verify", "dft", "--p", "3", "--n", "2", "--k", "1"], capsys)[0] == 0


def test_verify_dd(capsys):
    code, out, _ = run(["verify", "dd", "--n", "3", "--trials", "10", "--seed", "7"], capsys)
    assert code == 0 and "divisibility_violated,0" in out


def test_pinch_with_small_constant_fails(capsys):
    # c = 1 also pinches (2,1) on the real lengths, so the exact-set check fails
    code, _, err = run(["verify", "pinch", "--t", "100", "--c", "1"], capsys)
    assert code == 1 and "FAIL" in err


def test_galois(capsys):
    code, out, _ = run(["galois", "--poly", "[-1,-1,0,0,0,1]"], capsys)
    assert code == 0 and "CertifiedSn" in out
    code, out, _ = run(["galois", "--matrix", "[[0,1],[1,0]]"], capsys)
    assert "ReducibleSplit" in out


def test_fit_inline_points(capsys):
    pts = ",".join(f"{T}:{v}" for T, v in R21.items())
    code, out, _ = run(["fit", "--points", pts, "--a-range", "2.7,3.3"], capsys)
    assert code == 0
    assert run(["fit", "--points", pts, "--a-range", "5,6"], capsys)[0] == 1


def test_fit_from_csv(tmp_path, capsys):
    out = tmp_path / "c.csv"
    rows = []
    for T in (4, 8, 16):
        main(["census", "--n", "2", "--t", str(T), "--out", str(tmp_path / f"t{T}.csv")])
        rows += (tmp_path / f"t{T}.csv").read_text().splitlines()[1:]
    out.write_text("n,T,statistic,mode,count_or_hits,samples,ci_low,ci_high,seed\n" + "\n".join(rows) + "\n")
    capsys.readouterr()
    code, text, _ = run(["fit", "--input", str(out)], capsys)
    assert code == 0 and text.splitlines()[1].startswith("inteig,")


@pytest.mark.parametrize("argv", [
    ["census", "--n", "2", "--t", "3", "--bogus", "1"],
    ["census", "--n", "2"],
    ["census", "--n", "4", "--t", "10"],
    ["verify", "reiner", "--q", "4"],
    ["frobnicate"],
    ["resume"],
    ["galois"],
])
def test_usage_errors_exit_2(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2


def test_usage_error_names_field(capsys):
    code, _, err = run(["verify", "dft", "--p", "6"], capsys)
    assert code == 2 and "p:" in err
    code, _, err = run(["census", "--n", "4", "--t", "10"], capsys)
    assert "montecarlo" in err


def test_config_file_and_flag_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# census settings\ncommand=\"census\"\nn=2\nt=5\nstats=\"singular\"\n")
    code, out, _ = run(["census", "--config", str(cfg), "--t", "2"], capsys)
    assert code == 0 and out.splitlines()[1].startswith("2,2,singular")
    cfg.write_text("command=\"fit\"\n")
    assert run(["census", "--config", str(cfg), "--n", "2", "--t", "2"], capsys)[0] == 2


def test_config_round_trip():
    for command in COMMANDS:
        params = coerce_params(command, {"n": 3, "t": 4} if command == "census" else {})
        cfg = ExperimentConfig(command, params, seed=5, out="a.csv", checkpoint="c.ckpt", workers=2)
        back = ExperimentConfig.parse(cfg.dumps())
        assert back == cfg
        assert ExperimentConfig.from_dict(json.loads(json.dumps(cfg.to_dict()))) == cfg


def test_parse_key_values_errors():
    assert parse_key_values("a=1\nb=x y\n# c=2\nstats=\"inteig\"") == {"a": 1, "b": "x y", "stats": "inteig"}
    with pytest.raises(ConfigError, match="line 1"):
        parse_key_values("novalue")
    with pytest.raises(ConfigError, match="n:"):
        coerce_params("census", {"n": "two", "t": 1})


def test_workers_env():
    assert default_workers({}) == 1
    assert default_workers({"MATGALOIS_WORKERS": "3"}) == 3
    with pytest.raises(ConfigError):
        default_workers({"MATGALOIS_WORKERS": "0"})
    ns = build_parser().parse_args(["verify", "reiner"])
    assert config_from_args(ns, env={"MATGALOIS_WORKERS": "4"}).workers == 4


def test_resume_after_interrupt(tmp_path, capsys):
    ck, out = tmp_path / "k.ckpt", tmp_path / "k.csv"
    base = ["census", "--n", "2", "--t", "4", "--stats", "inteig", "--chunk-size", "500"]
    code, _, err = run(base + ["--checkpoint", str(ck), "--out", str(out), "--max-chunks", "5"], capsys)
    assert code == 1 and "resume" in err and not out.exists()
    code, _, _ = run(["resume", "--checkpoint", str(ck)], capsys)
    assert code == 0
    ref = tmp_path / "ref.csv"
    run(base + ["--out", str(ref)], capsys)
    assert out.read_text() == ref.read_text()
    # resuming a finished run is a no-op that succeeds
    assert run(["resume", "--checkpoint", str(ck)], capsys)[0] == 0
    assert out.read_text() == ref.read_text()


def test_resume_refuses_corrupt_checkpoint(tmp_path, capsys):
    ck = tmp_path / "bad.ckpt"
    run(["census", "--n", "2", "--t", "2", "--chunk-size", "100", "--checkpoint", str(ck), "--max-chunks", "2"], capsys)
    lines = ck.read_text().splitlines()
    ck.write_text(lines[0] + "\n{broken\n")
    code, _, err = run(["resume", "--checkpoint", str(ck)], capsys)
    assert code == 2 and "corrupt" in err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "matgalois", "verify", "reiner", "--n", "2", "--q", "2"],
        capture_output=True, text=True, env={**os.environ, "MATGALOIS_WORKERS": "1"},
    )
    assert proc.returncode == 0 and "PASS" in proc.stderr
    bad = subprocess.run([sys.executable, "-m", "matgalois", "census", "--nope"], capture_output=True, text=True)
    assert bad.returncode == 2

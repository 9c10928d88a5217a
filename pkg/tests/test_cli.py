"""End-to-end command line behavior: configs, exit codes, outputs."""

import json
import os

import pytest

from hilbertseries.cli import main, parse_measure_shorthand
from hilbertseries.errors import ConfigError


def run(args):
    return main(list(args))


def test_measure_shorthand():
    assert parse_measure_shorthand("lebesgue")["density"]["kind"] == "constant"
    d = parse_measure_shorthand("dirac:0.5:2.0")
    assert d["atoms"] == [{"t": 0.5, "mass": 2.0}]
    assert parse_measure_shorthand("one_minus_t:2")["density"]["params"]["s"] == 2.0
    assert parse_measure_shorthand("monomial:3:0.5")["density"]["params"] == {
        "k": 3.0,
        "c": 0.5,
    }
    with pytest.raises(ConfigError):
        parse_measure_shorthand("cauchy:1")
    with pytest.raises(ConfigError):
        parse_measure_shorthand("dirac:half")


def test_moments_run_and_outputs(tmp_path, capsys):
    out = tmp_path / "m.json"
    code = run(
        ["moments", "--measure", "lebesgue", "--n-max", "16", "--output", str(out)]
    )
    assert code == 0
    doc = json.load(open(out))
    assert doc["experiment"] == "moments"
    assert doc["params"]["outcome"]["total_mass"] == 1.0
    assert doc["trace"][0]["estimate"] == 1.0
    assert os.path.exists(tmp_path / "m.trace.csv")
    assert os.path.exists(tmp_path / "m.png")


def test_no_figures_flag(tmp_path):
    out = tmp_path / "m.json"
    code = run(
        [
            "moments",
            "--measure",
            "lebesgue",
            "--n-max",
            "8",
            "--output",
            str(out),
            "--no-figures",
        ]
    )
    assert code == 0
    assert not os.path.exists(tmp_path / "m.png")


def test_carleson_example(tmp_path):
    out = tmp_path / "c.json"
    code = run(
        [
            "carleson",
            "--measure",
            "dirac:0.5",
            "--s",
            "1",
            "--output",
            str(out),
            "--no-figures",
        ]
    )
    assert code == 0
    doc = json.load(open(out))
    assert doc["params"]["outcome"]["sup_ratio"] == 2.0
    assert doc["params"]["outcome"]["argmax_t"] == 0.5


def test_unknown_param_exits_2(tmp_path, capsys):
    cfg = tmp_path / "bad.json"
    cfg.write_text(
        json.dumps(
            {
                "command": "carleson",
                "measure": {"atoms": [{"t": 0.5, "mass": 1.0}]},
                "params": {"s": 1.0, "bogus": 2},
            }
        )
    )
    assert run(["carleson", "--config", str(cfg), "--no-figures"]) == 2
    assert "bogus" in capsys.readouterr().err


def test_domain_error_exits_3(capsys):
    code = run(
        ["norm", "--measure", "lebesgue", "--p", "2", "--alpha", "1.5", "--M", "100"]
    )
    assert code == 3


def test_precision_cap_exits_4(tmp_path):
    code = run(
        [
            "apply",
            "--measure",
            "lebesgue",
            "--p",
            "2",
            "--alpha",
            "0",
            "--family",
            '{"family": "b", "b": 0.999999999999}',
            "--m-out",
            "4",
            "--output",
            str(tmp_path / "x.json"),
        ]
    )
    assert code == 4


def test_validate_only_catches_precondition(capsys):
    code = run(
        [
            "sharpness",
            "--measure",
            "lebesgue",
            "--p",
            "2",
            "--alpha",
            "0",
            "--eps-list",
            "[0.1]",
            "--tau-list",
            "[1.5]",
            "--M",
            "1000",
            "--validate-only",
        ]
    )
    assert code == 2
    err = capsys.readouterr().err
    assert "tau" in err


def test_validate_only_clean(capsys):
    code = run(
        [
            "norm",
            "--measure",
            "lebesgue",
            "--p",
            "2",
            "--alpha",
            "0",
            "--M",
            "500",
            "--validate-only",
        ]
    )
    assert code == 0
    assert "ok" in capsys.readouterr().out


def test_determinism_modulo_runtime(tmp_path):
    args = [
        "norm",
        "--measure",
        "lebesgue",
        "--p",
        "2",
        "--alpha",
        "0",
        "--M",
        "2000",
        "--schedule",
        "[0.2, 0.1]",
        "--no-figures",
    ]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(args + ["--output", str(a)]) == 0
    assert run(args + ["--output", str(b)]) == 0
    da, db = json.load(open(a)), json.load(open(b))
    da.pop("runtime_seconds")
    db.pop("runtime_seconds")
    assert da == db
    assert (tmp_path / "a.trace.csv").read_text() == (tmp_path / "b.trace.csv").read_text()


def test_csv_format_primary(tmp_path):
    out = tmp_path / "t.csv"
    code = run(
        [
            "carleson",
            "--measure",
            "lebesgue",
            "--s",
            "1",
            "--format",
            "csv",
            "--output",
            str(out),
            "--no-figures",
        ]
    )
    assert code == 0
    first = out.read_text().splitlines()[0]
    assert first == "parameter,estimate,slack,cumulative_max"
    assert os.path.exists(str(out) + ".json")


def test_directory_mode(tmp_path, capsys):
    good = {
        "command": "moments",
        "measure": {"density": {"kind": "constant", "params": {"c": 1.0}}},
        "params": {"n_max": 8},
    }
    bad = {"command": "moments", "measure": good["measure"], "params": {"n_max": -3}}
    (tmp_path / "a.json").write_text(json.dumps(good))
    (tmp_path / "b.json").write_text(json.dumps(bad))
    code = run(["moments", "--config", str(tmp_path), "--workers", "2", "--no-figures"])
    assert code == 3  # worst exit wins
    assert os.path.exists(tmp_path / "a.report.json")
    # reports are not picked up as configs on a second sweep
    code2 = run(["moments", "--config", str(tmp_path), "--no-figures"])
    capsys.readouterr()
    assert code2 == 3


def test_directory_validate(tmp_path, capsys):
    doc = {
        "command": "moments",
        "measure": {"density": {"kind": "constant", "params": {"c": 1.0}}},
        "params": {"n_max": 8},
    }
    (tmp_path / "a.json").write_text(json.dumps(doc))
    assert run(["validate", "--config", str(tmp_path)]) == 0
    assert not os.path.exists(tmp_path / "a.report.json")  # validate never runs


def test_moment_table_cache_roundtrip(tmp_path):
    tbl = tmp_path / "cache.txt"
    m_out = tmp_path / "m.json"
    code = run(
        [
            "moments",
            "--measure",
            "lebesgue",
            "--n-max",
            "64",
            "--table-out",
            str(tbl),
            "--output",
            str(m_out),
            "--no-figures",
        ]
    )
    assert code == 0 and os.path.exists(tbl)
    a_out = tmp_path / "a.json"
    code = run(
        [
            "apply",
            "--measure",
            "lebesgue",
            "--p",
            "2",
            "--alpha",
            "0",
            "--family",
            '{"family": "custom", "values": [1.0]}',
            "--m-out",
            "4",
            "--table-in",
            str(tbl),
            "--output",
            str(a_out),
            "--no-figures",
        ]
    )
    assert code == 0
    doc = json.load(open(a_out))
    # H(e_1)(m) = mu[m+1] from the cached table
    assert doc["trace"][0]["estimate"] == 0.5


def test_seed_threads_into_identities(tmp_path):
    out = tmp_path / "i.json"
    code = run(
        [
            "identities",
            "--trials",
            "10",
            "--seed",
            "7",
            "--output",
            str(out),
            "--no-figures",
        ]
    )
    assert code == 0
    doc = json.load(open(out))
    assert doc["params"]["seed"] == 7
    assert doc["params"]["outcome"]["all_within_tolerance"] is True


def test_config_flag_override(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(
        json.dumps(
            {
                "command": "carleson",
                "measure": {"atoms": [{"t": 0.5, "mass": 1.0}]},
                "params": {"s": 2.0},
            }
        )
    )
    out = tmp_path / "r.json"
    code = run(
        [
            "carleson",
            "--config",
            str(cfg),
            "--s",
            "1",
            "--output",
            str(out),
            "--no-figures",
        ]
    )
    assert code == 0
    doc = json.load(open(out))
    assert doc["params"]["s"] == 1.0  # flag wins over the config document


def test_config_accepts_measure_shorthand_string(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(
        json.dumps({"command": "moments", "measure": "dirac:0.5", "params": {"n_max": 4}})
    )
    out = tmp_path / "r.json"
    code = run(["moments", "--config", str(cfg), "--output", str(out), "--no-figures"])
    assert code == 0
    doc = json.load(open(out))
    assert doc["params"]["outcome"]["total_mass"] == 1.0
    assert [row["estimate"] for row in doc["trace"][:3]] == [1.0, 0.5, 0.25]


def test_config_subcommand_mismatch(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"command": "moments", "params": {"n_max": 4}}))
    assert run(["carleson", "--config", str(cfg)]) == 2

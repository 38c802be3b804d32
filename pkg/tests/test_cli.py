"""CLI behavior through click's test runner: round trips, exit codes,
deterministic simulation reports, and the bundled example replay."""

import json
from importlib import resources

import pytest
from click.testing import CliRunner

from agkeq.cli import main
from test_config import minimal_klein


@pytest.fixture()
def runner():
    return CliRunner()


@pytest.fixture()
def cfg_path(tmp_path):
    path = tmp_path / "klein.json"
    path.write_text(json.dumps(minimal_klein()), encoding="utf-8")
    return str(path)


@pytest.fixture()
def fixture_cfg_path(tmp_path):
    text = resources.files("agkeq.fixtures").joinpath("klein_f8.json").read_text("utf-8")
    path = tmp_path / "klein_fixture.json"
    path.write_text(text, encoding="utf-8")
    return str(path), json.loads(text)


def test_info_reports_parameters(runner, cfg_path, tmp_path):
    out = tmp_path / "info.json"
    res = runner.invoke(main, ["info", "--config", cfg_path, "--out", str(out)])
    assert res.exit_code == 0, res.output
    assert "n=21 k=11 d*=8 t=3 g=3" in res.output
    assert "rational points: 24" in res.output
    data = json.loads(out.read_text("utf-8"))
    assert data["n"] == 21 and data["rational_points"] == 24
    assert data["backend"] in ("c", "py")


def test_encode_corrupt_decode_round_trip(runner, cfg_path, tmp_path):
    msg = tmp_path / "msg.txt"
    msg.write_text("\n".join(["1", "a", "a^2", "0", "a^6", "1", "0", "a^3", "a", "1", "a^5"]) + "\n")
    word = tmp_path / "word.txt"
    res = runner.invoke(main, ["encode", "--config", cfg_path, str(msg), "--out", str(word)])
    assert res.exit_code == 0, res.output
    lines = word.read_text("utf-8").splitlines()
    assert len(lines) == 21

    dirty = tmp_path / "dirty.txt"
    res = runner.invoke(
        main,
        ["corrupt", "--config", cfg_path, str(word), "--weight", "2", "--seed", "5", "--out", str(dirty)],
    )
    assert res.exit_code == 0, res.output
    diffs = sum(a != b for a, b in zip(lines, dirty.read_text("utf-8").splitlines()))
    assert diffs == 2

    report = tmp_path / "decoded.json"
    res = runner.invoke(main, ["decode", "--config", cfg_path, str(dirty), "--out", str(report)])
    assert res.exit_code == 0, res.output
    data = json.loads(report.read_text("utf-8"))
    assert data["ok"] and data["weight"] == 2
    assert data["codeword"] == lines
    assert data["trace"][0]["r"] == 0


def test_corrupt_requires_exactly_one_error_source(runner, cfg_path, tmp_path):
    word = tmp_path / "word.txt"
    word.write_text("\n".join(["0"] * 21) + "\n")
    res = runner.invoke(main, ["corrupt", "--config", cfg_path, str(word)])
    assert res.exit_code == 3
    res = runner.invoke(
        main,
        ["corrupt", "--config", cfg_path, str(word), "--weight", "1", "--error", str(word)],
    )
    assert res.exit_code == 3
    assert "exactly one" in res.stderr


def test_explicit_error_file(runner, cfg_path, tmp_path):
    word = tmp_path / "word.txt"
    word.write_text("\n".join(["0"] * 21) + "\n")
    err = tmp_path / "err.txt"
    err.write_text("\n".join(["a"] + ["0"] * 20) + "\n")
    res = runner.invoke(main, ["corrupt", "--config", cfg_path, str(word), "--error", str(err)])
    assert res.exit_code == 0
    assert res.output.splitlines()[0] == "a"


def test_config_errors_exit_3(runner, cfg_path, tmp_path):
    res = runner.invoke(main, ["info", "--config", str(tmp_path / "missing.json")])
    assert res.exit_code == 3
    assert "config error" in res.stderr

    bad = tmp_path / "bad.json"
    bad.write_text('{"field": {}}', encoding="utf-8")
    res = runner.invoke(main, ["info", "--config", str(bad)])
    assert res.exit_code == 3

    short = tmp_path / "short.txt"
    short.write_text("0\n1\n", encoding="utf-8")
    res = runner.invoke(main, ["decode", "--config", cfg_path, str(short)])
    assert res.exit_code == 3
    assert "expected 21 symbols" in res.stderr


def test_decode_failure_exits_2(runner, fixture_cfg_path, tmp_path):
    """The bundled weight-3 reference word defeats the plain key
    equation, so ke-only decoding must report failure."""
    path, raw = fixture_cfg_path
    wordfile = tmp_path / "y1.txt"
    wordfile.write_text("\n".join(raw["reference"]["y1"]) + "\n", encoding="utf-8")
    report = tmp_path / "res.json"
    res = runner.invoke(
        main, ["decode", "--config", path, str(wordfile), "--ke-only", "--out", str(report)]
    )
    assert res.exit_code == 2
    data = json.loads(report.read_text("utf-8"))
    assert not data["ok"] and data["reason"].startswith("ke_")


def test_simulate_deterministic_report(runner, cfg_path, tmp_path):
    args = [
        "simulate",
        "--config",
        cfg_path,
        "--seed",
        "9",
        "--trials",
        "3",
        "--weight",
        "0",
        "--weight",
        "2",
    ]
    out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
    res1 = runner.invoke(main, args + ["--out", str(out1)])
    res2 = runner.invoke(main, args + ["--out", str(out2)])
    assert res1.exit_code == 0, res1.output
    assert res2.exit_code == 0
    assert out1.read_bytes() == out2.read_bytes()
    data = json.loads(out1.read_text("utf-8"))
    assert [r["weight"] for r in data["rows"]] == [0, 2]
    assert all(r["successes"] == 3 for r in data["rows"])
    assert data["environment"]["seed"] == 9
    assert "successes" in res1.output


def test_simulate_ke_columns(runner, cfg_path, tmp_path):
    out = tmp_path / "ke.json"
    res = runner.invoke(
        main,
        [
            "simulate",
            "--config",
            cfg_path,
            "--trials",
            "2",
            "--weight",
            "1",
            "--ke-only",
            "--out",
            str(out),
        ],
    )
    assert res.exit_code == 0, res.output
    row = json.loads(out.read_text("utf-8"))["rows"][0]
    assert row["ke_successes"] + row["ke_failures"] + row["ke_miscorrections"] == 2


def test_reproduce_example_1(runner, tmp_path):
    out = tmp_path / "ex1.json"
    res = runner.invoke(main, ["reproduce-example", "1", "--out", str(out)])
    assert res.exit_code == 0, res.output
    report = json.loads(out.read_text("utf-8"))
    assert report["passed"] and report["example"] == 1
    names = {c["name"] for c in report["checks"]}
    assert "round0_key_equation_rejects" in names
    assert "ke_only_rejects_reference_word" in names
    for check in report["checks"]:
        if check["required"]:
            assert check["pass"], check["name"]
    assert "PASS" in res.output


def test_version_and_help(runner):
    assert runner.invoke(main, ["--version"]).exit_code == 0
    res = runner.invoke(main, ["--help"])
    assert res.exit_code == 0
    for cmd in ("info", "encode", "corrupt", "decode", "simulate", "reproduce-example"):
        assert cmd in res.output

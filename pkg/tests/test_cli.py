import json
import pathlib

import pytest

from tslkit import fixtures
from tslkit.cfm import write_cfm
from tslkit.cli import main
from tslkit.interp import run
from tslkit.monitor import write_trace

ASSETS = pathlib.Path(__file__).parent.parent / "assets"


def test_parse_timer_summary(capsys):
    assert main(["parse", str(ASSETS / "timer.tsl"), "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["definitions"] == 15
    assert doc["statements"] == {
        "initially guarantee": 3,
        "always guarantee": 10,
    }
    assert doc["cells"] == ["time"]


def test_parse_syntax_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.tsl"
    bad.write_text("always guarantee { a && ; }")
    assert main(["parse", str(bad)]) == 2
    assert "error:" in capsys.readouterr().err


def test_cfm_validate(capsys):
    assert main(["cfm", "validate", str(ASSETS / "button.cfm.json")]) == 0
    assert main(["cfm", "validate", str(ASSETS / "loop.cfm.json")]) == 1
    assert "CellFreeCycle" in capsys.readouterr().out


def test_simulate_then_monitor(tmp_path, capsys):
    trace_file = tmp_path / "t.jsonl"
    assert main([
        "cfm", "simulate", str(ASSETS / "button.cfm.json"),
        "--fixture", "button", "--length", "15", "--seed", "4",
    ]) == 0
    trace_file.write_text(capsys.readouterr().out)
    assert main([
        "monitor", "--spec", str(ASSETS / "button.tsl"),
        "--trace", str(trace_file), "--fixture", "button",
    ]) == 0


def test_monitor_flags_violation(tmp_path, capsys):
    fx = fixtures.button_fixture()
    _, trace = run(fixtures.button_cfm(sabotage=True), fx.assignment,
                   [{"click": ("click",)}, {"click": ()}])
    trace_file = tmp_path / "bad.jsonl"
    trace_file.write_text(write_trace(trace))
    assert main([
        "monitor", "--spec", str(ASSETS / "button.tsl"),
        "--trace", str(trace_file), "--fixture", "button",
    ]) == 1
    assert "violation at step" in capsys.readouterr().out


def test_codegen_writes_file(tmp_path):
    out = tmp_path / "control.hs"
    assert main([
        "codegen", str(ASSETS / "button.cfm.json"),
        "--style", "applicative", "-o", str(out),
    ]) == 0
    golden = pathlib.Path(__file__).parent / "golden" / "button.applicative.hs"
    assert out.read_text() == golden.read_text()


def test_conform_exit_codes(capsys):
    common = ["--spec", str(ASSETS / "button.tsl"), "--fixture", "button",
              "--traces", "20", "--length", "25", "--seed", "6"]
    assert main(["conform", "--cfm", str(ASSETS / "button.cfm.json")] + common) == 0
    assert main(["conform", "--cfm", str(ASSETS / "button_sabotaged.cfm.json")]
                + common + ["--format", "json"]) == 1
    out = capsys.readouterr().out
    doc = json.loads(out[out.index("{"):])
    assert doc["ok"] is False and doc["failures"]


def test_roundtrip_is_canonical(tmp_path, capsys):
    assert main(["cfm", "roundtrip", str(ASSETS / "identity.cfm.json")]) == 0
    assert capsys.readouterr().out == write_cfm(fixtures.identity_cfm())


def test_unknown_fixture_rejected(capsys):
    with pytest.raises(SystemExit):
        main(["monitor", "--spec", "x", "--trace", "y", "--fixture", "nope"])

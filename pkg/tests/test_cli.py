import json
import subprocess
import sys

import jsonschema
import pytest

from hlprofile import __version__
from hlprofile.cli import ERROR_SCHEMA, REPORT_SCHEMA, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, json.loads(out.out), out.err


EVERY_COMMAND = [
    ["normal-form", "--group", "k", "t x0 t^-1 z"],
    ["normal-form", "--group", "cn", "--n", "3", "x3 x1 J"],
    ["normal-form", "--group", "k0", "z x0 z^-1 x0"],
    ["decide", "--group", "k", "t z t^-1 z^-2"],
    ["equal", "--group", "k", "t z t^-1", "z^2"],
    ["mult", "--group", "cn", "--n", "3", "x1 x3", "x2 x3"],
    ["mult", "--group", "k0", "z x0", "z^-1 x0"],
    ["mult", "--group", "k", "t", "z"],
    ["build-z", "5"],
    ["build-x", "1000"],
    ["fuzz", "--seed", "1", "--count", "10", "--max-length", "300"],
    ["rep-exact", "--n", "5"],
    ["rep-defect", "--n", "4", "--seed", "2", "--norm", "schatten:4"],
    ["rep-lift", "--n", "3", "--magnitude", "0.001", "--seed", "1", "--norm", "operator"],
    ["rep-fit", "--n", "3", "--magnitude", "0.001", "--seed", "1"],
    ["rep-lemma-check", "--d", "4", "--n", "5", "--eps", "0.01", "--delta-j", "2"],
    ["rep-search", "--n", "5", "--d", "2", "--iterations", "50", "--seed", "0"],
    ["hlp-bound", "--delta", "2", "--eps", "0.000001", "--c4", "1", "--kappa", "0.1"],
    ["derive-bound", "--group", "cn", "--n", "4", "--seed", "3"],
    ["derive-bound", "--group", "k", "--seed", "3", "--eps", "0.01"],
    ["bench", "--seed", "0", "--lengths", "200,400", "--trials", "1"],
]


@pytest.mark.parametrize("argv", EVERY_COMMAND, ids=lambda a: " ".join(a[:3]))
def test_every_command_validates(capsys, argv):
    code, report, err = run(capsys, *argv)
    assert code == 0, report
    jsonschema.validate(report, REPORT_SCHEMA)
    assert report["command"] == argv[0]
    assert report["version"] == __version__
    assert err.startswith(argv[0])


def test_decide_examples(capsys):
    _, report, _ = run(capsys, "decide", "--group", "k", "t z t^-1 z^-2")
    assert report["result"] == {"trivial": True}
    _, report, _ = run(capsys, "decide", "--group", "k", "J")
    assert report["result"] == {"trivial": False}


def test_hlp_bound_fields(capsys):
    _, report, _ = run(capsys, "hlp-bound", "--delta", "2", "--eps", "0.000001",
                       "--c4", "1", "--kappa", "0.1")
    result = report["result"]
    assert {"n", "d_min", "alpha", "C", "Cprime"} <= set(result)
    assert result["n"] == 121 and int(result["d_min"]) == 2**59


@pytest.mark.parametrize("argv", [
    ["decide", "--group", "k", "t z^3 t^-1 x0 J"],
    ["equal", "--group", "k", "t z", "z^2 t"],
    ["normal-form", "--group", "k", "x0 t z t^-1"],
])
def test_referentially_transparent(capsys, argv):
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert json.dumps(a["result"]) == json.dumps(b["result"])
    assert a["inputs"] == b["inputs"]


def test_seeded_commands_are_deterministic(capsys):
    argv = ["rep-search", "--n", "3", "--d", "1", "--iterations", "40", "--seed", "5"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a["result"] == b["result"] and a["seed"] == 5


@pytest.mark.parametrize("argv", [
    [], ["bogus"], ["decide"], ["fuzz", "--count", "3"], ["decide", "--group", "cn", "x1"],
    ["hlp-bound", "--delta", "2"], ["rep-search", "--n", "5", "--d", "2"],
])
def test_usage_errors(capsys, argv):
    code, err, _ = run(capsys, *argv)
    assert code == 2
    jsonschema.validate(err, ERROR_SCHEMA)
    assert err["error"]["kind"] == "usage"


@pytest.mark.parametrize("argv,etype", [
    (["decide", "--group", "k", "x0 q"], "WordSyntaxError"),
    (["decide", "--group", "cn", "--n", "2", "x3"], "AlphabetError"),
    (["rep-exact", "--n", "15"], "ValueError"),
    (["rep-fit", "--n", "3", "--magnitude", "0.5", "--seed", "1"], "StabilityPreconditionError"),
    (["rep-search", "--n", "5", "--d", "4", "--seed", "0"], "ValueError"),
    (["hlp-bound", "--delta", "-1", "--eps", "1", "--c4", "1", "--kappa", "1"], "ValueError"),
])
def test_domain_errors(capsys, argv, etype):
    code, err, _ = run(capsys, *argv)
    assert code == 1
    jsonschema.validate(err, ERROR_SCHEMA)
    assert err["error"]["type"] == etype


def test_syntax_error_position(capsys):
    _, err, _ = run(capsys, "decide", "--group", "k", "x0 q")
    assert err["error"]["position"] == 3


def test_json_indent(capsys):
    main(["build-z", "3", "--json-indent", "2"])
    out = capsys.readouterr().out
    assert out.startswith("{\n  ")


def test_out_files(capsys, tmp_path):
    path = tmp_path / "table.json"
    code, _, _ = run(capsys, "rep-lift", "--n", "2", "--magnitude", "0.001", "--seed", "1",
                     "--out", str(path))
    assert code == 0
    code, report, _ = run(capsys, "rep-fit", "--table", str(path))
    assert code == 0 and report["result"]["distance"] <= 42 * report["result"]["defect"]
    corpus = tmp_path / "fuzz"
    run(capsys, "fuzz", "--seed", "2", "--count", "4", "--out", str(corpus))
    assert (tmp_path / "fuzz.trivial.txt").read_text().startswith("# seed: 2")


def test_fuzz_reports_no_disagreements(capsys):
    _, report, _ = run(capsys, "fuzz", "--seed", "7", "--count", "50", "--max-length", "500")
    assert report["result"]["disagreements"] == []
    assert report["result"]["max_bits_increment"] <= 3


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hlprofile", "decide", "--group", "k", "x0 x0"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["trivial"] is True

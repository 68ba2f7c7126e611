"""
Tests for the ctx command line
"""

import json
from pathlib import Path

import pytest

from corpus import bell_scenario
from ctx import main, parse_args
from distribution import uniform
from model import from_global, model_to_json
from scenario import enumerate_assignments

HERE = Path(__file__).parent


def ctx(capsys, *argv):
    code = main([str(a) for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def model_file(tmp_path, capsys):
    """Write a builtin model to a file and return its path"""

    def write(name):
        path = tmp_path / f"{name.replace(':', '_')}.json"
        code, _, _ = ctx(capsys, "gen", name, "-o", path)
        assert code == 0
        return path

    return write


def write_json(path, data):
    path.write_text(json.dumps(data), encoding="utf-8")
    return path


@pytest.mark.parametrize("name,expected", [("bell", 10), ("hardy", 11), ("pr", 12), ("ghz", 12), ("liar:5", 12)])
def test_analyze_exit_codes(model_file, capsys, name, expected):
    """Test that the exit status reports the contextuality level"""
    code, out, _ = ctx(capsys, "analyze", model_file(name))
    assert code == expected
    assert json.loads(out)["level"] in ("probabilistic", "possibilistic", "strong")


def test_analyze_non_contextual(tmp_path, capsys):
    """Test a model with a global section"""
    scenario = bell_scenario()
    model = from_global(scenario, uniform(list(enumerate_assignments(scenario, scenario.variables))))
    path = write_json(tmp_path / "uniform.json", model_to_json(model))
    code, out, _ = ctx(capsys, "analyze", path)
    assert code == 0
    report = json.loads(out)
    assert report["level"] == "none"
    assert report["global_section"] is not None
    assert report["consistent_global_count"] == 16


def test_analyze_hardy_report(model_file, capsys):
    """Test the witness and counts in the report"""
    code, out, _ = ctx(capsys, "analyze", model_file("hardy"))
    report = json.loads(out)
    assert report["witness_section"] == {"context": "a1,b1", "assignment": "0,0"}
    assert report["consistent_global_count"] == 5
    assert report["global_section"] is None
    assert report["variables"] == ["a1", "a2", "b1", "b2"]


def test_analyze_level_flag(model_file, capsys):
    """Test choosing the level that decides the exit status"""
    bell = model_file("bell")
    assert ctx(capsys, "analyze", bell, "--level", "strong")[0] == 0
    assert ctx(capsys, "analyze", bell, "--level", "probabilistic")[0] == 10
    assert ctx(capsys, "analyze", model_file("pr"), "--level", "possibilistic")[0] == 11


def test_analyze_signed(model_file, capsys):
    """Test the signed global section option"""
    _, out, _ = ctx(capsys, "analyze", model_file("bell"), "--signed")
    signed = json.loads(out)["signed_global_section"]
    assert signed
    assert any(value.startswith("-") for value in signed.values())
    _, out, _ = ctx(capsys, "analyze", model_file("hardy"), "--signed")
    assert "signed_global_section" not in json.loads(out)


def test_bell_with_propositions(model_file, capsys):
    """Test the logical Bell inequality on the Bell table"""
    code, out, _ = ctx(capsys, "bell", model_file("bell"), "--props", HERE / "sample_bell_propositions.json")
    assert code == 0
    result = json.loads(out)
    assert result["probabilities"] == ["1", "3/4", "3/4", "3/4"]
    assert result["sum"] == "13/4"
    assert result["bound"] == 3
    assert result["violation"] == "1/4"
    assert result["satisfiable"] is False


def test_bell_canonical(model_file, capsys):
    """Test the support propositions of every row"""
    code, out, _ = ctx(capsys, "bell", model_file("bell"), "--canonical")
    assert code == 0
    assert json.loads(out)["violation"] == "0"


def test_bell_source_is_exclusive(model_file, capsys):
    """Test the --props/--canonical choice"""
    bell = model_file("bell")
    props = HERE / "sample_bell_propositions.json"
    assert ctx(capsys, "bell", bell, "--props", props, "--canonical")[0] == 2
    assert ctx(capsys, "bell", bell)[0] == 2


def test_bad_normalization(tmp_path, model_file, capsys):
    """Test that every violation is listed with its context"""
    data = json.loads(model_file("bell").read_text())
    data["tables"]["a1,b1"] = {"0,0": "5/8", "1,1": "1/2"}
    code, _, err = ctx(capsys, "analyze", write_json(tmp_path / "bad.json", data))
    assert code == 3
    assert "a1,b1" in err
    assert "9/8" in err


def test_malformed_json(tmp_path, capsys):
    """Test JSON errors point at line and column"""
    path = tmp_path / "broken.json"
    path.write_text('{"scenario": ', encoding="utf-8")
    code, _, err = ctx(capsys, "analyze", path)
    assert code == 3
    assert f"{path}:1:14: invalid JSON" in err


def test_missing_file(tmp_path, capsys):
    """Test an unreadable model file"""
    code, _, err = ctx(capsys, "table", tmp_path / "missing.json")
    assert code == 3
    assert "cannot read model file" in err


def test_incompatible_model(tmp_path, model_file, capsys):
    """Test the exit status for signalling models"""
    data = json.loads(model_file("bell").read_text())
    data["tables"]["a1,b1"] = {"0,0": "1/4", "1,0": "1/4", "1,1": "1/2"}
    code, _, err = ctx(capsys, "analyze", write_json(tmp_path / "signal.json", data))
    assert code == 4
    assert "disagree on {a1}" in err


def test_collapse(model_file, capsys):
    """Test the possibilistic collapse command"""
    code, out, _ = ctx(capsys, "collapse", model_file("bell"))
    assert code == 0
    collapsed = json.loads(out)
    assert collapsed["semiring"] == "boolean"
    assert collapsed["tables"]["a1,b1"] == {"0,0": 1, "1,1": 1}

    hardy = HERE / "sample_hardy_model.json"
    _, out, _ = ctx(capsys, "collapse", hardy)
    assert json.loads(out) == json.loads(hardy.read_text())


def test_bundle_to_file(tmp_path, capsys):
    """Test DOT output to a file with a highlight"""
    target = tmp_path / "hardy.dot"
    code, out, _ = ctx(
        capsys, "bundle", HERE / "sample_hardy_model.json", "--highlight", "a1=0,b1=0", "-o", target
    )
    assert code == 0
    assert out == ""
    dot = target.read_text()
    assert dot.startswith("graph bundle {")
    assert '"a1_0" -- "b1_0" [penwidth=3];' in dot


def test_bundle_errors(model_file, capsys):
    """Test bundle failures map to the invalid-input status"""
    assert ctx(capsys, "bundle", model_file("ghz"))[0] == 3
    assert ctx(capsys, "bundle", model_file("pr"), "--highlight", "a1=0,b1=1")[0] == 3


def test_table(model_file, capsys):
    """Test the tabular view"""
    code, out, _ = ctx(capsys, "table", model_file("bell"))
    assert code == 0
    assert "context" in out
    assert "3/8" in out
    assert "a2,b2" in out


def test_quantum_reproduces_bell(capsys):
    """Test generating the Bell table from the state and angles"""
    code, generated, _ = ctx(
        capsys,
        "quantum",
        "--state",
        "bell",
        "--angles",
        HERE / "sample_bell_angles.json",
        "--scenario",
        HERE / "sample_bell_scenario.json",
    )
    assert code == 0
    _, builtin_bell, _ = ctx(capsys, "gen", "bell")
    assert generated == builtin_bell


def test_quantum_bad_state(capsys):
    """Test a state spec that names no state"""
    code, _, err = ctx(
        capsys,
        "quantum",
        "--state",
        "ghz:1",
        "--angles",
        HERE / "sample_bell_angles.json",
        "--scenario",
        HERE / "sample_bell_scenario.json",
    )
    assert code == 3
    assert err.startswith("ctx: ")


def test_output_is_deterministic(model_file, capsys):
    """Test that repeated runs print identical bytes"""
    hardy = model_file("hardy")
    first = ctx(capsys, "analyze", hardy)
    second = ctx(capsys, "analyze", hardy)
    assert first == second
    assert ctx(capsys, "gen", "specker") == ctx(capsys, "gen", "specker")


def test_usage_errors(capsys):
    """Test unknown builtins and commands"""
    code, _, err = ctx(capsys, "gen", "mermin")
    assert code == 2
    assert "unknown builtin" in err
    assert ctx(capsys, "frobnicate")[0] == 2
    assert ctx(capsys)[0] == 2


def test_parse_args_defaults():
    """Test the parsed run configuration"""
    config = parse_args(["bundle", "m.json", "--highlight", "a1=0,b1=0", "--highlight", "a2=1,b2=0"])
    assert config.command == "bundle"
    assert config.input_path == "m.json"
    assert config.highlights == ["a1=0,b1=0", "a2=1,b2=0"]
    assert config.output_path is None
    assert parse_args(["quantum", "--state", "bell", "--angles", "a", "--scenario", "s"]).max_denominator == 64


@pytest.mark.parametrize(
    "edit",
    [
        lambda data: data["tables"]["a1,b1"].update({"0,0": None}),
        lambda data: data["scenario"].update({"contexts": [1, 2]}),
        lambda data: data["scenario"].update({"outcomes": {"a1": 2}}),
        lambda data: data["scenario"].update({"variables": None}),
    ],
    ids=["null-cell", "int-contexts", "int-outcomes", "null-variables"],
)
def test_wrongly_shaped_model_files(tmp_path, model_file, capsys, edit):
    """Test that well-formed JSON of the wrong shape is reported, not raised"""
    data = json.loads(model_file("bell").read_text())
    edit(data)
    code, out, err = ctx(capsys, "analyze", write_json(tmp_path / "shape.json", data))
    assert code == 3
    assert out == ""
    assert err.startswith("ctx: ")

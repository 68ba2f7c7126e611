"""
Tests for empirical models: validation, compatibility, collapse and wire format
"""

from fractions import Fraction

import pytest

from corpus import bell_scenario, builtin
from distribution import RDistribution, SemiringTag, point_mass, uniform
from model import (
    ModelError,
    check_compatibility,
    from_global,
    mix_models,
    model_from_json,
    model_to_json,
    new_model,
    possibilistic_collapse,
    rename_variables,
    to_frame,
    validate,
)
from scenario import enumerate_assignments

QUARTER = [Fraction(1, 4)] * 4


def test_bell_and_pr_are_compatible():
    """Test no-signalling of the Bell table and the PR box"""
    assert check_compatibility(builtin("bell")).compatible
    assert check_compatibility(builtin("pr")).compatible
    assert check_compatibility(builtin("hardy")).compatible


def test_signalling_edit_is_reported():
    """Test the report for a row whose a1 marginal no longer matches"""
    rows = {
        "a1,b1": ["1/4", "1/4", 0, "1/2"],
        "a1,b2": ["3/8", "1/8", "1/8", "3/8"],
        "a2,b1": ["3/8", "1/8", "1/8", "3/8"],
        "a2,b2": ["1/8", "3/8", "3/8", "1/8"],
    }
    model = new_model(bell_scenario(), rows)
    assert validate(model) == []
    report = check_compatibility(model)
    assert not report.compatible
    assert len(report.violations) == 1
    violation = report.violations[0]
    assert (violation.context_c, violation.context_d) == (("a1", "b1"), ("a1", "b2"))
    assert violation.overlap == ("a1",)
    a1_zero = enumerate_assignments(model.scenario, ["a1"])[0]
    assert violation.marginal_c.weight(a1_zero) == Fraction(1, 4)
    assert violation.marginal_d.weight(a1_zero) == Fraction(1, 2)
    assert "disagree on {a1}" in violation.describe()


def test_collapse_of_bell_table():
    """Test that the collapse marks exactly the nonzero cells"""
    collapsed = possibilistic_collapse(builtin("bell"))
    assert collapsed.semiring is SemiringTag.BOOLEAN
    assert [collapsed.weight("a1,b1", k) for k in ("0,0", "1,0", "0,1", "1,1")] == [1, 0, 0, 1]
    for context in ("a1,b2", "a2,b1", "a2,b2"):
        assert len(collapsed.table(context).weights) == 4
    assert check_compatibility(collapsed).compatible


def test_collapse_of_boolean_model_is_an_error():
    """Test that only rational models collapse"""
    with pytest.raises(ModelError):
        possibilistic_collapse(builtin("pr"))


def test_collapse_of_rational_pr_box():
    """Test that a 0/1 table read as rationals collapses to itself"""
    rows = {"a1,b1": ["1/2", 0, 0, "1/2"], "a1,b2": ["1/2", 0, 0, "1/2"],
            "a2,b1": ["1/2", 0, 0, "1/2"], "a2,b2": [0, "1/2", "1/2", 0]}
    assert possibilistic_collapse(new_model(bell_scenario(), rows)) == builtin("pr")


def test_from_global():
    """Test models built as marginals of a global distribution"""
    scenario = bell_scenario()
    globals_ = enumerate_assignments(scenario, scenario.variables)
    model = from_global(scenario, uniform(globals_))
    for context in scenario.contexts:
        assert [model.table(context).weight(s) for s in enumerate_assignments(scenario, context)] == QUARTER

    g = globals_[5]
    deterministic = from_global(scenario, point_mass(g))
    assert deterministic.table("a1,b2").weights == {
        scenario.assignment({"a1": g["a1"], "b2": g["b2"]}): 1
    }

    extremes = RDistribution(
        SemiringTag.NONNEG_RATIONAL, scenario.variables, {globals_[0]: Fraction(1, 2), globals_[-1]: Fraction(1, 2)}
    )
    model = from_global(scenario, extremes)
    assert model.table("a1,b1") == builtin("bell").table("a1,b1")
    assert model.table("a2,b2") != builtin("bell").table("a2,b2")
    assert [model.weight("a2,b2", k) for k in ("0,0", "1,0", "0,1", "1,1")] == [
        Fraction(1, 2), 0, 0, Fraction(1, 2)
    ]

    with pytest.raises(ModelError):
        from_global(scenario, point_mass(enumerate_assignments(scenario, ["a1"])[0]))


def test_validate_reports_every_problem():
    """Test structured validation"""
    assert validate(builtin("bell")) == []
    bad = new_model(bell_scenario(), {"a1,b1": ["1/2", "1/8", 0, "1/2"], "a1,b2": QUARTER, "a2,b1": QUARTER})
    violations = validate(bad)
    kinds = {(v.kind, v.context) for v in violations}
    assert ("normalization", ("a1", "b1")) in kinds
    assert ("coverage", ("a2", "b2")) in kinds
    assert "9/8" in next(v.message for v in violations if v.kind == "normalization")


def test_validate_empty_boolean_support():
    """Test the non-emptiness condition of boolean tables"""
    rows = {"a1,b1": [0, 0, 0, 0], "a1,b2": [1, 1, 1, 1], "a2,b1": [1, 1, 1, 1], "a2,b2": [1, 1, 1, 1]}
    violations = validate(new_model(bell_scenario(), rows, SemiringTag.BOOLEAN))
    assert [(v.kind, v.context) for v in violations] == [("support", ("a1", "b1"))]


def test_new_model_rejects_bad_rows():
    """Test row shape and outcome checks"""
    with pytest.raises(ModelError):
        new_model(bell_scenario(), {"a1,b1": ["1/2", "1/2"]})
    with pytest.raises(ModelError):
        new_model(bell_scenario(), {"a1,b1": {"0,2": 1}})
    with pytest.raises(ModelError):
        new_model(bell_scenario(), {"a1,c1": QUARTER})


def test_model_json():
    """Test the model JSON object"""
    model = builtin("bell")
    data = model_to_json(model)
    assert data["semiring"] == "rational"
    assert data["tables"]["a1,b1"] == {"0,0": "1/2", "1,1": "1/2"}
    assert list(data["tables"]["a2,b2"]) == ["0,0", "1,0", "0,1", "1,1"]
    assert model_from_json(data) == model
    with pytest.raises(ModelError):
        model_from_json({**data, "semiring": "complex"})
    with pytest.raises(ModelError):
        model_from_json({"scenario": data["scenario"], "semiring": "rational"})


def test_mix_models_and_rename():
    """Test mixtures and variable renaming"""
    bell = builtin("bell")
    scenario = bell.scenario
    noise = from_global(scenario, uniform(enumerate_assignments(scenario, scenario.variables)))
    mixed = mix_models([bell, noise], ["1/2", "1/2"])
    assert mixed.weight("a1,b1", "0,0") == Fraction(3, 8)
    assert check_compatibility(mixed).compatible

    renamed = rename_variables(bell, {"a1": "x", "b1": "y"})
    assert renamed.scenario.variables == ("x", "a2", "y", "b2")
    assert renamed.weight("x,y", "0,0") == Fraction(1, 2)
    with pytest.raises(ModelError):
        rename_variables(bell, {"a1": "b1"})


def test_to_frame():
    """Test the tabular rendering of a model"""
    frame = to_frame(builtin("bell"))
    assert list(frame.columns) == ["0,0", "1,0", "0,1", "1,1"]
    assert list(frame.index) == ["a1,b1", "a1,b2", "a2,b1", "a2,b2"]
    assert frame.loc["a2,b2", "1,0"] == "3/8"
    assert frame.loc["a1,b1", "1,0"] == "0"

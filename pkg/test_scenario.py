"""
Tests for measurement scenarios and assignments
"""

import logging

import pytest

from scenario import (
    LocalAssignment,
    ScenarioError,
    context_overlap,
    enumerate_assignments,
    new_scenario,
    restrict_assignment,
    scenario_from_json,
    scenario_to_json,
)

BINARY = ("0", "1")


def bell():
    variables = ["a1", "a2", "b1", "b2"]
    return new_scenario(
        variables,
        [["a1", "b1"], ["a2", "b1"], ["a1", "b2"], ["a2", "b2"]],
        {v: BINARY for v in variables},
    )


def test_bell_scenario_contexts_are_sorted():
    """Test that contexts come out in canonical order whatever the input order"""
    scenario = bell()
    assert scenario.variables == ("a1", "a2", "b1", "b2")
    assert scenario.contexts == (("a1", "b1"), ("a1", "b2"), ("a2", "b1"), ("a2", "b2"))
    assert scenario.warnings == ()
    assert scenario.global_count == 16


def test_singleton_scenario():
    """Test the smallest valid scenario"""
    scenario = new_scenario(["x"], [["x"]], {"x": ["0"]})
    assert scenario.contexts == (("x",),)
    assert scenario.global_count == 1


def test_contained_context_is_removed_with_warning(caplog):
    """Test antichain normalization"""
    with caplog.at_level(logging.WARNING):
        scenario = new_scenario(["a", "b"], [["a", "b"], ["a"]], {"a": BINARY, "b": BINARY})
    assert scenario.contexts == (("a", "b"),)
    assert len(scenario.warnings) == 1
    assert "{a}" in scenario.warnings[0]
    assert any("was removed" in r.message for r in caplog.records)


def test_context_order_inside_input_is_irrelevant():
    """Test that contexts are stored with variables in scenario order"""
    scenario = new_scenario(["a", "b"], [["b", "a"]], {"a": BINARY, "b": BINARY})
    assert scenario.contexts == (("a", "b"),)


@pytest.mark.parametrize(
    "variables, contexts, outcomes",
    [
        ([], [], {}),
        (["a"], [["a", "z"]], {"a": BINARY}),
        (["a"], [["a"]], {"a": []}),
        (["a", "b"], [["a"]], {"a": BINARY, "b": BINARY}),
        (["a", "a"], [["a"]], {"a": BINARY}),
        (["a"], [[]], {"a": BINARY}),
        (["a"], [1], {"a": BINARY}),
        (["a"], ["a"], {"a": BINARY}),
    ],
)
def test_new_scenario_rejects_malformed_input(variables, contexts, outcomes):
    """Test validation of raw scenario input"""
    with pytest.raises(ScenarioError):
        new_scenario(variables, contexts, outcomes)


def test_enumeration_order_matches_table_columns():
    """Test that the first variable varies fastest"""
    values = [s.values for s in enumerate_assignments(bell(), ["b1", "a1"])]
    assert values == [("0", "0"), ("1", "0"), ("0", "1"), ("1", "1")]


def test_empty_context_has_one_assignment():
    """Test that O^{} is a singleton"""
    assert enumerate_assignments(bell(), []) == [LocalAssignment((), ())]


def test_enumeration_counts_products():
    """Test enumeration size on mixed outcome sets"""
    scenario = new_scenario(
        ["x", "y", "z"], [["x", "y", "z"]], {"x": BINARY, "y": BINARY, "z": ("r", "g", "b")}
    )
    found = enumerate_assignments(scenario, ["x", "y", "z"])
    assert len(found) == 12
    assert len(set(found)) == 12


def test_enumerate_unknown_variable():
    """Test enumeration over a variable outside the scenario"""
    with pytest.raises(ScenarioError):
        enumerate_assignments(bell(), ["a1", "c9"])


def test_restriction():
    """Test restriction as function restriction"""
    s = LocalAssignment(("a1", "b1"), ("0", "1"))
    assert restrict_assignment(s, ["a1"]) == LocalAssignment(("a1",), ("0",))
    assert restrict_assignment(s, ["b1", "a1"]) == s
    with pytest.raises(ScenarioError):
        restrict_assignment(s, ["a2"])


def test_assignment_lookup_and_rendering():
    """Test assignment accessors"""
    s = bell().assignment({"b1": "1", "a1": "0"})
    assert s.context == ("a1", "b1")
    assert s["b1"] == "1"
    assert s.key == "0,1"
    assert str(s) == "{a1=0,b1=1}"
    with pytest.raises(ScenarioError):
        bell().assignment({"a1": "7"})


def test_context_overlap():
    """Test context intersection"""
    assert context_overlap(("a1", "b1"), ("a1", "b2")) == ("a1",)
    assert context_overlap(("a1", "b1"), ("a1", "b1")) == ("a1", "b1")
    assert context_overlap(("a1", "b1"), ("a2", "b2")) == ()


def test_scenario_json_round_trip():
    """Test the scenario JSON object"""
    scenario = bell()
    data = scenario_to_json(scenario)
    assert data["contexts"][0] == ["a1", "b1"]
    assert scenario_from_json(data) == scenario
    with pytest.raises(ScenarioError):
        scenario_from_json({"variables": ["a"]})


@pytest.mark.parametrize(
    "field, value",
    [
        ("variables", "a1"),
        ("variables", [1, 2]),
        ("contexts", [1, 2]),
        ("contexts", [["a1", 2]]),
        ("outcomes", {"a1": "01", "a2": ["0", "1"], "b1": ["0", "1"], "b2": ["0", "1"]}),
        ("outcomes", {"a1": [0, 1], "a2": ["0", "1"], "b1": ["0", "1"], "b2": ["0", "1"]}),
    ],
)
def test_scenario_json_rejects_wrong_shapes(field, value):
    """Test that JSON of the wrong shape raises ScenarioError"""
    data = scenario_to_json(bell())
    data[field] = value
    with pytest.raises(ScenarioError):
        scenario_from_json(data)

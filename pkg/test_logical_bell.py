"""
Tests for propositions and logical Bell inequalities
"""

from fractions import Fraction

import pytest

from corpus import BELL_PROPOSITIONS, bell_scenario, builtin
from distribution import uniform
from logical_bell import (
    Atom,
    Binary,
    Constant,
    LogicalBellError,
    Not,
    PropositionError,
    canonical_support_propositions,
    eval_probability,
    format_formula,
    jointly_satisfiable,
    logical_bell,
    parse_formula,
    parse_proposition,
)
from model import from_global, new_model
from scenario import enumerate_assignments, new_scenario

RATIONAL_PR_ROWS = {
    "a1,b1": ["1/2", 0, 0, "1/2"],
    "a1,b2": ["1/2", 0, 0, "1/2"],
    "a2,b1": ["1/2", 0, 0, "1/2"],
    "a2,b2": [0, "1/2", "1/2", 0],
}


def bell_propositions():
    scenario = bell_scenario()
    return [parse_proposition(scenario, text) for text in BELL_PROPOSITIONS]


def test_parse_precedence():
    """Test connective precedence and associativity"""
    assert parse_formula("a1=0 | b1=0 & a2=1") == Binary(
        "|", Atom("a1", "0"), Binary("&", Atom("b1", "0"), Atom("a2", "1"))
    )
    assert parse_formula("x=0 -> y=0 -> z=0") == Binary(
        "->", Atom("x", "0"), Binary("->", Atom("y", "0"), Atom("z", "0"))
    )
    assert parse_formula("!a1=0 & true") == Binary("&", Not(Atom("a1", "0")), Constant(True))
    assert parse_formula("a2 = 0 (+) b2 = 0") == Binary("(+)", Atom("a2", "0"), Atom("b2", "0"))


def test_format_formula_reparses():
    """Test that rendering keeps the tree"""
    for text in ("!(a1=0 & b1=0)", "a1=0 <-> (b1=1 | false)", "!!a1=1"):
        formula = parse_formula(text)
        assert parse_formula(format_formula(formula)) == formula
    assert format_formula(parse_formula("!(a1=0 & b1=0)")) == "!(a1=0 & b1=0)"


@pytest.mark.parametrize("text", ["a1=0 &", "(a1=0", "a1=0 b1=0", "a1", "=0", "a1=0 ^ b1=0"])
def test_parse_errors(text):
    """Test malformed formulas"""
    with pytest.raises(PropositionError):
        parse_formula(text)


def test_proposition_context_checks():
    """Test atoms against the context and the outcome sets"""
    scenario = bell_scenario()
    assert parse_proposition(scenario, "b2=1 -> a1=0").context == ("a1", "b2")
    with pytest.raises(PropositionError):
        parse_proposition(scenario, "a2=0", "a1,b1")
    with pytest.raises(PropositionError):
        parse_proposition(scenario, "a1=5")
    with pytest.raises(PropositionError):
        parse_proposition(scenario, "a1=0 & a2=0")
    with pytest.raises(PropositionError):
        parse_proposition(scenario, "true")


def test_bell_proposition_probabilities():
    """Test p1 = 1 and p2 = p3 = p4 = 6/8 on the Bell table"""
    model = builtin("bell")
    probabilities = [eval_probability(model, p) for p in bell_propositions()]
    assert probabilities == [1, Fraction(6, 8), Fraction(6, 8), Fraction(6, 8)]


def test_tautology_and_contradiction():
    """Test constant probabilities"""
    model = builtin("bell")
    scenario = model.scenario
    assert eval_probability(model, parse_proposition(scenario, "a1=0 | !a1=0")) == 1
    assert eval_probability(model, parse_proposition(scenario, "false", "a2,b2")) == 0


def test_eval_probability_errors():
    """Test evaluation outside maximal contexts and on boolean models"""
    model = builtin("bell")
    with pytest.raises(LogicalBellError):
        eval_probability(model, parse_proposition(model.scenario, "a1=0", "a1"))
    with pytest.raises(LogicalBellError):
        eval_probability(builtin("pr"), bell_propositions()[0])


def test_joint_satisfiability():
    """Test satisfiability of the Bell family and its subfamilies"""
    scenario = bell_scenario()
    propositions = bell_propositions()
    assert jointly_satisfiable(propositions, scenario) is None
    witness = jointly_satisfiable(propositions[:3], scenario)
    assert witness is not None
    assert all(p.holds(witness.as_dict()) for p in propositions[:3])
    assert jointly_satisfiable([], scenario) is not None


def test_bell_violation_is_one_quarter():
    """Test the logical Bell inequality on the Bell table"""
    result = logical_bell(builtin("bell"), bell_propositions())
    assert result.sum == Fraction(13, 4)
    assert result.bound == 3
    assert result.violation == Fraction(1, 4)
    assert not result.satisfiable
    data = result.to_json()
    assert data["probabilities"] == ["1", "3/4", "3/4", "3/4"]
    assert data["violation"] == "1/4"
    assert data["satisfying_assignment"] is None


def test_noncontextual_model_satisfies_bound():
    """Test that a model with a global section does not violate the bound"""
    scenario = bell_scenario()
    model = from_global(scenario, uniform(enumerate_assignments(scenario, scenario.variables)))
    result = logical_bell(model, bell_propositions())
    assert result.sum == 2
    assert result.violation == 0


def test_single_contradiction():
    """Test N = 1 with an unsatisfiable proposition"""
    model = builtin("bell")
    result = logical_bell(model, [parse_proposition(model.scenario, "false", "a1,b1")])
    assert (result.bound, result.sum, result.violation, result.satisfiable) == (0, 0, 0, False)


def test_canonical_support_propositions():
    """Test the support disjunctions on PR, Hardy and Bell"""
    pr = new_model(bell_scenario(), RATIONAL_PR_ROWS)
    propositions = canonical_support_propositions(pr)
    assert [p.context for p in propositions] == list(pr.contexts)
    assert propositions[3].text == "(a2=1 & b2=0) | (a2=0 & b2=1)"
    result = logical_bell(pr, propositions)
    assert result.sum == 4
    assert result.violation == 1

    hardy = canonical_support_propositions(builtin("hardy"))
    assert jointly_satisfiable(hardy, bell_scenario()) is not None

    bell = logical_bell(builtin("bell"), canonical_support_propositions(builtin("bell")))
    assert bell.satisfiable
    assert bell.violation == 0


def test_signed_outcome_labels():
    """Test atoms whose outcomes carry a sign"""
    scenario = new_scenario(["s", "t"], [["s", "t"]], {"s": ["-1", "+1"], "t": ["-1", "+1"]})
    proposition = parse_proposition(scenario, "s=-1 <-> t=+1")
    assert proposition.context == ("s", "t")
    assert proposition.holds({"s": "-1", "t": "+1"})
    assert not proposition.holds({"s": "+1", "t": "+1"})
    assert parse_formula("s=-1->t=+1") == Binary("->", Atom("s", "-1"), Atom("t", "+1"))
    assert format_formula(parse_formula("!s=-1")) == "!s=-1"

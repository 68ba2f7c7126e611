"""
ctx - contextuality analysis from the command line

Reads empirical models as JSON, classifies them, evaluates logical Bell
inequalities, draws bundle diagrams and generates corpus or quantum models.
Artifacts go to stdout (or -o FILE), diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from analysis.core import AnalysisError, classify, signed_global_section
from bundle.core import BundleError, build_bundle, emit_dot
from corpus.core import BUILTIN_NAMES, CorpusError, builtin
from distribution.core import DistributionError, SemiringTag, format_fraction
from logical_bell.core import (
    LogicalBellError,
    Proposition,
    canonical_support_propositions,
    logical_bell,
    parse_proposition,
)
from logical_bell.formula import PropositionError
from model.core import (
    EmpiricalModel,
    IncompatibleModelError,
    ModelError,
    model_from_json,
    model_to_json,
    possibilistic_collapse,
    to_frame,
    validate,
)
from quantum.core import (
    DEFAULT_MAX_DENOMINATOR,
    DEFAULT_SNAP_TOL,
    QuantumError,
    generate_model,
    load_state,
    settings_from_json,
)
from scenario.core import ScenarioError, scenario_from_json

# Set up logging
logger = logging.getLogger("ctx")

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INVALID = 3
EXIT_INCOMPATIBLE = 4
LEVEL_EXIT = {"probabilistic": 10, "possibilistic": 11, "strong": 12}
LEVELS = ("all", "probabilistic", "possibilistic", "strong")


class InputError(ValueError):
    """Raised when an input file cannot be read or parsed."""

    def __init__(self, message: str, violations: Sequence[str] = ()):
        self.violations = list(violations)
        super().__init__(message if not violations else message + "\n  " + "\n  ".join(violations))


@dataclass
class RunConfig:
    command: str
    input_path: str | None = None
    output_path: str | None = None
    level: str = "all"
    signed: bool = False
    props_path: str | None = None
    canonical: bool = False
    highlights: list[str] = field(default_factory=list)
    name: str | None = None
    state: str | None = None
    angles_path: str | None = None
    scenario_path: str | None = None
    max_denominator: int = DEFAULT_MAX_DENOMINATOR
    snap_tol: float = DEFAULT_SNAP_TOL
    verbose: bool = False


def _read_json(path: str, what: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read {what} {path}: {e.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}:{e.lineno}:{e.colno}: invalid JSON: {e.msg}") from None


def load_model(path: str) -> EmpiricalModel:
    """
    Read and validate a model file

    Args:
        path (str): Path to a model JSON file

    Returns:
        EmpiricalModel: The validated model
    """
    data = _read_json(path, "model file")
    try:
        model = model_from_json(data)
    except (ModelError, ScenarioError, DistributionError) as e:
        raise InputError(f"{path}: {e}") from None
    violations = validate(model)
    if violations:
        raise InputError(f"{path}: model has {len(violations)} violation(s):", [v.describe() for v in violations])
    logger.info(f"Loaded model from {path} with {len(model.contexts)} contexts")
    return model


def load_propositions(path: str, model: EmpiricalModel) -> list[Proposition]:
    """
    Read a propositions file: a JSON list of formula strings or of
    {"context": "a1,b1", "formula": "..."} objects.
    """
    data = _read_json(path, "propositions file")
    if not isinstance(data, list) or not data:
        raise InputError(f"{path}: expected a nonempty JSON list of propositions")
    propositions = []
    for entry in data:
        if isinstance(entry, str):
            propositions.append(parse_proposition(model.scenario, entry))
        elif isinstance(entry, dict) and "formula" in entry:
            propositions.append(parse_proposition(model.scenario, entry["formula"], entry.get("context")))
        else:
            raise InputError(f"{path}: proposition entries must be strings or objects with a 'formula'")
    return propositions


def _dump_json(data) -> str:
    return json.dumps(data, indent=2) + "\n"


def _emit(config: RunConfig, text: str) -> None:
    if config.output_path:
        Path(config.output_path).write_text(text, encoding="utf-8")
        logger.info(f"Wrote {config.output_path}")
    else:
        sys.stdout.write(text)


def _analyze(config: RunConfig) -> int:
    model = load_model(config.input_path)
    report = classify(model)
    result = report.to_json(model)
    if config.signed and model.semiring is SemiringTag.NONNEG_RATIONAL:
        signed = signed_global_section(model)
        result["signed_global_section"] = (
            None
            if signed is None
            else {g.key: format_fraction(w) for g, w in sorted(signed.items(), key=lambda i: model.scenario.order_key(i[0]))}
        )
    _emit(config, _dump_json(result))
    verdicts = {
        "probabilistic": report.probabilistically_contextual,
        "possibilistic": report.possibilistically_contextual,
        "strong": report.strongly_contextual,
    }
    if config.level != "all":
        return LEVEL_EXIT[config.level] if verdicts[config.level] else EXIT_OK
    return LEVEL_EXIT.get(report.level, EXIT_OK)


def _collapse(config: RunConfig) -> int:
    model = load_model(config.input_path)
    if model.semiring is SemiringTag.NONNEG_RATIONAL:
        model = possibilistic_collapse(model)
    _emit(config, _dump_json(model_to_json(model)))
    return EXIT_OK


def _bell(config: RunConfig) -> int:
    model = load_model(config.input_path)
    if config.canonical:
        propositions = canonical_support_propositions(model)
    else:
        propositions = load_propositions(config.props_path, model)
    _emit(config, _dump_json(logical_bell(model, propositions).to_json()))
    return EXIT_OK


def _bundle(config: RunConfig) -> int:
    model = load_model(config.input_path)
    _emit(config, emit_dot(build_bundle(model), config.highlights))
    return EXIT_OK


def _gen(config: RunConfig) -> int:
    _emit(config, _dump_json(model_to_json(builtin(config.name))))
    return EXIT_OK


def _quantum(config: RunConfig) -> int:
    state = load_state(config.state)
    settings = settings_from_json(_read_json(config.angles_path, "angles file"))
    scenario = scenario_from_json(_read_json(config.scenario_path, "scenario file"))
    model = generate_model(state, settings, scenario, config.max_denominator, config.snap_tol)
    _emit(config, _dump_json(model_to_json(model)))
    return EXIT_OK


def _table(config: RunConfig) -> int:
    model = load_model(config.input_path)
    _emit(config, to_frame(model).to_string() + "\n")
    return EXIT_OK


COMMANDS = {
    "analyze": _analyze,
    "collapse": _collapse,
    "bell": _bell,
    "bundle": _bundle,
    "gen": _gen,
    "quantum": _quantum,
    "table": _table,
}


def run(config: RunConfig) -> int:
    """
    Execute one command

    Args:
        config (RunConfig): The parsed command line

    Returns:
        int: Process exit status
    """
    try:
        return COMMANDS[config.command](config)
    except IncompatibleModelError as e:
        print(f"ctx: {e}", file=sys.stderr)
        return EXIT_INCOMPATIBLE
    except CorpusError as e:
        print(f"ctx: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (
        InputError,
        ModelError,
        ScenarioError,
        DistributionError,
        AnalysisError,
        PropositionError,
        LogicalBellError,
        QuantumError,
        BundleError,
    ) as e:
        print(f"ctx: {e}", file=sys.stderr)
        return EXIT_INVALID


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", dest="output_path", help="write the artifact to FILE instead of stdout")
    common.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")

    parser = argparse.ArgumentParser(prog="ctx", description="Contextuality analysis of empirical models")
    commands = parser.add_subparsers(dest="command", required=True)

    analyze = commands.add_parser("analyze", parents=[common], help="classify a model")
    analyze.add_argument("input_path", metavar="FILE")
    analyze.add_argument("--level", choices=LEVELS, default="all", help="level that decides the exit status")
    analyze.add_argument("--signed", action="store_true", help="include a signed global section")

    collapse = commands.add_parser("collapse", parents=[common], help="emit the possibilistic collapse")
    collapse.add_argument("input_path", metavar="FILE")

    bell = commands.add_parser("bell", parents=[common], help="evaluate a logical Bell inequality")
    bell.add_argument("input_path", metavar="FILE")
    source = bell.add_mutually_exclusive_group(required=True)
    source.add_argument("--props", dest="props_path", metavar="FILE", help="JSON list of propositions")
    source.add_argument("--canonical", action="store_true", help="use the support disjunction of every row")

    bundle = commands.add_parser("bundle", parents=[common], help="emit a bundle diagram as DOT")
    bundle.add_argument("input_path", metavar="FILE")
    bundle.add_argument(
        "--highlight", dest="highlights", action="append", default=[], metavar="EDGE",
        help='edge such as "a1=0,b1=0"; repeatable',
    )

    gen = commands.add_parser("gen", parents=[common], help="emit a builtin model")
    gen.add_argument("name", metavar="NAME", help=f"one of {', '.join(BUILTIN_NAMES)}")

    quantum = commands.add_parser("quantum", parents=[common], help="generate a model by the Born rule")
    quantum.add_argument("--state", required=True, help='"bell", "ghz:N" or an amplitude file')
    quantum.add_argument("--angles", dest="angles_path", required=True, metavar="FILE")
    quantum.add_argument("--scenario", dest="scenario_path", required=True, metavar="FILE")
    quantum.add_argument("--max-den", dest="max_denominator", type=int, default=DEFAULT_MAX_DENOMINATOR)
    quantum.add_argument("--tol", dest="snap_tol", type=float, default=DEFAULT_SNAP_TOL)

    table = commands.add_parser("table", parents=[common], help="print a model as a table")
    table.add_argument("input_path", metavar="FILE")
    return parser


def parse_args(argv: Sequence[str] | None = None) -> RunConfig:
    namespace = build_parser().parse_args(argv)
    return RunConfig(**vars(namespace))


def main(argv: Sequence[str] | None = None) -> int:
    try:
        config = parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK
    logging.basicConfig(
        level=logging.INFO if config.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    return run(config)


if __name__ == "__main__":
    sys.exit(main())

"""Property-based audit of conformance measures against stated propositions."""
from .catalog import PROPOSITIONS, ExpectedCell, Proposition, get_proposition, load_expected, parse_props
from .checks import Instance, LocalVerdict, check, random_instance
from .fixtures import FIXTURES, Fixture, Pin, fixture_names, get_fixture, instances_for, verify
from .suite import (CellDiff, PropositionVerdict, SuiteResult, compare, grid_csv, grid_jsonl,
                    grid_markdown, implication_conflicts, replay_witness, run_suite, write_witnesses)

__all__ = [
    "PROPOSITIONS", "ExpectedCell", "Proposition", "get_proposition", "load_expected", "parse_props",
    "Instance", "LocalVerdict", "check", "random_instance",
    "FIXTURES", "Fixture", "Pin", "fixture_names", "get_fixture", "instances_for", "verify",
    "CellDiff", "PropositionVerdict", "SuiteResult", "compare", "grid_csv", "grid_jsonl",
    "grid_markdown", "implication_conflicts", "replay_witness", "run_suite", "write_witnesses",
]

"""Sequent-calculus proof search and judgment aggregation over substructural logics."""

from ncja.formula import Formula, ParseError, complement, parse
from ncja.logics import LOGICS, LogicSpec, get_logic
from ncja.sequent import ProofTree, Sequent, parse_sequent
from ncja.prover import ProofResult, SearchBudget, Status, inconsistent, prove
from ncja.check import check
from ncja.judgment import (Agenda, JudgmentStructure, Profile, RationalityClass, UndecidedError,
                           is_complement_free, is_complete, is_consistent, is_deductively_closed,
                           is_robustly_consistent, formulas_consistent)
from ncja.aggregation import AggregationRule, aggregate, aggregate_list, check_axiom, parse_rule
from ncja.analysis import check_property, check_safety, enumerate_mis

__version__ = "0.1.0"

__all__ = [
    "Formula", "ParseError", "complement", "parse",
    "LOGICS", "LogicSpec", "get_logic",
    "ProofTree", "Sequent", "parse_sequent",
    "ProofResult", "SearchBudget", "Status", "inconsistent", "prove", "check",
    "Agenda", "JudgmentStructure", "Profile", "RationalityClass", "UndecidedError",
    "is_complement_free", "is_complete", "is_consistent", "is_deductively_closed",
    "is_robustly_consistent", "formulas_consistent",
    "AggregationRule", "aggregate", "aggregate_list", "check_axiom", "parse_rule",
    "check_property", "check_safety", "enumerate_mis",
]

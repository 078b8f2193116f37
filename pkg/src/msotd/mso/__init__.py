"""Executable second-order formula layer: AST and memoizing evaluator,
an independent reference evaluator, an S-expression front end, the graph
predicate library, structure builders, and differential cross-checks."""

from .formula import (
    BudgetError, Evaluator, MsoError, Structure, check_budget, evaluate,
)
from .naive import naive_eval
from .sexpr import ParseError, parse_formula
from .structures import halin_structure, kcycle_structure, spanning_tree_structure

__all__ = [
    "BudgetError",
    "Evaluator",
    "MsoError",
    "ParseError",
    "Structure",
    "check_budget",
    "evaluate",
    "halin_structure",
    "kcycle_structure",
    "naive_eval",
    "parse_formula",
    "spanning_tree_structure",
]

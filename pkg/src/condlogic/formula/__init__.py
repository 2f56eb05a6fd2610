"""Formula and schema representation, parsing, printing and matching."""

from .operations import (
    PathError, SubstitutionError, instantiate, match_all, match_schema, modal_atom_list,
    modal_atoms, occurrences, replace_all_at, replace_at, sub_at,
)
from .parser import FormulaSyntaxError, parse, parse_schema
from .printer import render
from .syntax import (
    LEFT, ONLY, RIGHT, And, Binary, Cond, Formula, FormulaPath, Iff, Imp, MetaVar, Not,
    Or, Schema, Substitution, Var, conditional_depth, conjoin, is_ground, metavariables,
    variables, walk,
)

__all__ = [
    "Formula", "Var", "MetaVar", "Not", "And", "Or", "Imp", "Iff", "Cond", "Binary",
    "Schema", "Substitution", "FormulaPath", "LEFT", "RIGHT", "ONLY",
    "parse", "parse_schema", "render", "FormulaSyntaxError",
    "match_schema", "match_all", "instantiate", "replace_at", "replace_all_at", "sub_at",
    "occurrences", "modal_atoms", "modal_atom_list", "SubstitutionError", "PathError",
    "variables", "metavariables", "is_ground", "conditional_depth", "conjoin", "walk",
]

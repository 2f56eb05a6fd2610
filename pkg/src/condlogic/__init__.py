"""
Conditional Logic Workbench

Tools for Lewis-style conditional logics over finite selection-function
frames.

Features:
- Formula and axiom schema parsing, printing and matching
- Frame conditions, frame validity and condition/schema correspondence
- A Hilbert-style proof kernel with derived rules and theorem citation
- Countermodel search over small frames
- A bundled corpus of axiom systems and derivations with a staged verifier
"""

__version__ = "1.0.0"
__author__ = "Conditional Logic Workbench Team"
__email__ = "condlogic@example.com"

from .core.config import Config
from .corpus import load_catalog, verify_corpus
from .formula import Formula, Schema, parse, render
from .modelsearch import SearchSpec, find_countermodel
from .proofkernel import RuleRegistry, check_proof
from .semantics import SelectionFrame, check_condition, schema_valid_on_frame


# CLI entry point
def main():
    """CLI entry point for the conditional logic workbench"""
    from .cli import main as cli_main
    return cli_main()


__all__ = [
    "Config",
    "Formula",
    "Schema",
    "parse",
    "render",
    "SelectionFrame",
    "check_condition",
    "schema_valid_on_frame",
    "RuleRegistry",
    "check_proof",
    "SearchSpec",
    "find_countermodel",
    "load_catalog",
    "verify_corpus",
    "main",
]

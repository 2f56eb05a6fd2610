"""Hilbert-style proof checking: PC oracle, rule applications, registry and checker."""

from .checker import (
    CheckReport, LineVerdict, check_and_register, check_proof, register_derived_rule,
    register_theorem,
)
from .pc import AtomLimitExceeded, Entailment, is_tautology, pc_entails
from .proof import (
    AxiomSystem, Justification, Proof, ProofFormatError, ProofLine, load_proof,
    proof_from_dict, system_chain,
)
from .registry import Footprint, RegistryError, RuleRegistry, RuleSpec, TheoremEntry
from .replacement import derive_replacement
from .rules import check_rule_application

__all__ = [
    "pc_entails", "is_tautology", "Entailment", "AtomLimitExceeded",
    "AxiomSystem", "Justification", "ProofLine", "Proof", "ProofFormatError",
    "load_proof", "proof_from_dict", "system_chain",
    "RuleRegistry", "RuleSpec", "TheoremEntry", "Footprint", "RegistryError",
    "check_rule_application", "derive_replacement",
    "check_proof", "check_and_register", "register_derived_rule", "register_theorem",
    "CheckReport", "LineVerdict",
]

"""
Classical propositional consequence over modal atoms

Variables, metavariables and conditionals are opaque atoms. The truth table
is evaluated bit-parallel: each atom's column is one big integer with bit r
set when the atom is true in row r.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence

from ..core.config import config
from ..formula import And, Formula, Iff, Imp, Not, Or, modal_atom_list, render

logger = logging.getLogger(__name__)


class AtomLimitExceeded(ValueError):
    """Raised when a PC step mentions more modal atoms than the configured limit"""


@dataclass
class Entailment:
    """
    Result of a PC consequence check.

    `countervaluation` maps each modal atom to its truth value in the first
    falsifying row (atoms in first-occurrence order, first atom most
    significant); it is None when the entailment holds.
    """
    holds: bool
    atoms: List[Formula] = field(default_factory=list)
    countervaluation: Optional[Dict[Formula, bool]] = None

    def __bool__(self) -> bool:
        return self.holds

    def describe(self) -> str:
        if self.holds:
            return "entailment holds"
        parts = ", ".join(
            f"{render(atom)}={'T' if value else 'F'}"
            for atom, value in (self.countervaluation or {}).items()
        )
        return f"countervaluation: {parts}"


def _column(i: int, n: int) -> int:
    block = 1 << (n - 1 - i)
    reps = 1 << i
    unit = ((1 << block) - 1) << block
    return unit * ((1 << (2 * block * reps)) - 1) // ((1 << (2 * block)) - 1)


def _evaluate(f: Formula, columns: Mapping[Formula, int], full: int) -> int:
    if f in columns:
        return columns[f]
    if isinstance(f, Not):
        return full & ~_evaluate(f.operand, columns, full)
    left = _evaluate(f.left, columns, full)
    right = _evaluate(f.right, columns, full)
    if isinstance(f, And):
        return left & right
    if isinstance(f, Or):
        return left | right
    if isinstance(f, Imp):
        return (full & ~left) | right
    if isinstance(f, Iff):
        return full & ~(left ^ right)
    raise TypeError(f"Unexpected node above the modal atoms: {f!r}")


def pc_entails(premises: Sequence[Formula], conclusion: Formula,
               atom_limit: Optional[int] = None) -> Entailment:
    """
    Decide whether the premises tautologically entail the conclusion.

    Raises:
        AtomLimitExceeded: if the inputs have more modal atoms than the limit
            (config.pc_atom_limit by default).
    """
    limit = config.pc_atom_limit if atom_limit is None else atom_limit
    atoms = modal_atom_list(list(premises) + [conclusion])
    n = len(atoms)
    if n > limit:
        raise AtomLimitExceeded(f"PC step has {n} modal atoms (limit {limit})")
    full = (1 << (1 << n)) - 1
    columns = {atom: _column(i, n) for i, atom in enumerate(atoms)}

    rows = full
    for premise in premises:
        rows &= _evaluate(premise, columns, full)
    bad = rows & ~_evaluate(conclusion, columns, full)
    if not bad:
        return Entailment(holds=True, atoms=atoms)

    row = (bad & -bad).bit_length() - 1
    valuation = {atom: bool(row >> (n - 1 - i) & 1) for i, atom in enumerate(atoms)}
    logger.debug(f"[FAIL] PC step to {render(conclusion)} over {n} atoms")
    return Entailment(holds=False, atoms=atoms, countervaluation=valuation)


def is_tautology(f: Formula) -> bool:
    return pc_entails([], f).holds

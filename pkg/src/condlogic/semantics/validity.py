"""
Validity of formulas and schemas on frames, and rule preservation
"""

import itertools
import logging
from typing import Dict, Iterator, Protocol, Sequence, Tuple, Union

from ..formula import Formula, MetaVar, Schema, Var, metavariables, render, variables
from .evaluation import compile_formula
from .frames import SelectionFrame, Witness

logger = logging.getLogger(__name__)

SchemaLike = Union[Schema, Formula]


class SchematicRule(Protocol):
    """Anything with premise schemas and a conclusion schema"""
    name: str
    premises: Tuple[Formula, ...]
    conclusion: Formula


def _body(s: SchemaLike) -> Formula:
    return s.body if isinstance(s, Schema) else s


def _leaves_of(f: Formula) -> Tuple[Formula, ...]:
    return tuple(MetaVar(m) for m in sorted(metavariables(f))) + tuple(Var(v) for v in variables(f))


def _assignments(frame: SelectionFrame, count: int) -> Iterator[Tuple[int, ...]]:
    """All tuples of subset masks in binary-counting order, first leaf most significant"""
    return itertools.product(range(frame.full + 1), repeat=count)


def _first_world(frame: SelectionFrame, mask: int) -> str:
    missing = frame.full & ~mask
    return frame.worlds[(missing & -missing).bit_length() - 1]


def _witness(frame: SelectionFrame, leaves: Sequence[Formula], values: Sequence[int],
             truth: int, subject: str) -> Witness:
    assignment = {leaf.name: frame.members(v) for leaf, v in zip(leaves, values)}
    return Witness(world=_first_world(frame, truth), assignment=assignment, subject=subject)


def _validity(frame: SelectionFrame, f: Formula, subject: str) -> Union[bool, Witness]:
    leaves = _leaves_of(f)
    evaluate = compile_formula(f, leaves)
    full = frame.full
    for values in _assignments(frame, len(leaves)):
        truth = evaluate(frame, values)
        if truth != full:
            return _witness(frame, leaves, values, truth, subject)
    return True


def formula_valid_on_frame(frame: SelectionFrame, f: Formula) -> Union[bool, Witness]:
    """
    True iff f holds at every world under every valuation of its variables.

    Otherwise the first falsifying valuation (variables in first-occurrence
    order, subsets in binary-counting order) and the first world it fails at.
    """
    if metavariables(f):
        raise ValueError(f"Formula {render(f)} contains metavariables; use schema_valid_on_frame")
    return _validity(frame, f, render(f))


def schema_valid_on_frame(frame: SelectionFrame, s: SchemaLike) -> Union[bool, Witness]:
    """
    True iff s holds everywhere for every assignment of arbitrary subsets to
    its metavariables; otherwise the first Witness in binary-counting order.
    """
    body = _body(s)
    subject = s.name if isinstance(s, Schema) else render(body)
    return _validity(frame, body, subject)


def witness_holds(frame: SelectionFrame, f: SchemaLike, witness: Witness) -> bool:
    """Re-evaluate f under the witness assignment; True iff it fails at the witness world"""
    body = _body(f)
    leaves = _leaves_of(body)
    try:
        values = [frame.mask(witness.assignment[leaf.name]) for leaf in leaves]
    except KeyError:
        return False
    truth = compile_formula(body, leaves)(frame, values)
    return not truth >> frame.index(witness.world) & 1


def rule_preserved_on_frame(frame: SelectionFrame, rule: SchematicRule) -> Union[bool, Witness]:
    """
    Subset-level preservation: whenever every premise is true at all worlds
    under an assignment, so is the conclusion.
    """
    premises = tuple(_body(p) for p in rule.premises)
    conclusion = _body(rule.conclusion)
    names: Dict[str, None] = {}
    for f in premises + (conclusion,):
        for m in metavariables(f):
            names.setdefault(m, None)
    leaves = tuple(MetaVar(m) for m in sorted(names))
    premise_checks = [compile_formula(p, leaves) for p in premises]
    conclusion_check = compile_formula(conclusion, leaves)
    full = frame.full
    for values in _assignments(frame, len(leaves)):
        if all(check(frame, values) == full for check in premise_checks):
            truth = conclusion_check(frame, values)
            if truth != full:
                witness = _witness(frame, leaves, values, truth, rule.name)
                logger.debug(f"[FAIL] rule {rule.name} not preserved: {witness.describe()}")
                return witness
    return True

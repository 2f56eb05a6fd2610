"""
Truth-set evaluation on selection frames
"""

from typing import Callable, Dict, FrozenSet, Mapping, Sequence, Tuple

from ..formula import And, Cond, Formula, Iff, Imp, MetaVar, Not, Or, Var
from .frames import Model, SelectionFrame

# A compiled formula maps a frame and leaf masks (in leaf order) to a truth mask
Evaluator = Callable[[SelectionFrame, Sequence[int]], int]


class UnboundVariableError(ValueError):
    """Raised when a formula mentions a leaf with no value"""


def compile_formula(f: Formula, leaves: Sequence[Formula]) -> Evaluator:
    """
    Turn f into a closure over leaf masks.

    `leaves` lists the Var/MetaVar nodes in the order their masks are passed.
    """
    position: Dict[Formula, int] = {leaf: k for k, leaf in enumerate(leaves)}

    def go(node: Formula) -> Evaluator:
        if isinstance(node, (Var, MetaVar)):
            if node not in position:
                raise UnboundVariableError(f"No value for {node.name}")
            k = position[node]
            return lambda frame, values: values[k]
        if isinstance(node, Not):
            inner = go(node.operand)
            return lambda frame, values: frame.full & ~inner(frame, values)
        left, right = go(node.left), go(node.right)
        if isinstance(node, And):
            return lambda frame, values: left(frame, values) & right(frame, values)
        if isinstance(node, Or):
            return lambda frame, values: left(frame, values) | right(frame, values)
        if isinstance(node, Imp):
            return lambda frame, values: (frame.full & ~left(frame, values)) | right(frame, values)
        if isinstance(node, Iff):
            return lambda frame, values: frame.full & ~(left(frame, values) ^ right(frame, values))
        if isinstance(node, Cond):
            return lambda frame, values: frame.conditional(left(frame, values), right(frame, values))
        raise TypeError(f"Unknown formula node: {node!r}")

    return go(f)


def evaluate_mask(frame: SelectionFrame, f: Formula, leaf_values: Mapping[Formula, int]) -> int:
    """Truth set of f as a mask, given masks for its Var/MetaVar leaves"""
    leaves: Tuple[Formula, ...] = tuple(leaf_values)
    return compile_formula(f, leaves)(frame, [leaf_values[leaf] for leaf in leaves])


def truth_set(model: Model, f: Formula) -> FrozenSet[str]:
    """
    The set of worlds where f holds in model.

    Raises:
        UnboundVariableError: if f has a variable missing from the valuation,
            or contains a metavariable.
    """
    frame = model.frame
    values = {Var(name): frame.mask(members) for name, members in model.valuation.items()}
    return frame.members(evaluate_mask(frame, f, values))

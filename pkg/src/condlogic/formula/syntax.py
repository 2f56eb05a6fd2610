"""
Formula and schema syntax trees for conditional logic
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterator, Tuple

# Child selectors addressing a subformula occurrence
LEFT = "left"
RIGHT = "right"
ONLY = "only"

FormulaPath = Tuple[str, ...]


class Formula:
    """Base class of all formula nodes. Nodes are immutable and hashable."""

    __slots__ = ()

    def children(self) -> Tuple["Formula", ...]:
        return ()

    def __str__(self) -> str:
        from .printer import render
        return render(self)


@dataclass(frozen=True)
class Var(Formula):
    """Propositional variable (lowercase identifier)"""
    name: str


@dataclass(frozen=True)
class MetaVar(Formula):
    """Schema metavariable (single uppercase letter)"""
    name: str


@dataclass(frozen=True)
class Not(Formula):
    operand: Formula

    def children(self) -> Tuple[Formula, ...]:
        return (self.operand,)


@dataclass(frozen=True)
class Binary(Formula):
    """Common shape of the two-place connectives"""
    left: Formula
    right: Formula

    def children(self) -> Tuple[Formula, ...]:
        return (self.left, self.right)


@dataclass(frozen=True)
class And(Binary):
    pass


@dataclass(frozen=True)
class Or(Binary):
    pass


@dataclass(frozen=True)
class Imp(Binary):
    pass


@dataclass(frozen=True)
class Iff(Binary):
    pass


@dataclass(frozen=True)
class Cond(Binary):
    """The conditional A > B; left is the antecedent, right the consequent"""

    @property
    def antecedent(self) -> Formula:
        return self.left

    @property
    def consequent(self) -> Formula:
        return self.right


BOOLEAN_BINARIES = (And, Or, Imp, Iff)

Substitution = Dict[str, Formula]


@dataclass(frozen=True)
class Schema:
    """
    A named formula template.

    `metavars` is the declared metavariable list; every metavariable
    occurring in `body` must be declared.
    """
    name: str
    body: Formula
    metavars: Tuple[str, ...] = field(default=())

    def __post_init__(self):
        used = metavariables(self.body)
        if not self.metavars:
            object.__setattr__(self, "metavars", tuple(sorted(used)))
            return
        undeclared = [m for m in used if m not in self.metavars]
        if undeclared:
            raise ValueError(
                f"Schema {self.name}: undeclared metavariables {', '.join(undeclared)}"
            )

    def __str__(self) -> str:
        return str(self.body)


def walk(f: Formula) -> Iterator[Formula]:
    """Pre-order traversal, left to right"""
    stack = [f]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.children()))


def _leaf_names(f: Formula, kind: type) -> Tuple[str, ...]:
    seen: Dict[str, None] = {}
    for node in walk(f):
        if isinstance(node, kind):
            seen.setdefault(node.name, None)
    return tuple(seen)


def variables(f: Formula) -> Tuple[str, ...]:
    """Propositional variable names in first-occurrence order"""
    return _leaf_names(f, Var)


def metavariables(f: Formula) -> Tuple[str, ...]:
    """Metavariable names in first-occurrence order"""
    return _leaf_names(f, MetaVar)


def is_ground(f: Formula) -> bool:
    return not metavariables(f)


def conditional_depth(f: Formula) -> int:
    """Maximum nesting of > in f"""
    if isinstance(f, Cond):
        return 1 + max(conditional_depth(f.left), conditional_depth(f.right))
    children = f.children()
    return max((conditional_depth(c) for c in children), default=0)


def conjoin(parts) -> Formula:
    """Left-associated conjunction of a non-empty sequence"""
    parts = list(parts)
    if not parts:
        raise ValueError("cannot conjoin an empty sequence")
    result = parts[0]
    for part in parts[1:]:
        result = And(result, part)
    return result

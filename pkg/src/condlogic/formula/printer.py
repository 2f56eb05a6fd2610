"""
Rendering of formulas back to the ASCII grammar (and an output-only Unicode form)
"""

from typing import Dict, Type

from .syntax import And, Binary, Cond, Formula, Iff, Imp, MetaVar, Not, Or, Var

# Binding strength, loosest first
PRECEDENCE: Dict[Type[Formula], int] = {
    Iff: 0,
    Imp: 1,
    Cond: 2,
    Or: 3,
    And: 4,
    Not: 5,
}
ATOMIC = 6

ASCII_SYMBOLS = {Iff: "<->", Imp: "->", Cond: ">", Or: "|", And: "&", Not: "~"}
UNICODE_SYMBOLS = {Iff: " ↔ ", Imp: " → ", Cond: " > ", Or: " ∨ ", And: " ∧ ", Not: "¬"}

LEFT_ASSOCIATIVE = (And, Or)
# Operands of a binary connective that are always bracketed
ALWAYS_BRACKETED = (Cond, Imp, Iff)


def _level(f: Formula) -> int:
    return PRECEDENCE.get(type(f), ATOMIC)


def _needs_brackets(parent: Binary, child: Formula, is_left: bool) -> bool:
    if isinstance(child, ALWAYS_BRACKETED):
        return True
    parent_level, child_level = _level(parent), _level(child)
    if child_level > parent_level:
        return False
    if child_level < parent_level:
        return True
    # same level: only the left operand of & and | may go bare
    return not (is_left and isinstance(parent, LEFT_ASSOCIATIVE))


def render(f: Formula, unicode: bool = False) -> str:
    """Render f with the fewest brackets that re-parse to the same tree"""
    symbols = UNICODE_SYMBOLS if unicode else ASCII_SYMBOLS

    def go(node: Formula) -> str:
        if isinstance(node, (Var, MetaVar)):
            return node.name
        if isinstance(node, Not):
            inner = go(node.operand)
            if _level(node.operand) < _level(node):
                inner = f"({inner})"
            return symbols[Not] + inner
        if isinstance(node, Binary):
            left, right = go(node.left), go(node.right)
            if _needs_brackets(node, node.left, True):
                left = f"({left})"
            if _needs_brackets(node, node.right, False):
                right = f"({right})"
            return f"{left}{symbols[type(node)]}{right}"
        raise TypeError(f"Unknown formula node: {node!r}")

    return go(f)

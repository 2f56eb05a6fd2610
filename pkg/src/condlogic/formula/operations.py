"""
Structural operations: schema matching, instantiation, occurrence
replacement and the modal-atom abstraction
"""

from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Union

from .syntax import (
    LEFT, ONLY, RIGHT, Binary, Cond, Formula, FormulaPath, MetaVar, Not, Schema,
    Substitution, Var,
)


class SubstitutionError(ValueError):
    """Raised when a substitution does not cover a schema's metavariables"""


class PathError(ValueError):
    """Raised when a path does not address a subformula of its host"""


def _body(s: Union[Schema, Formula]) -> Formula:
    return s.body if isinstance(s, Schema) else s


def match_schema(s: Union[Schema, Formula], f: Formula,
                 bindings: Optional[Substitution] = None) -> Optional[Substitution]:
    """
    One-sided matching of a schema against a formula.

    Metavariables of the schema are pattern variables; every node of `f`
    (metavariables included) is treated as a constant. Returns the unique
    substitution extending `bindings` with instantiate(s, σ) == f, or None.
    """
    sigma: Substitution = dict(bindings) if bindings else {}
    stack = [(_body(s), f)]
    while stack:
        pattern, target = stack.pop()
        if isinstance(pattern, MetaVar):
            bound = sigma.get(pattern.name)
            if bound is None:
                sigma[pattern.name] = target
            elif bound != target:
                return None
            continue
        if type(pattern) is not type(target):
            return None
        if isinstance(pattern, Var):
            if pattern.name != target.name:
                return None
            continue
        stack.extend(zip(pattern.children(), target.children()))
    return sigma


def match_all(patterns: Sequence[Union[Schema, Formula]], formulas: Sequence[Formula],
              bindings: Optional[Substitution] = None) -> Optional[Substitution]:
    """Match several schemas against several formulas with one shared substitution"""
    if len(patterns) != len(formulas):
        return None
    sigma: Optional[Substitution] = dict(bindings) if bindings else {}
    for pattern, formula in zip(patterns, formulas):
        sigma = match_schema(pattern, formula, sigma)
        if sigma is None:
            return None
    return sigma


def _rebuild(node: Formula, children: List[Formula]) -> Formula:
    if isinstance(node, Not):
        return Not(children[0])
    return type(node)(children[0], children[1])


def instantiate(s: Union[Schema, Formula], sigma: Substitution) -> Formula:
    """
    Replace every metavariable leaf by its image under sigma.

    Raises:
        SubstitutionError: if a metavariable has no binding.
    """
    def go(node: Formula) -> Formula:
        if isinstance(node, MetaVar):
            if node.name not in sigma:
                name = s.name if isinstance(s, Schema) else str(s)
                raise SubstitutionError(f"No binding for metavariable {node.name} in {name}")
            return sigma[node.name]
        if isinstance(node, Var):
            return node
        return _rebuild(node, [go(c) for c in node.children()])

    return go(_body(s))


def _child(node: Formula, selector: str) -> Formula:
    if isinstance(node, Not) and selector == ONLY:
        return node.operand
    if isinstance(node, Binary) and selector == LEFT:
        return node.left
    if isinstance(node, Binary) and selector == RIGHT:
        return node.right
    raise PathError(f"Selector '{selector}' does not apply to {node}")


def sub_at(host: Formula, path: FormulaPath) -> Formula:
    """The subformula occurrence addressed by path"""
    node = host
    for selector in path:
        node = _child(node, selector)
    return node


def replace_at(host: Formula, path: FormulaPath, replacement: Formula) -> Formula:
    """
    Replace exactly the occurrence addressed by path.

    Raises:
        PathError: if path is not valid in host.
    """
    if not path:
        return replacement
    selector, rest = path[0], tuple(path[1:])
    child = _child(host, selector)
    new_child = replace_at(child, rest, replacement)
    if isinstance(host, Not):
        return Not(new_child)
    if selector == LEFT:
        return type(host)(new_child, host.right)
    return type(host)(host.left, new_child)


def replace_all_at(host: Formula, paths: Iterable[FormulaPath], replacement: Formula) -> Formula:
    """Iterated replace_at over prefix-free paths"""
    result = host
    for path in paths:
        result = replace_at(result, tuple(path), replacement)
    return result


def occurrences(host: Formula, target: Formula) -> List[FormulaPath]:
    """Paths of every occurrence of target in host, outermost first"""
    found: List[FormulaPath] = []

    def go(node: Formula, path: FormulaPath):
        if node == target:
            found.append(path)
            return
        if isinstance(node, Not):
            go(node.operand, path + (ONLY,))
        elif isinstance(node, Binary):
            go(node.left, path + (LEFT,))
            go(node.right, path + (RIGHT,))

    go(host, ())
    return found


def is_modal_atom(f: Formula) -> bool:
    return isinstance(f, (Var, MetaVar, Cond))


def modal_atom_list(formulas: Iterable[Formula]) -> List[Formula]:
    """Modal atoms across formulas, in first-occurrence order"""
    seen: Dict[Formula, None] = {}
    for f in formulas:
        stack = [f]
        while stack:
            node = stack.pop()
            if is_modal_atom(node):
                seen.setdefault(node, None)
            else:
                stack.extend(reversed(node.children()))
    return list(seen)


def modal_atoms(f: Formula) -> FrozenSet[Formula]:
    """
    Maximal subformulas that are variables, metavariables or conditionals.

    Boolean structure above these atoms is what PC reasoning sees.
    """
    return frozenset(modal_atom_list([f]))

"""
Replacement of equivalents by congruence steps

derive_replacement turns one use of RE into kernel lines: a PC step at
every Boolean node above a replaced occurrence, RCEA at a conditional's
antecedent and RCEC at its consequent.
"""

import itertools
import logging
from typing import List, Mapping, Optional, Sequence, Tuple

from ..formula import (
    ONLY, Cond, Formula, FormulaPath, Iff, Not, PathError, render, sub_at,
)
from .proof import AxiomSystem, Justification, Proof, ProofLine
from .registry import RegistryError, RuleRegistry

logger = logging.getLogger(__name__)


def _rule_kind(name: str, system: AxiomSystem, registry: Optional[RuleRegistry],
               systems: Mapping[str, AxiomSystem]) -> str:
    if name in system.rules:
        return "rule"
    if registry is not None and registry.derived_rule(systems, system.name, name) is not None:
        return "derived"
    raise RegistryError(f"Replacement needs {name}, which is not available in {system.name}")


def derive_replacement(host: Formula, paths: Sequence[FormulaPath], lhs: Formula, rhs: Formula,
                       system: AxiomSystem, registry: Optional[RuleRegistry] = None,
                       systems: Optional[Mapping[str, AxiomSystem]] = None,
                       premise_ref: Optional[str] = None, id_prefix: str = "") -> Proof:
    """
    Derive host <-> host' from lhs <-> rhs, host' replacing the occurrences
    of lhs at `paths` by rhs.

    With `premise_ref` the lines cite that existing line for lhs <-> rhs;
    otherwise the fragment opens with an assumption line. RCEA and RCEC must
    be primitive in `system` or derived rules visible from it.

    Raises:
        PathError: if a path does not address lhs, or paths overlap.
        RegistryError: if a needed congruence rule is unavailable.
    """
    paths = [tuple(p) for p in paths]
    if not paths:
        raise PathError("Replacement needs at least one path")
    for path in paths:
        if sub_at(host, path) != lhs:
            raise PathError(f"Path {list(path)} does not address {render(lhs)} in {render(host)}")
    for a, b in itertools.permutations(paths, 2):
        if b[:len(a)] == a:
            raise PathError(f"Paths {list(a)} and {list(b)} overlap")
    scope: Mapping[str, AxiomSystem] = systems if systems is not None else {system.name: system}

    lines: List[ProofLine] = []
    counter = itertools.count(1)

    def emit(formula: Formula, just: Justification) -> str:
        line_id = f"{id_prefix}{next(counter)}"
        lines.append(ProofLine(id=line_id, formula=formula, just=just))
        return line_id

    premise = Iff(lhs, rhs)
    root_ref = premise_ref if premise_ref is not None else emit(premise, Justification("assumption"))

    def split(rel: List[FormulaPath], selector: str) -> List[FormulaPath]:
        return [p[1:] for p in rel if p[0] == selector]

    def go(node: Formula, rel: List[FormulaPath]) -> Tuple[Optional[str], Formula]:
        if not rel:
            return None, node
        if () in rel:
            return root_ref, rhs
        if isinstance(node, Not):
            ref, new = go(node.operand, split(rel, ONLY))
            new_node: Formula = Not(new)
            return emit(Iff(node, new_node), Justification("pc", refs=(ref,))), new_node

        left_ref, new_left = go(node.left, split(rel, "left"))
        right_ref, new_right = go(node.right, split(rel, "right"))
        new_node = type(node)(new_left, new_right)
        if isinstance(node, Cond):
            steps = []
            if left_ref is not None:
                kind = _rule_kind("RCEA", system, registry, scope)
                steps.append(emit(Iff(node, Cond(new_left, node.right)),
                                  Justification(kind, name="RCEA", refs=(left_ref,))))
            if right_ref is not None:
                kind = _rule_kind("RCEC", system, registry, scope)
                steps.append(emit(Iff(Cond(new_left, node.right), new_node),
                                  Justification(kind, name="RCEC", refs=(right_ref,))))
            if len(steps) == 1:
                return steps[0], new_node
            return emit(Iff(node, new_node), Justification("pc", refs=tuple(steps))), new_node

        refs = tuple(r for r in (left_ref, right_ref) if r is not None)
        return emit(Iff(node, new_node), Justification("pc", refs=refs)), new_node

    _, new_host = go(host, paths)
    logger.debug(f"Replacement in {render(host)} expanded to {len(lines)} lines")
    return Proof(
        name=f"replace {render(lhs)} by {render(rhs)} in {render(host)}",
        system=system.name, kind="rule", lines=lines, premises=[premise],
        conclusion=Iff(host, new_host), label="RE",
    )


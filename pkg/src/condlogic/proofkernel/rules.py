"""
Checking single applications of inference rules
"""

from typing import List, Optional, Sequence

from ..formula import (
    Cond, Formula, FormulaPath, Iff, Imp, PathError, conjoin, match_all, render,
    replace_all_at, sub_at,
)
from .registry import RuleSpec


def _prefix_free(paths: Sequence[FormulaPath]) -> bool:
    for i, a in enumerate(paths):
        for j, b in enumerate(paths):
            if i != j and len(a) <= len(b) and tuple(b[:len(a)]) == tuple(a):
                return False
    return True


def _check_rck(premise: Formula, conclusion: Formula,
               conjuncts: Sequence[Formula]) -> Optional[str]:
    if not conjuncts:
        if not isinstance(conclusion, Cond):
            return "RCK (n=0) conclusion must be a conditional"
        if conclusion.consequent != premise:
            return "RCK (n=0) conclusion consequent differs from the premise"
        return None

    if not isinstance(premise, Imp):
        return "RCK premise must be an implication"
    if premise.left != conjoin(conjuncts):
        return (f"fold mismatch: premise antecedent {render(premise.left)} is not "
                f"{render(conjoin(conjuncts))}")
    if not (isinstance(conclusion, Imp) and isinstance(conclusion.right, Cond)):
        return "RCK conclusion must have the form (...)->(φ>ψ)"
    phi = conclusion.right.antecedent
    expected = Imp(conjoin([Cond(phi, c) for c in conjuncts]), Cond(phi, premise.right))
    if conclusion != expected:
        return f"RCK conclusion should be {render(expected)}"
    return None


def _check_re(premise: Formula, conclusion: Formula,
              paths: Sequence[FormulaPath]) -> Optional[str]:
    if not isinstance(premise, Iff):
        return "RE premise must be a biconditional"
    if not isinstance(conclusion, Iff):
        return "RE conclusion must be a biconditional"
    if not _prefix_free(paths):
        return "RE paths must be distinct and prefix-free"
    host = conclusion.left
    for path in paths:
        try:
            target = sub_at(host, path)
        except PathError as e:
            return f"bad RE path {list(path)}: {e}"
        if target != premise.left:
            return (f"RE path {list(path)} addresses {render(target)}, "
                    f"not {render(premise.left)}")
    expected = replace_all_at(host, paths, premise.right)
    if conclusion.right != expected:
        return f"RE conclusion should be {render(Iff(host, expected))}"
    return None


def check_rule_application(rule: RuleSpec, premises: Sequence[Formula], conclusion: Formula,
                           conjuncts: Optional[Sequence[Formula]] = None,
                           paths: Optional[Sequence[FormulaPath]] = None) -> Optional[str]:
    """
    Check one application of `rule`.

    Returns None when the application is correct, otherwise the reason it
    is not. RCK needs the explicit conjunct list; RE needs the paths of the
    replaced occurrences; schematic rules take neither.
    """
    if rule.form == "rck":
        if conjuncts is None or paths is not None:
            return "RCK needs a conjunct list and no paths"
        if len(premises) != 1:
            return "RCK takes exactly one premise"
        return _check_rck(premises[0], conclusion, list(conjuncts))

    if rule.form == "re":
        if not paths or conjuncts is not None:
            return "RE needs a non-empty path list and no conjuncts"
        if len(premises) != 1:
            return "RE takes exactly one premise"
        return _check_re(premises[0], conclusion, list(paths))

    if conjuncts is not None or paths is not None:
        return f"{rule.name} takes no conjuncts or paths"
    if len(premises) != len(rule.premises):
        return f"{rule.name} takes {len(rule.premises)} premise(s), got {len(premises)}"
    patterns: List[Formula] = list(rule.premises) + [rule.conclusion]
    if match_all(patterns, list(premises) + [conclusion]) is None:
        return f"no substitution instantiates {rule.describe()} to this step"
    return None

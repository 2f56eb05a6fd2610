"""
Proof objects, axiom systems and the proof file format
"""

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Tuple, Union

from ..formula import (
    LEFT, ONLY, RIGHT, Formula, FormulaPath, FormulaSyntaxError, Substitution, parse, render,
)

logger = logging.getLogger(__name__)

JUSTIFICATION_TYPES = ("axiom", "assumption", "pc", "rule", "derived", "theorem", "replacement")
PROOF_KINDS = ("theorem", "rule")
SELECTORS = (LEFT, RIGHT, ONLY)


class ProofFormatError(ValueError):
    """Raised for malformed proof files"""


@dataclass(frozen=True)
class AxiomSystem:
    """
    A named system: axiom schema names and primitive rule names.

    `axioms` and `rules` are the complete lists (inherited entries included);
    `extends` only widens the scope in which derived rules and theorems apply.
    """
    name: str
    axioms: Tuple[str, ...]
    rules: Tuple[str, ...]
    extends: Optional[str] = None
    description: str = ""

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"name": self.name, "axioms": list(self.axioms),
                                "rules": list(self.rules)}
        if self.extends:
            data["extends"] = self.extends
        return data


def system_chain(systems: Mapping[str, AxiomSystem], name: str) -> List[str]:
    """The system and every system it transitively extends, nearest first"""
    chain: List[str] = []
    current: Optional[str] = name
    while current is not None:
        if current in chain:
            raise ValueError(f"Cyclic extends chain through {current}")
        if current not in systems:
            raise ValueError(f"Unknown axiom system '{current}'")
        chain.append(current)
        current = systems[current].extends
    return chain


@dataclass
class Justification:
    """One justification tag; which optional fields apply depends on `kind`"""
    kind: str
    name: str = ""
    refs: Tuple[str, ...] = ()
    subst: Optional[Substitution] = None
    conjuncts: Optional[Tuple[Formula, ...]] = None
    paths: Optional[Tuple[FormulaPath, ...]] = None

    def describe(self) -> str:
        refs = f"({', '.join(self.refs)}) " if self.refs else ""
        if self.kind == "assumption":
            return "Assumption"
        if self.kind == "pc":
            return f"{refs}PC"
        if self.kind == "axiom":
            return self.name
        if self.kind == "theorem":
            return f"theorem {self.name}"
        if self.kind == "replacement":
            return f"{refs}RE (expanded)"
        return f"{refs}{self.name}"

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"type": self.kind}
        if self.kind in ("axiom",):
            data["schema"] = self.name
        elif self.kind in ("rule", "derived"):
            data["rule"] = self.name
        elif self.kind == "theorem":
            data["proof"] = self.name
        if self.refs:
            data["refs"] = [int(r) if r.isdigit() else r for r in self.refs]
        if self.subst is not None:
            data["subst"] = {k: render(v) for k, v in self.subst.items()}
        if self.conjuncts is not None:
            data["conjuncts"] = [render(c) for c in self.conjuncts]
        if self.paths is not None:
            data["paths"] = [list(p) for p in self.paths]
        return data


@dataclass
class ProofLine:
    id: str
    formula: Formula
    just: Justification
    origin: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "id": int(self.id) if self.id.isdigit() else self.id,
            "formula": render(self.formula),
            "just": self.just.to_dict(),
        }
        if self.origin is not None:
            data["origin"] = self.origin
        return data


@dataclass
class Proof:
    """
    A named derivation in one axiom system.

    A "rule" proof derives `conclusion` from `premises` and registers under
    `label`; a "theorem" proof has no premises and proves `conclusion`.
    """
    name: str
    system: str
    kind: str
    lines: List[ProofLine]
    premises: List[Formula] = field(default_factory=list)
    conclusion: Optional[Formula] = None
    label: str = ""
    template: bool = False
    description: str = ""
    notes: List[str] = field(default_factory=list)

    @property
    def final(self) -> Optional[ProofLine]:
        return self.lines[-1] if self.lines else None

    def to_dict(self) -> Dict[str, Any]:
        concludes: Dict[str, Any] = {}
        key = "rule" if self.kind == "rule" else "theorem"
        if self.label:
            concludes[key] = self.label
        if self.kind == "rule":
            concludes["premises"] = [render(p) for p in self.premises]
        if self.conclusion is not None:
            concludes["conclusion" if self.kind == "rule" else "formula"] = render(self.conclusion)
        if self.template:
            concludes["template"] = True
        data: Dict[str, Any] = {
            "name": self.name,
            "system": self.system,
            "kind": self.kind,
            "premises": [render(p) for p in self.premises],
            "concludes": concludes,
            "lines": [line.to_dict() for line in self.lines],
        }
        if self.description:
            data["description"] = self.description
        if self.notes:
            data["notes"] = list(self.notes)
        return data


def _formula(text: Any, where: str) -> Formula:
    if not isinstance(text, str):
        raise ProofFormatError(f"{where}: expected a formula string, got {text!r}")
    try:
        return parse(text)
    except FormulaSyntaxError as e:
        raise ProofFormatError(f"{where}: {e}") from e


def _path(raw: Any, where: str) -> FormulaPath:
    if not isinstance(raw, list) or any(s not in SELECTORS for s in raw):
        raise ProofFormatError(f"{where}: a path is a list of {', '.join(SELECTORS)}")
    return tuple(raw)


def _justification(raw: Any, where: str) -> Justification:
    if not isinstance(raw, Mapping) or raw.get("type") not in JUSTIFICATION_TYPES:
        raise ProofFormatError(
            f"{where}: justification type must be one of {', '.join(JUSTIFICATION_TYPES)}"
        )
    kind = raw["type"]
    name = raw.get("schema") or raw.get("rule") or raw.get("proof") or ""
    if kind in ("axiom", "rule", "derived", "theorem") and not name:
        raise ProofFormatError(f"{where}: {kind} justification needs a name")
    refs = tuple(str(r) for r in raw.get("refs", []))
    if kind in ("rule", "derived", "replacement") and not refs:
        raise ProofFormatError(f"{where}: {kind} justification needs refs")

    subst = None
    if "subst" in raw:
        if not isinstance(raw["subst"], Mapping):
            raise ProofFormatError(f"{where}: subst must be an object")
        subst = {str(k): _formula(v, f"{where} subst {k}") for k, v in raw["subst"].items()}
    conjuncts = None
    if "conjuncts" in raw:
        if not isinstance(raw["conjuncts"], list):
            raise ProofFormatError(f"{where}: conjuncts must be a list")
        conjuncts = tuple(_formula(c, f"{where} conjunct") for c in raw["conjuncts"])
    paths = None
    if "paths" in raw:
        if not isinstance(raw["paths"], list) or not raw["paths"]:
            raise ProofFormatError(f"{where}: paths must be a non-empty list")
        paths = tuple(_path(p, f"{where} path") for p in raw["paths"])
    if kind == "replacement" and paths is None:
        raise ProofFormatError(f"{where}: replacement justification needs paths")

    return Justification(kind=kind, name=str(name), refs=refs, subst=subst,
                         conjuncts=conjuncts, paths=paths)


def proof_from_dict(data: Mapping[str, Any], source: str = "<proof>") -> Proof:
    """
    Build a Proof from the JSON proof format.

    Raises:
        ProofFormatError: for missing fields, bad formulas or bad justifications.
    """
    try:
        name, system, kind = str(data["name"]), str(data["system"]), str(data["kind"])
        raw_lines = data["lines"]
    except (KeyError, TypeError) as e:
        raise ProofFormatError(f"{source}: missing field {e}") from e
    if kind not in PROOF_KINDS:
        raise ProofFormatError(f"{source}: kind must be theorem or rule, got '{kind}'")

    premises = [_formula(p, f"{source} premise") for p in data.get("premises", [])]
    concludes = data.get("concludes") or {}
    conclusion_text = concludes.get("conclusion") or concludes.get("formula")
    conclusion = _formula(conclusion_text, f"{source} concludes") if conclusion_text else None
    if kind == "rule":
        declared = [_formula(p, f"{source} concludes premise")
                    for p in concludes.get("premises", data.get("premises", []))]
        if declared != premises:
            raise ProofFormatError(f"{source}: concludes.premises differ from premises")

    lines: List[ProofLine] = []
    for k, raw in enumerate(raw_lines):
        if not isinstance(raw, Mapping) or "id" not in raw or "formula" not in raw:
            raise ProofFormatError(f"{source}: line {k + 1} needs id and formula")
        line_id = str(raw["id"])
        where = f"{source} line {line_id}"
        lines.append(ProofLine(
            id=line_id,
            formula=_formula(raw["formula"], where),
            just=_justification(raw.get("just"), where),
            origin=str(raw["origin"]) if raw.get("origin") is not None else None,
        ))

    return Proof(
        name=name, system=system, kind=kind, lines=lines, premises=premises,
        conclusion=conclusion,
        label=str(concludes.get("rule") or concludes.get("theorem") or ""),
        template=bool(concludes.get("template", False)),
        description=str(data.get("description", "")),
        notes=[str(n) for n in data.get("notes", [])],
    )


def load_proof(path: Union[str, Path]) -> Proof:
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as e:
        raise ProofFormatError(f"{path}: invalid JSON ({e})") from e
    proof = proof_from_dict(data, source=str(path))
    logger.debug(f"Loaded proof {proof.name} ({len(proof.lines)} lines) from {path}")
    return proof

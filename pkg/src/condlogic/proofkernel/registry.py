"""
Registry of citeable objects: axiom schemas, primitive rules, derived rules
and proved theorems
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

from ..formula import Formula, Schema, render
from .proof import AxiomSystem, system_chain

logger = logging.getLogger(__name__)

RULE_FORMS = ("schematic", "rck", "re")
PRIMITIVE = "primitive"


class RegistryError(ValueError):
    """Raised for unknown names, collisions and registration of unchecked proofs"""


@dataclass(frozen=True)
class Footprint:
    """Axioms and primitive rules a derivation ultimately rests on"""
    axioms: FrozenSet[str] = frozenset()
    rules: FrozenSet[str] = frozenset()
    meta: bool = False

    def __or__(self, other: "Footprint") -> "Footprint":
        return Footprint(self.axioms | other.axioms, self.rules | other.rules,
                         self.meta or other.meta)

    def within(self, axioms: Iterable[str], rules: Iterable[str]) -> bool:
        return self.axioms <= frozenset(axioms) and self.rules <= frozenset(rules)

    def to_dict(self) -> Dict[str, object]:
        return {"axioms": sorted(self.axioms), "rules": sorted(self.rules), "meta": self.meta}


@dataclass(frozen=True)
class RuleSpec:
    """
    A rule of inference.

    Schematic rules are premise schemas plus a conclusion schema. The "rck"
    and "re" forms are checked structurally; their premises and conclusion
    are kept for display only.
    """
    name: str
    premises: Tuple[Formula, ...]
    conclusion: Formula
    form: str = "schematic"
    provenance: str = PRIMITIVE
    system: Optional[str] = None
    footprint: Footprint = field(default_factory=Footprint)

    @property
    def primitive(self) -> bool:
        return self.provenance == PRIMITIVE

    def describe(self) -> str:
        premises = ", ".join(render(p) for p in self.premises)
        return f"{self.name}: {premises} / {render(self.conclusion)}"


@dataclass(frozen=True)
class TheoremEntry:
    name: str
    system: str
    formula: Formula
    footprint: Footprint = field(default_factory=Footprint)
    label: str = ""


class RuleRegistry:
    """Schemas and rules available to proofs, plus what accepted proofs add"""

    def __init__(self, schemas: Mapping[str, Schema], primitives: Mapping[str, RuleSpec]):
        self.schemas: Dict[str, Schema] = dict(schemas)
        self.primitives: Dict[str, RuleSpec] = dict(primitives)
        self._derived: Dict[Tuple[str, str], RuleSpec] = {}
        self._theorems: Dict[Tuple[str, str], TheoremEntry] = {}
        self._frozen = False

    def copy(self) -> "RuleRegistry":
        other = RuleRegistry(self.schemas, self.primitives)
        other._derived = dict(self._derived)
        other._theorems = dict(self._theorems)
        return other

    def freeze(self) -> None:
        self._frozen = True

    @property
    def frozen(self) -> bool:
        return self._frozen

    def schema(self, name: str) -> Schema:
        try:
            return self.schemas[name]
        except KeyError:
            raise RegistryError(f"Unknown axiom schema '{name}'") from None

    def primitive(self, name: str) -> RuleSpec:
        try:
            return self.primitives[name]
        except KeyError:
            raise RegistryError(f"Unknown primitive rule '{name}'") from None

    def _check_writable(self):
        if self._frozen:
            raise RegistryError("Registry is frozen")

    def add_rule(self, spec: RuleSpec) -> None:
        self._check_writable()
        key = (spec.system or "", spec.name)
        if key in self._derived:
            raise RegistryError(f"Derived rule {spec.name} already registered in {spec.system}")
        self._derived[key] = spec
        logger.debug(f"Registered derived rule {spec.name} in {spec.system}")

    def add_theorem(self, entry: TheoremEntry) -> None:
        self._check_writable()
        key = (entry.system, entry.name)
        if key in self._theorems:
            raise RegistryError(f"Theorem {entry.name} already registered in {entry.system}")
        self._theorems[key] = entry
        logger.debug(f"Registered theorem {entry.name} in {entry.system}")

    def derived_rule(self, systems: Mapping[str, AxiomSystem], system: str,
                     name: str) -> Optional[RuleSpec]:
        """A derived rule visible from `system` (its own or an extended system's)"""
        for scope in system_chain(systems, system):
            spec = self._derived.get((scope, name))
            if spec is not None:
                return spec
        return None

    def theorem(self, systems: Mapping[str, AxiomSystem], system: str,
                name: str) -> Optional[TheoremEntry]:
        for scope in system_chain(systems, system):
            entry = self._theorems.get((scope, name))
            if entry is not None:
                return entry
        return None

    @property
    def derived_rules(self) -> List[RuleSpec]:
        return list(self._derived.values())

    @property
    def theorems(self) -> List[TheoremEntry]:
        return list(self._theorems.values())

    def __repr__(self):
        return (f"RuleRegistry(schemas={len(self.schemas)}, primitives={len(self.primitives)}, "
                f"derived={len(self._derived)}, theorems={len(self._theorems)})")

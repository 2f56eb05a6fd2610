"""
Line-by-line proof checking and registration of accepted proofs
"""

import logging
from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, Mapping, Optional, Tuple

from ..formula import (
    And, Formula, Iff, Imp, PathError, SubstitutionError, instantiate, match_schema, render,
)
from .pc import AtomLimitExceeded, pc_entails
from .proof import AxiomSystem, Proof, ProofLine, system_chain
from .registry import Footprint, RegistryError, RuleRegistry, RuleSpec, TheoremEntry
from .replacement import derive_replacement
from .rules import check_rule_application

logger = logging.getLogger(__name__)


@dataclass
class LineVerdict:
    line_id: str
    formula: Formula
    justification: str
    ok: bool
    reason: str = ""
    origin: Optional[str] = None
    expansion: List["LineVerdict"] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "id": self.line_id,
            "formula": render(self.formula),
            "justification": self.justification,
            "ok": self.ok,
        }
        if self.reason:
            data["reason"] = self.reason
        if self.origin is not None:
            data["origin"] = self.origin
        if self.expansion:
            data["expansion"] = [v.to_dict() for v in self.expansion]
        return data


@dataclass
class CheckReport:
    """Verdicts for every line of one proof plus proof-level errors"""
    proof: str
    system: str
    verdicts: List[LineVerdict] = field(default_factory=list)
    errors: List[str] = field(default_factory=list)
    meta_steps: List[str] = field(default_factory=list)
    footprint: Footprint = field(default_factory=Footprint)

    @property
    def accepted(self) -> bool:
        return not self.errors and all(v.ok for v in self.verdicts)

    @property
    def first_failure(self) -> Optional[str]:
        for v in self.verdicts:
            if not v.ok:
                return f"line {v.line_id}: {v.reason}"
        return self.errors[0] if self.errors else None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "proof": self.proof,
            "system": self.system,
            "accepted": self.accepted,
            "first_failure": self.first_failure,
            "errors": self.errors,
            "meta_steps": self.meta_steps,
            "footprint": self.footprint.to_dict(),
            "lines": [v.to_dict() for v in self.verdicts],
        }

    def format_text(self, unicode: bool = False) -> str:
        """Line-numbered report"""
        status = "ACCEPTED" if self.accepted else "REJECTED"
        out = [f"{self.proof} [{self.system}]: {status}"]
        for v in self.verdicts:
            mark = "ok " if v.ok else "BAD"
            origin = f"  (source line {v.origin})" if v.origin else ""
            out.append(f"  {mark} {v.line_id:>4}. {render(v.formula, unicode)}"
                       f"    {v.justification}{origin}")
            if v.reason:
                out.append(f"           {v.reason}")
            for sub in v.expansion:
                if not sub.ok:
                    out.append(f"           expansion {sub.line_id}: {sub.reason}")
        for error in self.errors:
            out.append(f"  error: {error}")
        for step in self.meta_steps:
            out.append(f"  meta: {step}")
        return "\n".join(out)


class _LineChecker:
    """Checks lines against one system, collecting the footprint as it goes"""

    def __init__(self, proof: Proof, system: AxiomSystem,
                 systems: Mapping[str, AxiomSystem], registry: RuleRegistry):
        self.proof = proof
        self.system = system
        self.systems = systems
        self.registry = registry
        self.seen: Dict[str, Formula] = {}
        self.footprint = Footprint()

    def cited(self, line: ProofLine) -> Tuple[List[Formula], Optional[str]]:
        formulas = []
        for ref in line.just.refs:
            if ref not in self.seen:
                return [], f"reference {ref} is not an earlier line"
            formulas.append(self.seen[ref])
        return formulas, None

    def check(self, line: ProofLine) -> LineVerdict:
        verdict = LineVerdict(line_id=line.id, formula=line.formula,
                              justification=line.just.describe(), ok=True, origin=line.origin)
        if line.id in self.seen:
            reason: Optional[str] = f"duplicate line id {line.id}"
        else:
            try:
                reason = self._reason(line, verdict)
            except (RegistryError, SubstitutionError, PathError, AtomLimitExceeded) as e:
                reason = str(e)
        if reason:
            verdict.ok = False
            verdict.reason = reason
        self.seen.setdefault(line.id, line.formula)
        return verdict

    def _reason(self, line: ProofLine, verdict: LineVerdict) -> Optional[str]:
        just = line.just
        cited, error = self.cited(line)
        if error:
            return error

        if just.kind == "assumption":
            if line.formula not in self.proof.premises:
                return "assumption is not a premise of the proof"
            return None

        if just.kind == "axiom":
            if just.name not in self.system.axioms:
                return f"{just.name} is not an axiom of {self.system.name}"
            schema = self.registry.schema(just.name)
            if just.subst is not None:
                if instantiate(schema, just.subst) != line.formula:
                    return f"schema mismatch: {just.name} under the given substitution"
            elif match_schema(schema, line.formula) is None:
                return f"schema mismatch: not an instance of {just.name} ({schema})"
            self.footprint |= Footprint(axioms=frozenset({just.name}))
            return None

        if just.kind == "pc":
            result = pc_entails(cited, line.formula)
            if not result:
                return f"bad PC step, {result.describe()}"
            return None

        if just.kind in ("rule", "derived"):
            spec = self._rule(just.name, just.kind)
            reason = check_rule_application(spec, cited, line.formula,
                                            just.conjuncts, just.paths)
            if reason is None:
                self.footprint |= spec.footprint
            return reason

        if just.kind == "theorem":
            entry = self.registry.theorem(self.systems, self.system.name, just.name)
            if entry is None:
                return f"no theorem {just.name} proved in {self.system.name} or below"
            if just.subst is not None:
                if instantiate(entry.formula, just.subst) != line.formula:
                    return f"not the instance of theorem {just.name} under the given substitution"
            elif match_schema(entry.formula, line.formula) is None:
                return f"not an instance of theorem {just.name}"
            self.footprint |= entry.footprint
            return None

        if just.kind == "replacement":
            return self._replacement(line, cited, verdict)

        return f"unknown justification type {just.kind}"

    def _rule(self, name: str, kind: str) -> RuleSpec:
        if kind == "rule":
            if name not in self.system.rules:
                raise RegistryError(f"{name} is not a primitive rule of {self.system.name}")
            primitive = self.registry.primitive(name)
            return replace(primitive, footprint=Footprint(rules=frozenset({name})))
        spec = self.registry.derived_rule(self.systems, self.system.name, name)
        if spec is None:
            raise RegistryError(f"no derived rule {name} available in {self.system.name}")
        return spec

    def _replacement(self, line: ProofLine, cited: List[Formula],
                     verdict: LineVerdict) -> Optional[str]:
        just = line.just
        if len(cited) != 1 or not isinstance(cited[0], Iff):
            return "replacement cites exactly one biconditional"
        if not isinstance(line.formula, Iff):
            return "replacement line must be a biconditional host<->host'"
        lhs, rhs = cited[0].left, cited[0].right
        host = line.formula.left
        fragment = derive_replacement(host, just.paths or (), lhs, rhs, self.system,
                                      self.registry, self.systems,
                                      premise_ref=just.refs[0], id_prefix=f"{line.id}.")
        if fragment.conclusion != line.formula:
            return f"replacement yields {render(fragment.conclusion)}"
        for sub in fragment.lines:
            sub_verdict = self.check(sub)
            verdict.expansion.append(sub_verdict)
            if not sub_verdict.ok:
                return f"expanded step {sub.id} fails: {sub_verdict.reason}"
        return None


def check_proof(proof: Proof, systems: Mapping[str, AxiomSystem], registry: RuleRegistry,
                system: Optional[str] = None) -> CheckReport:
    """
    Check every line of a proof.

    `system` re-checks the proof under a system other than the one it names.
    A rule proof must end in its declared conclusion and assume only its
    premises; a theorem proof has no premises.
    """
    system_name = system or proof.system
    report = CheckReport(proof=proof.name, system=system_name)
    try:
        system_chain(systems, system_name)
    except ValueError as e:
        report.errors.append(str(e))
        return report

    checker = _LineChecker(proof, systems[system_name], systems, registry)
    for line in proof.lines:
        report.verdicts.append(checker.check(line))
    report.footprint = checker.footprint

    final = proof.final
    if final is None:
        report.errors.append("proof has no lines")
    elif proof.conclusion is not None and final.formula != proof.conclusion:
        report.errors.append(
            f"final line {render(final.formula)} is not the declared conclusion "
            f"{render(proof.conclusion)}"
        )
    if proof.kind == "theorem" and proof.premises:
        report.errors.append("a theorem proof takes no premises")
    if proof.kind == "rule" and not proof.label:
        report.errors.append("a rule proof must name the rule it derives")
    if proof.template:
        if proof.kind != "rule" or proof.label != "RCK":
            report.errors.append("only RCK derivations may be registered as templates")
        else:
            report.meta_steps.append(
                f"{proof.name}: the n={_rck_arity(proof)} derivation is taken as a template "
                f"for RCK with any number of conjuncts"
            )
            report.footprint |= Footprint(meta=True)

    if report.accepted:
        logger.info(f"[OK] {proof.name} accepted in {system_name} ({len(proof.lines)} lines)")
    else:
        logger.info(f"[FAIL] {proof.name} rejected in {system_name}: {report.first_failure}")
    return report


def _rck_arity(proof: Proof) -> int:
    premise = proof.premises[0] if proof.premises else None
    if not isinstance(premise, Imp):
        return 0
    count, node = 1, premise.left
    while isinstance(node, And):
        count, node = count + 1, node.left
    return count


def register_derived_rule(name: str, proof: Proof, registry: RuleRegistry,
                          report: CheckReport) -> RuleRegistry:
    """
    Make an accepted rule proof citeable as a derived rule.

    Raises:
        RegistryError: if the proof was not accepted or the name is taken.
    """
    if report.proof != proof.name or not report.accepted:
        raise RegistryError(f"Cannot register {name}: proof {proof.name} was not accepted")
    if proof.kind != "rule" or proof.final is None:
        raise RegistryError(f"Cannot register {name}: {proof.name} is not a rule proof")
    conclusion = proof.conclusion if proof.conclusion is not None else proof.final.formula
    registry.add_rule(RuleSpec(
        name=name,
        premises=tuple(proof.premises),
        conclusion=conclusion,
        form="rck" if proof.template else "schematic",
        provenance=f"derived-by:{proof.name}",
        system=report.system,
        footprint=report.footprint,
    ))
    return registry


def register_theorem(proof: Proof, registry: RuleRegistry, report: CheckReport) -> RuleRegistry:
    if report.proof != proof.name or not report.accepted:
        raise RegistryError(f"Cannot register theorem {proof.name}: proof was not accepted")
    if proof.kind != "theorem" or proof.final is None:
        raise RegistryError(f"{proof.name} is not a theorem proof")
    registry.add_theorem(TheoremEntry(name=proof.name, system=report.system,
                                      formula=proof.final.formula,
                                      footprint=report.footprint, label=proof.label))
    return registry


def check_and_register(proof: Proof, systems: Mapping[str, AxiomSystem],
                       registry: RuleRegistry, system: Optional[str] = None) -> CheckReport:
    """Check a proof and, if accepted, add its rule or theorem to the registry"""
    report = check_proof(proof, systems, registry, system)
    if report.accepted:
        if proof.kind == "rule":
            register_derived_rule(proof.label, proof, registry, report)
        else:
            register_theorem(proof, registry, report)
    return report

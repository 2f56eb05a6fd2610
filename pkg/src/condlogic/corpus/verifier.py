"""
Staged verification of the bundled corpus
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Set, Tuple

from ..formula import Cond, Formula, FormulaPath, Iff, LEFT, match_schema, render, sub_at
from ..proofkernel import CheckReport, Proof, RuleRegistry, check_and_register
from ..semantics import (
    Witness, check_condition, rule_preserved_on_frame, schema_valid_on_frame, witness_holds,
)
from .catalog import Catalog, FrameRecord, ManifestEntry, load_catalog

logger = logging.getLogger(__name__)

STAGES = ("frames", "validity", "proofs", "soundness")
REFERENCE_FRAME = "lewis-g"
REFERENCE_SYSTEM = "VCn"


@dataclass
class StageResult:
    name: str
    ok: bool = True
    checked: int = 0
    failures: List[str] = field(default_factory=list)

    def fail(self, message: str) -> None:
        self.ok = False
        self.failures.append(message)

    def to_dict(self) -> Dict[str, Any]:
        return {"stage": self.name, "ok": self.ok, "checked": self.checked,
                "failures": list(self.failures)}


@dataclass
class ProofResult:
    entry: ManifestEntry
    report: CheckReport
    undeclared: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        verdict = "accepted" if self.report.accepted else "rejected"
        return verdict == self.entry.expect and not self.undeclared


@dataclass
class CorpusReport:
    """Stage results in run order; stages after a failure are absent when halted"""
    stages: List[StageResult] = field(default_factory=list)
    proofs: List[ProofResult] = field(default_factory=list)
    halted_at: Optional[str] = None
    total_proofs: int = 0

    @property
    def ok(self) -> bool:
        return self.halted_at is None and all(s.ok for s in self.stages) \
            and len(self.stages) == len(STAGES)

    def stage(self, name: str) -> Optional[StageResult]:
        for s in self.stages:
            if s.name == name:
                return s
        return None

    @property
    def summary(self) -> str:
        frames_ok = all(s.ok for s in self.stages if s.name in ("frames", "validity"))
        passed = sum(1 for p in self.proofs if p.ok)
        text = f"frames {'ok' if frames_ok else 'FAILED'}, {passed}/{self.total_proofs} proofs ok"
        soundness = self.stage("soundness")
        if soundness is not None and not soundness.ok:
            text += ", soundness FAILED"
        return text

    def to_dict(self) -> Dict[str, Any]:
        return {
            "ok": self.ok,
            "summary": self.summary,
            "halted_at": self.halted_at,
            "stages": [s.to_dict() for s in self.stages],
            "proofs": [
                {
                    "entry": p.entry.label,
                    "expect": p.entry.expect,
                    "ok": p.ok,
                    "undeclared": p.undeclared,
                    "report": p.report.to_dict(),
                }
                for p in self.proofs
            ],
        }

    def format_text(self, unicode: bool = False) -> str:
        out = []
        for s in self.stages:
            out.append(f"[{'OK' if s.ok else 'FAIL'}] {s.name}: {s.checked} checks")
            out.extend(f"    {message}" for message in s.failures)
        for p in self.proofs:
            if not p.ok:
                out.append(p.report.format_text(unicode))
        if self.halted_at:
            out.append(f"halted after stage '{self.halted_at}'")
        out.append(self.summary)
        return "\n".join(out)


def _congruences(host: Formula, paths: Sequence[FormulaPath]) -> Set[str]:
    """RCEA/RCEC steps a replacement at `paths` expands into"""
    needed = set()
    for path in paths:
        for k in range(len(path)):
            if isinstance(sub_at(host, path[:k]), Cond):
                needed.add("RCEA" if path[k] == LEFT else "RCEC")
    return needed


def cited_names(proof: Proof, primitive_rules: Sequence[str]) -> Set[str]:
    """Derived rules and theorems a proof relies on, replacement expansions included"""
    names: Set[str] = set()
    for line in proof.lines:
        kind = line.just.kind
        if kind in ("derived", "theorem"):
            names.add(line.just.name)
        elif kind == "replacement" and line.just.paths:
            host = line.formula.left if isinstance(line.formula, Iff) else line.formula
            names |= _congruences(host, line.just.paths) - set(primitive_rules)
    return names


class CorpusVerifier:
    """Runs the verification stages over one catalog"""

    def __init__(self, catalog: Catalog, manifest: Optional[Sequence[ManifestEntry]] = None):
        self.logger = logging.getLogger(__name__)
        self.catalog = catalog
        self.manifest = list(manifest) if manifest is not None else list(catalog.manifest)
        self.registry: RuleRegistry = catalog.registry()

    def _check_record(self, record: FrameRecord, stage: StageResult) -> None:
        frame = record.frame
        for name in record.conditions:
            stage.checked += 1
            result = check_condition(frame, name)
            if isinstance(result, Witness):
                stage.fail(f"{frame.name}: condition ({name}) fails: {result.describe()}")
        for world, members, expected in record.selections:
            stage.checked += 1
            actual = frame.selection(world, members)
            if actual != frozenset(expected):
                stage.fail(f"{frame.name}: g({world},{{{','.join(members)}}}) = "
                           f"{{{','.join(sorted(actual))}}}, expected {{{','.join(expected)}}}")
        if record.falsifies:
            stage.checked += 1
            schema = self.catalog.schemas[record.falsifies]
            if schema_valid_on_frame(frame, schema) is True:
                stage.fail(f"{frame.name}: {record.falsifies} is valid but should fail")
            if record.witness is not None and not witness_holds(frame, schema, record.witness):
                stage.fail(f"{frame.name}: recorded witness does not falsify {record.falsifies}")

    def run_frames(self) -> StageResult:
        stage = StageResult("frames")
        if REFERENCE_FRAME not in self.catalog.frames:
            stage.fail(f"frame {REFERENCE_FRAME} missing from the catalog")
        for record in self.catalog.frames.values():
            self._check_record(record, stage)
        return stage

    def run_validity(self) -> StageResult:
        stage = StageResult("validity")
        for name, record in self.catalog.frames.items():
            schemas = list(record.valid)
            rules = list(record.preserves)
            if name == REFERENCE_FRAME:
                reference = self.catalog.system(REFERENCE_SYSTEM)
                schemas += [a for a in reference.axioms if a not in schemas]
                rules += [r for r in reference.rules if r not in rules]
            for schema_name in schemas:
                stage.checked += 1
                result = schema_valid_on_frame(record.frame, self.catalog.schemas[schema_name])
                if isinstance(result, Witness):
                    stage.fail(f"{name}: {schema_name} invalid: {result.describe()}")
            for rule_name in rules:
                stage.checked += 1
                result = rule_preserved_on_frame(record.frame, self.catalog.rules[rule_name])
                if isinstance(result, Witness):
                    stage.fail(f"{name}: {rule_name} not preserved: {result.describe()}")
        return stage

    def run_proofs(self) -> Tuple[StageResult, List[ProofResult]]:
        stage = StageResult("proofs")
        results = []
        for entry in self.manifest:
            proof = self.catalog.proofs[entry.proof]
            system = entry.system or proof.system
            report = check_and_register(proof, self.catalog.systems, self.registry, entry.system)
            primitive = self.catalog.systems[system].rules if system in self.catalog.systems else ()
            undeclared = sorted(cited_names(proof, primitive) - set(entry.uses))
            result = ProofResult(entry=entry, report=report, undeclared=undeclared)
            results.append(result)
            stage.checked += 1
            if undeclared:
                stage.fail(f"{entry.label}: cites undeclared {', '.join(undeclared)}")
            if not result.ok and not undeclared:
                verdict = "accepted" if report.accepted else "rejected"
                detail = f" ({report.first_failure})" if report.first_failure else ""
                stage.fail(f"{entry.label}: {verdict}, expected {entry.expect}{detail}")
        self.registry.freeze()
        return stage, results

    def run_soundness(self) -> StageResult:
        """Theorems resting only on VCn must hold on the reference frame, and none may be CA"""
        stage = StageResult("soundness")
        reference = self.catalog.system(REFERENCE_SYSTEM)
        frame = self.catalog.frame(REFERENCE_FRAME)
        ca = self.catalog.schemas["CA"]
        for entry in self.registry.theorems:
            if not entry.footprint.within(reference.axioms, reference.rules):
                continue
            stage.checked += 1
            result = schema_valid_on_frame(frame, entry.formula)
            if isinstance(result, Witness):
                stage.fail(f"{entry.name} [{entry.system}] rests on {REFERENCE_SYSTEM} but fails "
                           f"on {REFERENCE_FRAME}: {result.describe()}")
            if match_schema(ca, entry.formula) is not None:
                stage.fail(f"{entry.name} [{entry.system}] concludes a CA instance "
                           f"{render(entry.formula)}")
        return stage

    def run(self, halt: bool = True) -> CorpusReport:
        report = CorpusReport(total_proofs=len(self.manifest))
        for name in STAGES:
            if name == "proofs":
                stage, report.proofs = self.run_proofs()
            else:
                stage = getattr(self, f"run_{name}")()
            report.stages.append(stage)
            if stage.ok:
                self.logger.info(f"[OK] Stage {name}: {stage.checked} checks passed")
            else:
                self.logger.error(f"[FAIL] Stage {name}: {len(stage.failures)} failure(s), "
                                  f"first: {stage.failures[0]}")
                if halt:
                    report.halted_at = name
                    break
        self.logger.info(f"Corpus verification: {report.summary}")
        return report


def verify_corpus(catalog: Optional[Catalog] = None,
                  manifest: Optional[Sequence[ManifestEntry]] = None,
                  halt: bool = True) -> CorpusReport:
    """
    Run the frame, validity, proof and soundness stages in order.

    Proofs are checked from an empty registry in manifest order, each
    accepted proof registering its rule or theorem for later entries.
    With `halt` the first failing stage ends the run.
    """
    return CorpusVerifier(catalog or load_catalog(), manifest).run(halt)

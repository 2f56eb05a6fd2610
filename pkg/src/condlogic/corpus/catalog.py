"""
Bundled catalog: schemas, rules, systems, frames, proofs and the manifest
"""

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Tuple, Union

from ..core.config import config
from ..formula import FormulaSyntaxError, Schema, conjoin, parse, render
from ..proofkernel import (
    AxiomSystem, Proof, ProofFormatError, RuleRegistry, RuleSpec, proof_from_dict,
)
from ..proofkernel.registry import RULE_FORMS
from ..semantics import (
    CONDITION_NAMES, FrameLoadError, SelectionFrame, Witness, builtin_frame, witness_holds,
)

logger = logging.getLogger(__name__)


class CatalogError(ValueError):
    """Raised for any malformed or unresolvable corpus data"""

    def __init__(self, file: Union[str, Path], entry: str, message: str):
        self.file = str(file)
        self.entry = entry
        super().__init__(f"{file}: {entry}: {message}")


@dataclass
class FrameRecord:
    """A cataloged frame plus the facts it is expected to exhibit"""
    frame: SelectionFrame
    source: Path
    conditions: List[str] = field(default_factory=list)
    valid: List[str] = field(default_factory=list)
    preserves: List[str] = field(default_factory=list)
    falsifies: Optional[str] = None
    witness: Optional[Witness] = None
    selections: List[Tuple[str, Tuple[str, ...], Tuple[str, ...]]] = field(default_factory=list)
    description: str = ""


@dataclass
class Correspondence:
    condition: str
    schema: Schema
    background: Tuple[str, ...] = ()


@dataclass
class ManifestEntry:
    proof: str
    system: Optional[str] = None
    expect: str = "accepted"
    uses: Tuple[str, ...] = ()

    @property
    def label(self) -> str:
        return f"{self.proof}@{self.system}" if self.system else self.proof


@dataclass
class Catalog:
    data_dir: Path
    schemas: Dict[str, Schema]
    rules: Dict[str, RuleSpec]
    systems: Dict[str, AxiomSystem]
    frames: Dict[str, FrameRecord]
    correspondences: List[Correspondence]
    proofs: Dict[str, Proof]
    manifest: List[ManifestEntry]

    def registry(self) -> RuleRegistry:
        """A fresh registry holding only schemas and primitive rules"""
        return RuleRegistry(self.schemas, self.rules)

    def system(self, name: str) -> AxiomSystem:
        try:
            return self.systems[name]
        except KeyError:
            raise CatalogError(self.data_dir / "systems.json", name, "unknown system") from None

    def frame(self, name: str) -> SelectionFrame:
        if name in self.frames:
            return self.frames[name].frame
        return builtin_frame(name)

    def recorded_witness(self, frame: SelectionFrame, schema: str) -> Optional[Witness]:
        """
        The witness a cataloged frame with the same table records for `schema`,
        provided it still falsifies the schema on `frame`.
        """
        for record in self.frames.values():
            if record.falsifies != schema or record.witness is None:
                continue
            if record.frame.worlds != frame.worlds or record.frame.table != frame.table:
                continue
            if witness_holds(frame, self.schemas[schema], record.witness):
                return record.witness
            logger.warning(f"[FAIL] recorded {schema} witness of {record.frame.name} "
                           f"does not falsify it")
        return None


def _read_json(path: Path) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise CatalogError(path, "-", "file not found") from None
    except json.JSONDecodeError as e:
        raise CatalogError(path, f"line {e.lineno}", f"invalid JSON ({e.msg})") from e


def _parse_stable(path: Path, entry: str, text: str) -> Schema:
    try:
        body = parse(text)
    except FormulaSyntaxError as e:
        raise CatalogError(path, entry, str(e)) from e
    if parse(render(body)) != body:
        raise CatalogError(path, entry, f"'{text}' does not re-print stably")
    return Schema(name=entry, body=body)


def _load_schemas(path: Path) -> Tuple[Dict[str, Schema], Dict[str, RuleSpec], List[Dict[str, Any]]]:
    data = _read_json(path)
    schemas: Dict[str, Schema] = {}
    for item in data.get("schemas", []):
        name = item.get("name", "?")
        if name in schemas:
            raise CatalogError(path, name, "duplicate schema")
        schemas[name] = _parse_stable(path, name, item.get("formula", ""))

    rules: Dict[str, RuleSpec] = {}
    for item in data.get("rules", []):
        name = item.get("name", "?")
        form = item.get("form", "schematic")
        if form not in RULE_FORMS:
            raise CatalogError(path, name, f"unknown rule form '{form}'")
        premises = tuple(_parse_stable(path, name, p).body for p in item.get("premises", []))
        conclusion = _parse_stable(path, name, item.get("conclusion", "")).body
        rules[name] = RuleSpec(name=name, premises=premises, conclusion=conclusion, form=form)
    return schemas, rules, data.get("correspondences", [])


def _load_systems(path: Path, schemas: Mapping[str, Schema],
                  rules: Mapping[str, RuleSpec]) -> Dict[str, AxiomSystem]:
    systems: Dict[str, AxiomSystem] = {}
    for item in _read_json(path).get("systems", []):
        name = item.get("name", "?")
        axioms = list(item.get("axioms", []))
        rule_names = list(item.get("rules", []))
        base = item.get("extends")
        if base is not None:
            if base not in systems:
                raise CatalogError(path, name, f"extends unknown or later system '{base}'")
            parent = systems[base]
            axioms = list(parent.axioms) + [a for a in axioms if a not in parent.axioms]
            rule_names = list(parent.rules) + [r for r in rule_names if r not in parent.rules]
        for axiom in axioms:
            if axiom not in schemas:
                raise CatalogError(path, name, f"unknown axiom schema '{axiom}'")
        for rule in rule_names:
            if rule not in rules:
                raise CatalogError(path, name, f"unknown rule '{rule}'")
        systems[name] = AxiomSystem(name=name, axioms=tuple(axioms), rules=tuple(rule_names),
                                    extends=base, description=item.get("description", ""))
    return systems


def _load_frame(path: Path) -> FrameRecord:
    data = _read_json(path)
    try:
        frame = SelectionFrame.from_dict(data, source=str(path))
    except FrameLoadError as e:
        raise CatalogError(path, data.get("name", "frame"), str(e)) from e
    for name in data.get("conditions", []):
        if name not in CONDITION_NAMES:
            raise CatalogError(path, frame.name, f"unknown condition '{name}'")

    witness = None
    if "witness" in data:
        raw = data["witness"]
        witness = Witness(
            world=str(raw["world"]),
            assignment={k: frozenset(str(w) for w in v) for k, v in raw["assignment"].items()},
            subject=str(raw.get("subject", data.get("falsifies", ""))),
            detail=str(raw.get("detail", "")),
        )
    selections = [
        (str(s["w"]), tuple(str(w) for w in s["set"]), tuple(str(w) for w in s["out"]))
        for s in data.get("selections", [])
    ]
    return FrameRecord(
        frame=frame, source=path,
        conditions=list(data.get("conditions", [])),
        valid=list(data.get("valid", [])),
        preserves=list(data.get("preserves", [])),
        falsifies=data.get("falsifies"),
        witness=witness,
        selections=selections,
        description=data.get("description", ""),
    )


def _load_correspondences(path: Path, raw: List[Dict[str, Any]],
                          schemas: Mapping[str, Schema]) -> List[Correspondence]:
    pairs = []
    for item in raw:
        condition = item["condition"]
        names = item["schema"] if isinstance(item["schema"], list) else [item["schema"]]
        missing = [n for n in names if n not in schemas]
        if missing or condition not in CONDITION_NAMES:
            raise CatalogError(path, condition, f"bad correspondence entry {item}")
        if len(names) == 1:
            schema = schemas[names[0]]
        else:
            schema = Schema(name="&".join(names), body=conjoin(schemas[n].body for n in names))
        pairs.append(Correspondence(condition=condition, schema=schema,
                                    background=tuple(item.get("background", []))))
    return pairs


def _load_manifest(path: Path, proofs_dir: Path,
                   systems: Mapping[str, AxiomSystem]) -> Tuple[List[ManifestEntry], Dict[str, Proof]]:
    entries: List[ManifestEntry] = []
    proofs: Dict[str, Proof] = {}
    provided: Dict[str, str] = {}
    for item in _read_json(path).get("proofs", []):
        entry = ManifestEntry(
            proof=item["proof"],
            system=item.get("system"),
            expect=item.get("expect", "accepted"),
            uses=tuple(item.get("uses", [])),
        )
        if entry.system is not None and entry.system not in systems:
            raise CatalogError(path, entry.label, f"unknown system '{entry.system}'")
        if entry.proof not in proofs:
            proof_path = proofs_dir / f"{entry.proof}.json"
            try:
                proofs[entry.proof] = proof_from_dict(_read_json(proof_path), str(proof_path))
            except ProofFormatError as e:
                raise CatalogError(proof_path, entry.proof, str(e)) from e
        proof = proofs[entry.proof]
        if proof.system not in systems:
            raise CatalogError(path, entry.label, f"proof names unknown system '{proof.system}'")
        for used in entry.uses:
            if used not in provided:
                raise CatalogError(path, entry.label,
                                   f"uses '{used}' before any manifest entry provides it")
        provided.setdefault(proof.label if proof.kind == "rule" else proof.name, entry.label)
        entries.append(entry)
    return entries, proofs


def load_catalog(data_dir: Optional[Union[str, Path]] = None) -> Catalog:
    """
    Load and cross-check the corpus data directory.

    Raises:
        CatalogError: naming the file and entry of the first problem found.
    """
    root = Path(data_dir) if data_dir is not None else config.corpus_dir
    schemas, rules, raw_pairs = _load_schemas(root / "schemas.json")
    systems = _load_systems(root / "systems.json", schemas, rules)

    frames: Dict[str, FrameRecord] = {}
    for path in sorted((root / "frames").glob("*.json")):
        record = _load_frame(path)
        unknown = [s for s in record.valid + [record.falsifies or "ID"] if s not in schemas]
        unknown += [r for r in record.preserves if r not in rules]
        if unknown:
            raise CatalogError(path, record.frame.name, f"unknown schema or rule {unknown}")
        frames[record.frame.name or path.stem] = record
    try:
        builtin_frame("lewis-g")
    except FrameLoadError as e:
        raise CatalogError(root / "frames", "lewis-g", str(e)) from e

    correspondences = _load_correspondences(root / "schemas.json", raw_pairs, schemas)
    manifest, proofs = _load_manifest(root / "manifest.json", root / "proofs", systems)
    logger.info(f"[OK] Catalog loaded from {root}: {len(schemas)} schemas, {len(rules)} rules, "
                f"{len(systems)} systems, {len(frames)} frames, {len(manifest)} manifest entries")
    return Catalog(data_dir=root, schemas=schemas, rules=rules, systems=systems, frames=frames,
                   correspondences=correspondences, proofs=proofs, manifest=manifest)

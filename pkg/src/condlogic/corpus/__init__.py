"""Bundled schemas, systems, frames and derivations, with the staged corpus verifier."""

from .catalog import (
    Catalog, CatalogError, Correspondence, FrameRecord, ManifestEntry, load_catalog,
)
from .verifier import (
    STAGES, CorpusReport, CorpusVerifier, ProofResult, StageResult, cited_names, verify_corpus,
)

__all__ = [
    "Catalog", "CatalogError", "Correspondence", "FrameRecord", "ManifestEntry", "load_catalog",
    "CorpusReport", "CorpusVerifier", "ProofResult", "StageResult", "STAGES",
    "cited_names", "verify_corpus",
]

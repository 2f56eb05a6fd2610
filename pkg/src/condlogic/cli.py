"""
Command Line Interface for the conditional logic workbench
"""

import argparse
import json
import logging
import sys
from typing import Any, Dict, List, Optional

from .core.config import config
from .corpus import CorpusVerifier, load_catalog, verify_corpus
from .formula import (
    Schema, conditional_depth, metavariables, parse, parse_schema, render, variables,
)
from .modelsearch import Found, SearchSpec, find_countermodel, verify_countermodel
from .proofkernel import check_proof, load_proof
from .semantics import (
    SelectionFrame, check_condition, correspondence_check, formula_valid_on_frame,
    load_frame, parse_condition_list, schema_valid_on_frame,
)
from .semantics.correspondence import EXHAUSTIVE_LIMIT

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

logger = logging.getLogger(__name__)


def setup_logging(level: str = "INFO", log_file: Optional[str] = None):
    """Setup logging configuration; console output goes to stderr"""
    log_level = getattr(logging, level.upper(), logging.INFO)

    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_file:
        handlers.insert(0, logging.FileHandler(log_file))

    logging.basicConfig(
        level=log_level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=handlers,
        force=True,
    )


def _emit(args: argparse.Namespace, data: Dict[str, Any], text: str) -> None:
    if args.json:
        print(json.dumps(data, indent=2, ensure_ascii=False))
    elif not args.quiet:
        print(text)


def _frame_table(frame: SelectionFrame) -> str:
    lines = [f"worlds: {', '.join(frame.worlds)}"]
    for i, w in enumerate(frame.worlds):
        for subset in range(1, frame.full + 1):
            lines.append(f"  g({w},{{{','.join(frame.ordered(subset))}}}) = "
                         f"{{{','.join(frame.ordered(frame.table[i][subset]))}}}")
    return "\n".join(lines)


def _schema(text: str) -> Schema:
    """A catalog schema name, or a schema written out in full"""
    catalog = load_catalog()
    if text in catalog.schemas:
        return catalog.schemas[text]
    return parse_schema(text, text)


def cmd_parse(args: argparse.Namespace) -> int:
    """Parse a formula and print it in canonical form"""
    try:
        f = parse(args.formula)
    except ValueError as e:
        logger.error(f"[ERROR] {e}")
        return EXIT_USAGE
    data = {
        "input": args.formula,
        "formula": render(f),
        "unicode": render(f, unicode=True),
        "variables": list(variables(f)),
        "metavariables": list(metavariables(f)),
        "conditional_depth": conditional_depth(f),
    }
    _emit(args, data, render(f, unicode=args.unicode))
    return EXIT_OK


def cmd_check_frame(args: argparse.Namespace) -> int:
    """Check frame conditions exhaustively, printing a witness for each failure"""
    try:
        names = parse_condition_list(args.conditions)
        frame = load_frame(args.frame)
    except (ValueError, OSError) as e:
        logger.error(f"[ERROR] {e}")
        return EXIT_USAGE

    results = []
    lines = [f"=== Frame {frame.name or args.frame} ({frame.size} worlds) ==="]
    for name in names:
        outcome = check_condition(frame, name)
        holds = outcome is True
        results.append({
            "condition": name,
            "holds": holds,
            "witness": None if holds else outcome.to_dict(),
        })
        lines.append(f"[OK] ({name}) holds" if holds else f"[FAIL] {outcome.describe()}")
    ok = all(r["holds"] for r in results)
    _emit(args, {"frame": frame.name or args.frame, "ok": ok, "results": results},
          "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAILED


def cmd_validate(args: argparse.Namespace) -> int:
    """Frame validity of a cataloged schema or of a formula"""
    first = None
    try:
        frame = load_frame(args.frame)
        if args.schema:
            catalog = load_catalog()
            subject: Any = catalog.schemas.get(args.schema) or parse_schema(args.schema, args.schema)
            result = schema_valid_on_frame(frame, subject)
            label = subject.name
            recorded = None if result is True else catalog.recorded_witness(frame, label)
            if recorded is not None:
                first, result = result, recorded
        else:
            formula = parse(args.formula)
            label = render(formula)
            if metavariables(formula):
                result = schema_valid_on_frame(frame, formula)
            else:
                result = formula_valid_on_frame(frame, formula)
    except (ValueError, OSError) as e:
        logger.error(f"[ERROR] {e}")
        return EXIT_USAGE

    valid = result is True
    data = {"frame": frame.name or args.frame, "subject": label, "valid": valid,
            "witness": None if valid else result.to_dict()}
    text = f"[OK] {label} is valid on {frame.name or args.frame}" if valid else \
        f"[FAIL] {label} is not valid: {result.describe()}"
    if first is not None:
        data["recorded"] = True
        data["first_witness"] = first.to_dict()
        text += f"\n  (recorded witness; first in enumeration order: {first.describe()})"
    _emit(args, data, text)
    return EXIT_OK if valid else EXIT_FAILED


def cmd_check_proof(args: argparse.Namespace) -> int:
    """Check one proof file against the registry the bundled corpus builds"""
    try:
        proof = load_proof(args.file)
        catalog = load_catalog()
        verifier = CorpusVerifier(catalog)
        verifier.run_proofs()
        report = check_proof(proof, catalog.systems, verifier.registry.copy(), args.system)
    except (ValueError, OSError) as e:
        logger.error(f"[ERROR] {e}")
        return EXIT_USAGE
    _emit(args, report.to_dict(), report.format_text(args.unicode))
    return EXIT_OK if report.accepted else EXIT_FAILED


def cmd_corpus_verify(args: argparse.Namespace) -> int:
    """Run every corpus verification stage"""
    try:
        catalog = load_catalog(args.directory)
        report = verify_corpus(catalog, halt=not args.keep_going)
    except (ValueError, OSError) as e:
        logger.error(f"[ERROR] {e}")
        return EXIT_USAGE
    _emit(args, report.to_dict(), report.format_text(args.unicode))
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_find_countermodel(args: argparse.Namespace) -> int:
    """Search for the smallest frame meeting the conditions on which the target fails"""
    try:
        spec = SearchSpec(
            conditions=tuple(parse_condition_list(args.conditions)),
            target=_schema(args.target),
            max_worlds=args.max_worlds if args.max_worlds is not None else config.max_worlds,
            budget=args.budget if args.budget is not None else config.search_budget,
            seed=args.seed,
        )
    except (ValueError, OSError) as e:
        logger.error(f"[ERROR] {e}")
        return EXIT_USAGE

    outcome = find_countermodel(spec)
    data = outcome.to_dict()
    if isinstance(outcome, Found):
        verification = verify_countermodel(outcome.frame, spec.conditions, spec.target)
        data["verified"] = verification.ok
        text = "\n".join([
            f"Found a {outcome.size}-world countermodel to {spec.target.name} "
            f"after {outcome.nodes} nodes",
            f"witness: {outcome.witness.describe()}",
            _frame_table(outcome.frame),
        ])
        if args.out:
            try:
                outcome.save(args.out)
            except OSError as e:
                logger.error(f"[ERROR] Could not write {args.out}: {e}")
                return EXIT_USAGE
            logger.info(f"[OK] Countermodel written to {args.out}")
        _emit(args, data, text)
        return EXIT_OK if verification.ok else EXIT_FAILED

    text = (f"No countermodel up to {spec.max_worlds} worlds ({outcome.nodes} nodes)"
            if outcome.status == "exhausted"
            else f"Budget of {spec.budget} nodes exceeded")
    _emit(args, data, text)
    return EXIT_FAILED


def cmd_correspondence(args: argparse.Namespace) -> int:
    """Compare frame conditions with their schemas over enumerated or sampled frames"""
    samples = args.samples
    if samples is None and args.size > EXHAUSTIVE_LIMIT:
        samples = config.correspondence_samples
    seed = args.seed if args.seed is not None else config.correspondence_seed
    try:
        catalog = load_catalog()
        if args.condition:
            if not args.schema:
                raise ValueError("--condition needs --schema")
            background = parse_condition_list(args.background) if args.background else []
            runs = [(args.condition, _schema(args.schema), background)]
        else:
            runs = [(c.condition, c.schema, list(c.background)) for c in catalog.correspondences]
        reports = [
            correspondence_check(args.size, condition, schema, background, samples, seed)
            for condition, schema, background in runs
        ]
    except (ValueError, OSError) as e:
        logger.error(f"[ERROR] {e}")
        return EXIT_USAGE

    lines = []
    for r in reports:
        status = "[OK]" if r.ok else "[FAIL]"
        background = f" given {','.join(r.background)}" if r.background else ""
        lines.append(f"{status} ({r.condition}) ~ {r.schema}{background}: {r.mode}, "
                     f"{r.frames_checked} frames, {len(r.violations)} violations")
        for v in r.violations[:3]:
            lines.append(f"    condition {'holds' if v.condition_holds else 'fails'}, "
                         f"schema {'valid' if v.schema_valid else 'invalid'}")
    ok = all(r.ok for r in reports)
    _emit(args, {"ok": ok, "reports": [r.to_dict() for r in reports]}, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAILED


def cmd_config(args: argparse.Namespace) -> int:
    """Validate configuration"""
    summary = config.get_summary()
    validation = summary.pop("validation")
    lines = ["=== Configuration ==="]
    lines += [f"{key}: {value}" for key, value in summary.items()]
    lines.append("=== Configuration Validation ===")
    for key, value in validation.items():
        status = "✓" if value else "✗"
        lines.append(f"{status} {key}: {value}")
    _emit(args, {"settings": summary, "validation": validation}, "\n".join(lines))
    return EXIT_OK if validation.get("valid") else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="condlogic",
        description="Conditional logic workbench CLI",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  condlogic parse "(p>r)&(q>r)->(p|q>r)" --unicode
  condlogic check-frame builtin:lewis-g --conditions id,mod,cv,cso,cent
  condlogic validate builtin:lewis-g --schema CA
  condlogic check-proof proofs/sda_strengthening.json
  condlogic corpus verify
  condlogic find-countermodel --conditions id,mod,cv,cso,cent --target CA --max-worlds 4 --seed 7
  condlogic correspondence --size 2
        """
    )
    parser.add_argument('--json', action='store_true', help='Print machine-readable JSON')
    parser.add_argument('--quiet', action='store_true',
                        help='Only warnings in the log and no report body')
    parser.add_argument(
        '--log-level',
        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'],
        default=None,
        help=f'Log level (default: {config.log_level})'
    )
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('parse', help='Parse and pretty-print a formula')
    p.add_argument('formula')
    p.add_argument('--unicode', action='store_true', help='Print with ¬ ∧ ∨ → ↔')
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser('check-frame', help='Check frame conditions')
    p.add_argument('frame', help='builtin:NAME or a frame JSON file')
    p.add_argument('--conditions', required=True, help='Comma-separated condition names')
    p.set_defaults(func=cmd_check_frame)

    p = sub.add_parser('validate', help='Check validity of a schema or formula on a frame')
    p.add_argument('frame', help='builtin:NAME or a frame JSON file')
    target = p.add_mutually_exclusive_group(required=True)
    target.add_argument('--schema', help='Catalog schema name')
    target.add_argument('--formula', help='Formula text')
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser('check-proof', help='Check a proof file')
    p.add_argument('file')
    p.add_argument('--system', help='Check under this system instead of the one the proof names')
    p.add_argument('--unicode', action='store_true')
    p.set_defaults(func=cmd_check_proof)

    corpus = sub.add_parser('corpus', help='Corpus operations')
    corpus_sub = corpus.add_subparsers(dest='corpus_command', required=True)
    p = corpus_sub.add_parser('verify', help='Verify frames, validity, proofs and soundness')
    p.add_argument('directory', nargs='?', default=None,
                   help='Corpus data directory (default: CORPUS_DIR or the bundled data)')
    p.add_argument('--keep-going', action='store_true', help='Run every stage even after a failure')
    p.add_argument('--unicode', action='store_true')
    p.set_defaults(func=cmd_corpus_verify)

    p = sub.add_parser('find-countermodel', help='Search for a countermodel')
    p.add_argument('--conditions', required=True, help='Comma-separated condition names')
    p.add_argument('--target', required=True, help='Catalog schema name or schema text')
    p.add_argument('--max-worlds', type=int, default=None,
                   help=f'Largest frame size (default: {config.max_worlds})')
    p.add_argument('--budget', type=int, default=None,
                   help=f'Node budget (default: {config.search_budget})')
    p.add_argument('--seed', type=int, default=None, help='Shuffle value order with this seed')
    p.add_argument('--out', help='Write the countermodel as frame JSON')
    p.set_defaults(func=cmd_find_countermodel)

    p = sub.add_parser('correspondence', help='Check condition/schema correspondences')
    p.add_argument('--size', type=int, default=2, help='Frame size (default: 2)')
    p.add_argument('--condition', help='Condition name (default: every cataloged pair)')
    p.add_argument('--schema', help='Schema name or text paired with --condition')
    p.add_argument('--background', help='Comma-separated conditions frames must satisfy')
    p.add_argument('--samples', type=int, default=None,
                   help='Sample this many frames instead of enumerating')
    p.add_argument('--seed', type=int, default=None, help='Sampling seed')
    p.set_defaults(func=cmd_correspondence)

    p = sub.add_parser('config', help='Validate configuration')
    p.set_defaults(func=cmd_config)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main CLI entry point"""
    parser = build_parser()
    args = parser.parse_args(argv)

    level = "WARNING" if args.quiet else (args.log_level or config.log_level)
    setup_logging(level, config.log_file)

    return args.func(args)


if __name__ == '__main__':
    sys.exit(main())

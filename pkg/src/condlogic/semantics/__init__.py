"""Selection-function frames, truth-set evaluation, frame conditions and validity."""

from .conditions import (
    CONDITION_NAMES, CONDITIONS, FrameCondition, check_condition, condition_instance_fails,
    get_condition, parse_condition_list,
)
from .correspondence import (
    CorrespondenceReport, CorrespondenceViolation, correspondence_check, enumerate_frames,
    sample_frames,
)
from .evaluation import UnboundVariableError, compile_formula, evaluate_mask, truth_set
from .frames import (
    FrameLoadError, Model, SelectionFrame, Witness, builtin_frame, builtin_names, load_frame,
    save_frame,
)
from .validity import (
    formula_valid_on_frame, rule_preserved_on_frame, schema_valid_on_frame, witness_holds,
)

__all__ = [
    "SelectionFrame", "Model", "Witness", "FrameLoadError",
    "builtin_frame", "builtin_names", "load_frame", "save_frame",
    "compile_formula", "evaluate_mask", "truth_set", "UnboundVariableError",
    "FrameCondition", "CONDITIONS", "CONDITION_NAMES", "get_condition",
    "parse_condition_list", "check_condition", "condition_instance_fails",
    "formula_valid_on_frame", "schema_valid_on_frame", "witness_holds",
    "rule_preserved_on_frame",
    "correspondence_check", "CorrespondenceReport", "CorrespondenceViolation",
    "enumerate_frames", "sample_frames",
]

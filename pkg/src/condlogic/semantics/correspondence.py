"""
Correspondence checks between frame conditions and schemas

For every frame of a given size (exhaustively for sizes up to 2, by seeded
sampling above that) the condition holds exactly when the schema is valid.
"""

import itertools
import logging
import random
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, Iterator, List, Optional, Sequence, Union

from ..formula import Formula, Schema, render
from .conditions import check_condition, get_condition
from .frames import SelectionFrame, Witness
from .validity import schema_valid_on_frame

logger = logging.getLogger(__name__)

EXHAUSTIVE_LIMIT = 2
MAX_SIZE = 5


@dataclass
class CorrespondenceViolation:
    frame: SelectionFrame
    condition_holds: bool
    schema_valid: bool
    witness: Optional[Witness] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "frame": self.frame.to_dict(),
            "condition_holds": self.condition_holds,
            "schema_valid": self.schema_valid,
            "witness": self.witness.to_dict() if self.witness else None,
        }


@dataclass
class CorrespondenceReport:
    size: int
    condition: str
    schema: str
    mode: str
    background: List[str] = field(default_factory=list)
    frames_checked: int = 0
    frames_skipped: int = 0
    condition_frames: int = 0
    violations: List[CorrespondenceViolation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> Dict[str, Any]:
        return {
            "size": self.size,
            "condition": self.condition,
            "schema": self.schema,
            "mode": self.mode,
            "background": self.background,
            "frames_checked": self.frames_checked,
            "frames_skipped": self.frames_skipped,
            "condition_frames": self.condition_frames,
            "ok": self.ok,
            "violations": [v.to_dict() for v in self.violations],
        }


def _domains(size: int, restrict_id: bool, centred: bool = False) -> List[List[int]]:
    full = (1 << size) - 1
    domains = []
    for i in range(size):
        for x in range(full + 1):
            if centred and x >> i & 1:
                domains.append([1 << i])
                continue
            bound = x if restrict_id else full
            domains.append([v for v in range(full + 1) if not v & ~bound])
    return domains


def _frame_from_values(size: int, values: Sequence[int]) -> SelectionFrame:
    width = 1 << size
    table = tuple(tuple(values[i * width:(i + 1) * width]) for i in range(size))
    return SelectionFrame(worlds=tuple(str(i) for i in range(size)), table=table)


def enumerate_frames(size: int, restrict_id: bool = False,
                     centred: bool = False) -> Iterator[SelectionFrame]:
    """
    Every selection function on `size` worlds, in lexicographic table order.

    `restrict_id` keeps g(i,X) ⊆ X and `centred` fixes g(i,X) = {i} for
    i ∈ X, so only frames meeting (id) or (cent) are produced.
    """
    for values in itertools.product(*_domains(size, restrict_id, centred)):
        yield _frame_from_values(size, values)


def sample_frames(size: int, count: int, seed: int,
                  restrict_id: bool = False) -> Iterator[SelectionFrame]:
    rng = random.Random(seed)
    domains = _domains(size, restrict_id)
    for _ in range(count):
        yield _frame_from_values(size, [rng.choice(d) for d in domains])


def correspondence_check(size: int, condition: str, schema: Union[Schema, Formula],
                         background: Iterable[str] = (), samples: Optional[int] = None,
                         seed: int = 0, max_violations: int = 10) -> CorrespondenceReport:
    """
    Compare check_condition with schema_valid_on_frame frame by frame.

    Frames failing any background condition are skipped. Exhaustive mode is
    used for sizes up to 2 unless `samples` is given; larger sizes need samples.
    """
    cond = get_condition(condition)
    background = [get_condition(b).name for b in background]
    if not 1 <= size <= MAX_SIZE:
        raise ValueError(f"Frame size must be 1..{MAX_SIZE}, got {size}")
    if samples is None and size > EXHAUSTIVE_LIMIT:
        raise ValueError(
            f"Exhaustive correspondence is limited to size {EXHAUSTIVE_LIMIT}; pass samples"
        )
    name = schema.name if isinstance(schema, Schema) else render(schema)
    restrict_id = "id" in background
    if samples is None:
        mode = "exhaustive"
        frames = enumerate_frames(size, restrict_id)
    else:
        mode = f"sampled({samples}, seed={seed})"
        frames = sample_frames(size, samples, seed, restrict_id)
    report = CorrespondenceReport(size=size, condition=cond.name, schema=name, mode=mode,
                                  background=background)
    logger.info(f"Correspondence ({cond.name}) ~ {name}: size {size}, {mode}")

    for frame in frames:
        if any(check_condition(frame, b) is not True for b in background):
            report.frames_skipped += 1
            continue
        report.frames_checked += 1
        holds = check_condition(frame, cond) is True
        validity = schema_valid_on_frame(frame, schema)
        valid = validity is True
        if holds:
            report.condition_frames += 1
        if holds != valid:
            report.violations.append(CorrespondenceViolation(
                frame=frame, condition_holds=holds, schema_valid=valid,
                witness=None if valid else validity,
            ))
            if len(report.violations) >= max_violations:
                logger.warning(f"[FAIL] stopping after {max_violations} violations")
                break

    status = "[OK]" if report.ok else "[FAIL]"
    logger.info(f"{status} {report.frames_checked} frames checked, "
                f"{len(report.violations)} violations")
    return report

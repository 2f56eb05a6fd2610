"""
Finite selection-function frames and models

A frame over n worlds stores subsets of worlds as n-bit masks (world i is
bit i, in declared order). The selection function is a total table indexed
by world and by subset mask, including the empty set.
"""

import json
import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

logger = logging.getLogger(__name__)

BUILTIN_PREFIX = "builtin:"


class FrameLoadError(ValueError):
    """Raised for malformed frame files or unknown built-in frame names"""


@dataclass(frozen=True)
class SelectionFrame:
    """A finite world set with a total selection function g(w, X)"""
    worlds: Tuple[str, ...]
    table: Tuple[Tuple[int, ...], ...]
    name: str = ""

    def __post_init__(self):
        n = len(self.worlds)
        if n == 0:
            raise FrameLoadError("A frame needs at least one world")
        if len(set(self.worlds)) != n:
            raise FrameLoadError(f"Duplicate world identifiers in {self.worlds}")
        if len(self.table) != n or any(len(row) != 1 << n for row in self.table):
            raise FrameLoadError("Selection table must have one row of 2^n entries per world")
        full = (1 << n) - 1
        for row in self.table:
            for out in row:
                if out & ~full:
                    raise FrameLoadError("Selection value outside the world set")

    @property
    def size(self) -> int:
        return len(self.worlds)

    @property
    def full(self) -> int:
        return (1 << len(self.worlds)) - 1

    def index(self, world: str) -> int:
        try:
            return self.worlds.index(world)
        except ValueError:
            raise FrameLoadError(f"Unknown world '{world}'") from None

    def mask(self, members: Iterable[str]) -> int:
        result = 0
        for w in members:
            result |= 1 << self.index(w)
        return result

    def members(self, mask: int) -> FrozenSet[str]:
        return frozenset(w for i, w in enumerate(self.worlds) if mask >> i & 1)

    def ordered(self, mask: int) -> List[str]:
        return [w for i, w in enumerate(self.worlds) if mask >> i & 1]

    def select(self, world: Union[int, str], subset: int) -> int:
        i = world if isinstance(world, int) else self.index(world)
        return self.table[i][subset]

    def selection(self, world: str, members: Iterable[str]) -> FrozenSet[str]:
        """g(world, X) with X and the result given as world identifiers"""
        return self.members(self.select(world, self.mask(members)))

    def conditional(self, antecedent: int, consequent: int) -> int:
        """Truth set of A>B from the truth sets of A and B"""
        outside = ~consequent
        result = 0
        for i, row in enumerate(self.table):
            if not row[antecedent] & outside:
                result |= 1 << i
        return result

    def to_dict(self) -> Dict[str, Any]:
        entries = []
        for i, w in enumerate(self.worlds):
            for subset in range(1 << self.size):
                entries.append({
                    "w": w,
                    "set": self.ordered(subset),
                    "out": self.ordered(self.table[i][subset]),
                })
        data: Dict[str, Any] = {"worlds": list(self.worlds), "selection": entries}
        if self.name:
            data["name"] = self.name
        return data

    @classmethod
    def from_function(cls, worlds: Sequence[str],
                      fn: Callable[[int, int, int], int], name: str = "") -> "SelectionFrame":
        """Build a frame from fn(world_index, subset_mask, full_mask) -> mask"""
        n = len(worlds)
        full = (1 << n) - 1
        table = tuple(
            tuple(fn(i, subset, full) for subset in range(1 << n))
            for i in range(n)
        )
        return cls(worlds=tuple(worlds), table=table, name=name)

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], source: str = "<frame>") -> "SelectionFrame":
        """
        Load the JSON frame format.

        Every (world, subset) pair must be listed exactly once.
        """
        if "builtin" in data:
            return builtin_frame(str(data["builtin"]))
        try:
            worlds = tuple(str(w) for w in data["worlds"])
            entries = data["selection"]
        except (KeyError, TypeError) as e:
            raise FrameLoadError(f"{source}: missing field {e}") from e
        n = len(worlds)
        if n == 0 or len(set(worlds)) != n:
            raise FrameLoadError(f"{source}: worlds must be non-empty and distinct")
        position = {w: i for i, w in enumerate(worlds)}

        def to_mask(items, what: str) -> int:
            result = 0
            for w in items:
                if str(w) not in position:
                    raise FrameLoadError(f"{source}: unknown world '{w}' in {what}")
                result |= 1 << position[str(w)]
            return result

        table: List[List[Optional[int]]] = [[None] * (1 << n) for _ in range(n)]
        for k, entry in enumerate(entries):
            try:
                w, subset, out = str(entry["w"]), entry["set"], entry["out"]
            except (KeyError, TypeError) as e:
                raise FrameLoadError(f"{source}: selection entry {k} lacks {e}") from e
            if w not in position:
                raise FrameLoadError(f"{source}: entry {k} names unknown world '{w}'")
            x = to_mask(subset, f"entry {k}")
            if table[position[w]][x] is not None:
                raise FrameLoadError(f"{source}: duplicate entry for g({w}, {sorted(subset)})")
            table[position[w]][x] = to_mask(out, f"entry {k}")

        missing = [(worlds[i], x) for i in range(n) for x in range(1 << n) if table[i][x] is None]
        if missing:
            w, x = missing[0]
            raise FrameLoadError(
                f"{source}: {len(missing)} selection entries missing, first g({w}, mask {x})"
            )
        return cls(worlds=worlds, table=tuple(tuple(row) for row in table),
                   name=str(data.get("name", "")))


@dataclass(frozen=True)
class Model:
    """A frame with a valuation of propositional variables"""
    frame: SelectionFrame
    valuation: Mapping[str, FrozenSet[str]] = field(default_factory=dict)

    def __post_init__(self):
        worlds = set(self.frame.worlds)
        for name, members in self.valuation.items():
            if not set(members) <= worlds:
                raise ValueError(f"Valuation of {name} leaves the world set")


@dataclass(frozen=True)
class Witness:
    """
    A world and an assignment of subsets that falsify a condition or schema.

    For frame conditions the assignment keys are X and Y; for schemas the
    metavariables; for formulas the propositional variables.
    """
    world: str
    assignment: Mapping[str, FrozenSet[str]]
    subject: str
    detail: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {
            "world": self.world,
            "assignment": {k: sorted(v) for k, v in self.assignment.items()},
            "subject": self.subject,
            "detail": self.detail,
        }

    def describe(self) -> str:
        parts = ", ".join(
            f"{k}={{{','.join(sorted(v))}}}" for k, v in self.assignment.items()
        )
        text = f"{self.subject} fails at world {self.world} with {parts}"
        return f"{text} ({self.detail})" if self.detail else text


# Built-in frames

def _lewis_g(i: int, x: int, full: int) -> int:
    """The four-world frame where VCn holds and CA fails: A={1,2}"""
    a = 0b0110
    if x == a and i == 0:
        return 0b0010
    if x >> i & 1:
        return 1 << i
    return x


def _material(i: int, x: int, full: int) -> int:
    return x & (1 << i)


def _identity(i: int, x: int, full: int) -> int:
    return x


_SIZED_BUILTINS: Dict[str, Callable[[int, int, int], int]] = {
    "material": _material,
    "identity": _identity,
}


def builtin_names() -> List[str]:
    return ["lewis-g"] + [f"{name}-N" for name in _SIZED_BUILTINS]


def builtin_frame(name: str) -> SelectionFrame:
    """
    Construct a built-in frame: lewis-g, material-N or identity-N.

    Raises:
        FrameLoadError: for an unknown name or a size outside 1..8.
    """
    if name.startswith(BUILTIN_PREFIX):
        name = name[len(BUILTIN_PREFIX):]
    if name == "lewis-g":
        return SelectionFrame.from_function(["0", "1", "2", "3"], _lewis_g, name="lewis-g")
    match = re.fullmatch(r"([a-z]+)-(\d+)", name)
    if match and match.group(1) in _SIZED_BUILTINS:
        size = int(match.group(2))
        if not 1 <= size <= 8:
            raise FrameLoadError(f"Built-in frame size must be 1..8, got {size}")
        worlds = [str(i) for i in range(size)]
        return SelectionFrame.from_function(worlds, _SIZED_BUILTINS[match.group(1)], name=name)
    raise FrameLoadError(
        f"Unknown built-in frame '{name}' (known: {', '.join(builtin_names())})"
    )


def load_frame(spec: Union[str, Path]) -> SelectionFrame:
    """Load `builtin:NAME` or a frame JSON file"""
    text = str(spec)
    if text.startswith(BUILTIN_PREFIX):
        return builtin_frame(text)
    path = Path(text)
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as e:
        raise FrameLoadError(f"{path}: invalid JSON ({e})") from e
    frame = SelectionFrame.from_dict(data, source=str(path))
    logger.debug(f"Loaded frame {frame.name or path} with {frame.size} worlds")
    return frame


def save_frame(frame: SelectionFrame, path: Union[str, Path],
               extra: Optional[Mapping[str, Any]] = None) -> Path:
    path = Path(path)
    data = frame.to_dict()
    if extra:
        data.update(extra)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=2)
    return path

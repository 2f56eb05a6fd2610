"""
Frame conditions on selection functions

Each condition is quantified over a world i and one or two subsets X, Y.
Instances are evaluated through a lookup g(i, X) that may answer None for
an undecided entry, so the same code checks complete frames and the partial
frames built during countermodel search.
"""

import logging
from abc import ABC, abstractmethod
from typing import Callable, Dict, Iterator, List, Optional, Tuple, Union

from .frames import SelectionFrame, Witness

logger = logging.getLogger(__name__)

Lookup = Callable[[int, int], Optional[int]]


def _subsets(mask: int) -> Iterator[int]:
    """All submasks of mask, ascending"""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


class FrameCondition(ABC):
    """Base class for a named frame condition"""

    name: str = ""
    arity: int = 2
    description: str = ""

    @abstractmethod
    def instance(self, g: Lookup, i: int, x: int, y: int, full: int) -> Optional[bool]:
        """True/False for the instance (i, X, Y); None if it needs an undecided entry"""

    def touching(self, x0: int, full: int) -> Iterator[Tuple[int, int]]:
        """Instances (X, Y) that read the entry g(i, x0)"""
        if self.arity == 1:
            yield x0, 0
            return
        for y in range(full + 1):
            yield x0, y
            if y != x0:
                yield y, x0

    def pairs(self, full: int) -> Iterator[Tuple[int, int]]:
        """All (X, Y) in binary-counting order"""
        for x in range(full + 1):
            if self.arity == 1:
                yield x, 0
            else:
                for y in range(full + 1):
                    yield x, y


class IdCondition(FrameCondition):
    name = "id"
    arity = 1
    description = "g(i,X) ⊆ X"

    def instance(self, g, i, x, y, full):
        gx = g(i, x)
        return None if gx is None else not gx & ~x


class ModCondition(FrameCondition):
    name = "mod"
    description = "g(i,X) = ∅ ⟹ g(i,Y) ∩ X = ∅"

    def instance(self, g, i, x, y, full):
        gx = g(i, x)
        if gx is None:
            return None
        if gx:
            return True
        gy = g(i, y)
        return None if gy is None else not gy & x


class ModPrimeCondition(FrameCondition):
    name = "mod_prime"
    description = "g(i,W−X) = ∅ ⟹ g(i,Y) ∩ (W−X) = ∅"

    def instance(self, g, i, x, y, full):
        complement = full & ~x
        gc = g(i, complement)
        if gc is None:
            return None
        if gc:
            return True
        gy = g(i, y)
        return None if gy is None else not gy & complement

    def touching(self, x0, full):
        for y in range(full + 1):
            yield full & ~x0, y
            yield y, x0


class CvCondition(FrameCondition):
    name = "cv"
    description = "g(i,X) ∩ Y ≠ ∅ ⟹ g(i,X∩Y) ⊆ g(i,X)"

    def instance(self, g, i, x, y, full):
        gx = g(i, x)
        if gx is None:
            return None
        if not gx & y:
            return True
        gxy = g(i, x & y)
        return None if gxy is None else not gxy & ~gx

    def touching(self, x0, full):
        for y in range(full + 1):
            yield x0, y
        # instances where x0 = X ∩ Y
        rest = full & ~x0
        for extra_x in _subsets(rest):
            for extra_y in _subsets(rest & ~extra_x):
                yield x0 | extra_x, x0 | extra_y


class CsoCondition(FrameCondition):
    name = "cso"
    description = "g(i,X) ⊆ Y and g(i,Y) ⊆ X ⟹ g(i,X) = g(i,Y)"

    def instance(self, g, i, x, y, full):
        gx = g(i, x)
        if gx is not None and gx & ~y:
            return True
        gy = g(i, y)
        if gy is not None and gy & ~x:
            return True
        if gx is None or gy is None:
            return None
        return gx == gy


class CentCondition(FrameCondition):
    name = "cent"
    arity = 1
    description = "i ∈ X ⟹ g(i,X) = {i}"

    def instance(self, g, i, x, y, full):
        if not x >> i & 1:
            return True
        gx = g(i, x)
        return None if gx is None else gx == 1 << i


class CaCondition(FrameCondition):
    name = "ca"
    description = "g(i,X∪Y) ⊆ g(i,X) ∪ g(i,Y)"

    def instance(self, g, i, x, y, full):
        gx, gy, gxy = g(i, x), g(i, y), g(i, x | y)
        if gx is None or gy is None or gxy is None:
            return None
        return not gxy & ~(gx | gy)

    def touching(self, x0, full):
        yield from super().touching(x0, full)
        # instances where x0 = X ∪ Y
        for x in _subsets(x0):
            for shared in _subsets(x):
                yield x, (x0 & ~x) | shared


class SdaCondition(CaCondition):
    name = "sda"
    description = "g(i,X) ∪ g(i,Y) ⊆ g(i,X∪Y)"

    def instance(self, g, i, x, y, full):
        gx, gy, gxy = g(i, x), g(i, y), g(i, x | y)
        if gx is not None and gxy is not None and gx & ~gxy:
            return False
        if gy is not None and gxy is not None and gy & ~gxy:
            return False
        if gx is None or gy is None or gxy is None:
            return None
        return True


CONDITIONS: Dict[str, FrameCondition] = {
    c.name: c for c in (
        IdCondition(), ModCondition(), ModPrimeCondition(), CvCondition(),
        CsoCondition(), CentCondition(), CaCondition(), SdaCondition(),
    )
}

CONDITION_NAMES: Tuple[str, ...] = tuple(CONDITIONS)


def get_condition(name: Union[str, FrameCondition]) -> FrameCondition:
    if isinstance(name, FrameCondition):
        return name
    try:
        return CONDITIONS[name]
    except KeyError:
        raise ValueError(
            f"Unknown frame condition '{name}' (known: {', '.join(CONDITION_NAMES)})"
        ) from None


def parse_condition_list(text: str) -> List[str]:
    """Split a comma-separated list, rejecting unknown names"""
    names = [part.strip() for part in text.split(",") if part.strip()]
    for name in names:
        get_condition(name)
    return names


def _lookup(frame: SelectionFrame) -> Lookup:
    table = frame.table
    return lambda i, x: table[i][x]


def _witness(frame: SelectionFrame, cond: FrameCondition, i: int, x: int, y: int) -> Witness:
    assignment = {"X": frame.members(x)}
    if cond.arity == 2:
        assignment["Y"] = frame.members(y)
    outputs = [f"g({frame.worlds[i]},X)={{{','.join(frame.ordered(frame.table[i][x]))}}}"]
    if cond.arity == 2:
        outputs.append(f"g({frame.worlds[i]},Y)={{{','.join(frame.ordered(frame.table[i][y]))}}}")
        if cond.name in ("ca", "sda"):
            outputs.append(
                f"g({frame.worlds[i]},X∪Y)={{{','.join(frame.ordered(frame.table[i][x | y]))}}}"
            )
        if cond.name == "cv":
            outputs.append(
                f"g({frame.worlds[i]},X∩Y)={{{','.join(frame.ordered(frame.table[i][x & y]))}}}"
            )
    return Witness(world=frame.worlds[i], assignment=assignment, subject=f"({cond.name})",
                   detail="; ".join(outputs))


def condition_instance_fails(frame: SelectionFrame, name: str, world: str,
                             x: int, y: int = 0) -> bool:
    cond = get_condition(name)
    return cond.instance(_lookup(frame), frame.index(world), x, y, frame.full) is False


def check_condition(frame: SelectionFrame, name: Union[str, FrameCondition]) -> Union[bool, Witness]:
    """
    Exhaustively check a condition.

    Worlds are scanned in declared order and (X, Y) in binary-counting order,
    so the returned Witness is the first failure in that order.
    """
    cond = get_condition(name)
    g = _lookup(frame)
    full = frame.full
    for i in range(frame.size):
        for x, y in cond.pairs(full):
            if cond.instance(g, i, x, y, full) is False:
                witness = _witness(frame, cond, i, x, y)
                logger.debug(f"[FAIL] {witness.describe()}")
                return witness
    return True

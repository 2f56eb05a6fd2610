"""
Budgeted backtracking search for finite countermodels

A countermodel is a selection frame satisfying every requested frame
condition on which the target schema fails. Sizes are tried in increasing
order. The failure is anchored at world 0 under a fixed assignment of
subsets to the target's leaves; the selection table is then filled entry
by entry, pruning as soon as a requested condition is violated on decided
entries or the target is already forced true at world 0.
"""

import itertools
import logging
import random
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple, Union

from ..core.config import WORLD_CAP
from ..formula import (
    And, Cond, Formula, Iff, Imp, MetaVar, Not, Or, Schema, Var, metavariables, variables,
    walk,
)
from ..semantics import (
    SelectionFrame, Witness, check_condition, enumerate_frames, get_condition,
    schema_valid_on_frame, save_frame,
)

logger = logging.getLogger(__name__)

# Conditions enforced through value domains rather than by pruning
DOMAIN_CONDITIONS = ("id", "cent")


@dataclass(frozen=True)
class SearchSpec:
    conditions: Tuple[str, ...]
    target: Schema
    max_worlds: int
    budget: int
    seed: Optional[int] = None

    def __post_init__(self):
        names = tuple(get_condition(c).name for c in self.conditions)
        object.__setattr__(self, "conditions", names)
        if self.budget <= 0:
            raise ValueError(f"Search budget must be positive, got {self.budget}")
        if not 1 <= self.max_worlds <= WORLD_CAP:
            raise ValueError(f"max_worlds must be 1..{WORLD_CAP}, got {self.max_worlds}")


@dataclass
class SearchOutcome:
    nodes: int

    status = ""

    def to_dict(self) -> Dict[str, Any]:
        return {"status": self.status, "nodes": self.nodes}


@dataclass
class Found(SearchOutcome):
    frame: SelectionFrame = None  # type: ignore[assignment]
    witness: Witness = None  # type: ignore[assignment]
    size: int = 0

    status = "found"

    def to_dict(self) -> Dict[str, Any]:
        data = super().to_dict()
        data.update(self.frame.to_dict())
        data["size"] = self.size
        data["witness"] = self.witness.to_dict()
        return data

    def save(self, path) -> None:
        save_frame(self.frame, path, extra={"witness": self.witness.to_dict()})


@dataclass
class Exhausted(SearchOutcome):
    status = "exhausted"


@dataclass
class BudgetExceeded(SearchOutcome):
    status = "budget_exceeded"


@dataclass
class Verification:
    """Outcome of verify_countermodel; falsy when any reason is recorded"""
    reasons: List[str] = field(default_factory=list)
    witness: Optional[Witness] = None

    @property
    def ok(self) -> bool:
        return not self.reasons

    def __bool__(self) -> bool:
        return self.ok


def verify_countermodel(frame: SelectionFrame, conditions: Sequence[str],
                        target: Union[Schema, Formula]) -> Verification:
    """ok iff every condition holds on frame and the target schema fails on it"""
    result = Verification()
    for name in conditions:
        outcome = check_condition(frame, name)
        if outcome is not True:
            result.reasons.append(f"condition {name} fails: {outcome.describe()}")
    validity = schema_valid_on_frame(frame, target)
    if validity is True:
        result.reasons.append("target valid")
    else:
        result.witness = validity
    return result


def _leaves(body: Formula) -> Tuple[Formula, ...]:
    return tuple(MetaVar(m) for m in sorted(metavariables(body))) + tuple(Var(v) for v in variables(body))


def _three_valued(f: Formula, values: Dict[Formula, int], table: List[List[Optional[int]]],
                  full: int) -> Tuple[int, int]:
    """(known-true, known-false) world masks of f on a partial table"""
    if f in values:
        return values[f], full & ~values[f]
    if isinstance(f, Not):
        t, u = _three_valued(f.operand, values, table, full)
        return u, t
    lt, lf = _three_valued(f.left, values, table, full)
    rt, rf = _three_valued(f.right, values, table, full)
    if isinstance(f, And):
        return lt & rt, lf | rf
    if isinstance(f, Or):
        return lt | rt, lf & rf
    if isinstance(f, Imp):
        return lf | rt, lt & rf
    if isinstance(f, Iff):
        return (lt & rt) | (lf & rf), (lt & rf) | (lf & rt)
    if isinstance(f, Cond):
        if lt | lf != full:
            return 0, 0
        true, false = 0, 0
        for j, row in enumerate(table):
            out = row[lt]
            if out is None:
                continue
            if not out & ~rt:
                true |= 1 << j
            elif out & rf:
                false |= 1 << j
        return true, false
    raise TypeError(f"Unknown formula node: {f!r}")


def _boolean_mask(f: Formula, values: Dict[Formula, int], full: int) -> int:
    true, _ = _three_valued(f, values, [], full)
    return true


class _BudgetHit(Exception):
    pass


class _SizeSearch:
    """Depth-first search over the selection tables of one frame size"""

    def __init__(self, spec: SearchSpec, size: int, nodes: int, rng: Optional[random.Random]):
        self.spec = spec
        self.size = size
        self.full = (1 << size) - 1
        self.nodes = nodes
        self.body = spec.target.body
        self.leaves = _leaves(self.body)
        self.pruning = [get_condition(c) for c in spec.conditions if c not in DOMAIN_CONDITIONS]
        self.domains = self._domains(rng)
        self.anchor_antecedents = self._anchor_antecedents()

    def _domains(self, rng: Optional[random.Random]) -> Dict[Tuple[int, int], List[int]]:
        restrict_id = "id" in self.spec.conditions
        centred = "cent" in self.spec.conditions
        domains = {}
        for i in range(self.size):
            for x in range(self.full + 1):
                if centred and x >> i & 1:
                    values = [1 << i]
                else:
                    bound = x if restrict_id else self.full
                    values = [v for v in range(self.full + 1) if not v & ~bound]
                if rng is not None and len(values) > 1:
                    rng.shuffle(values)
                domains[(i, x)] = values
        return domains

    def _anchor_antecedents(self) -> List[Formula]:
        seen: Dict[Formula, None] = {}
        for node in walk(self.body):
            if isinstance(node, Cond) and not any(isinstance(n, Cond) for n in walk(node.left)):
                seen.setdefault(node.left, None)
        return list(seen)

    def _entry_order(self, values: Dict[Formula, int]) -> List[Tuple[int, int]]:
        """
        Table entries in fill order. The entries g(0, X) for the anchor's
        conditional antecedents come first, in first-occurrence order. The
        rest follow world by world, and within a world by |X| and then by
        the binary value of X.
        """
        first: Dict[Tuple[int, int], None] = {}
        for antecedent in self.anchor_antecedents:
            first.setdefault((0, _boolean_mask(antecedent, values, self.full)), None)
        rest = [
            (i, x)
            for i in range(self.size)
            for x in sorted(range(self.full + 1), key=lambda m: (bin(m).count("1"), m))
            if (i, x) not in first
        ]
        return list(first) + rest

    def _expand(self) -> None:
        if self.nodes >= self.spec.budget:
            raise _BudgetHit()
        self.nodes += 1

    def run(self) -> Optional[Found]:
        for anchor in itertools.product(range(self.full + 1), repeat=len(self.leaves)):
            self._expand()
            values = dict(zip(self.leaves, anchor))
            table: List[List[Optional[int]]] = [[None] * (self.full + 1) for _ in range(self.size)]
            if _three_valued(self.body, values, table, self.full)[0] & 1:
                continue
            order = self._entry_order(values)
            found = self._fill(table, order, 0, values)
            if found is not None:
                return found
        return None

    def _violates(self, table: List[List[Optional[int]]], i: int, x0: int) -> bool:
        def g(j: int, x: int) -> Optional[int]:
            return table[j][x]

        for cond in self.pruning:
            for x, y in cond.touching(x0, self.full):
                if cond.instance(g, i, x, y, self.full) is False:
                    return True
        return False

    def _fill(self, table: List[List[Optional[int]]], order: List[Tuple[int, int]], k: int,
              values: Dict[Formula, int]) -> Optional[Found]:
        if k == len(order):
            frame = SelectionFrame(worlds=tuple(str(i) for i in range(self.size)),
                                   table=tuple(tuple(row) for row in table))  # type: ignore[arg-type]
            verdict = verify_countermodel(frame, self.spec.conditions, self.spec.target)
            if verdict.ok:
                return Found(nodes=self.nodes, frame=frame, witness=verdict.witness, size=self.size)
            logger.warning(f"[FAIL] leaf frame rejected by verifier: {verdict.reasons[0]}")
            return None

        i, x = order[k]
        for value in self.domains[(i, x)]:
            self._expand()
            table[i][x] = value
            if not self._violates(table, i, x) and \
                    not _three_valued(self.body, values, table, self.full)[0] & 1:
                found = self._fill(table, order, k + 1, values)
                if found is not None:
                    return found
            table[i][x] = None
        return None


def find_countermodel(spec: SearchSpec) -> SearchOutcome:
    """
    Search sizes 1..spec.max_worlds for a countermodel.

    Deterministic for a given spec: values are tried in binary order, or in
    an order shuffled once by `random.Random(seed)` when a seed is set.
    """
    rng = random.Random(spec.seed) if spec.seed is not None else None
    nodes = 0
    logger.info(f"Searching for a countermodel to {spec.target.name} under "
                f"{{{', '.join(spec.conditions)}}}, up to {spec.max_worlds} worlds")
    for size in range(1, spec.max_worlds + 1):
        search = _SizeSearch(spec, size, nodes, rng)
        try:
            found = search.run()
        except _BudgetHit:
            logger.info(f"[FAIL] budget of {spec.budget} nodes exhausted at size {size}")
            return BudgetExceeded(nodes=search.nodes)
        nodes = search.nodes
        if found is not None:
            logger.info(f"[OK] countermodel with {size} worlds after {nodes} nodes")
            return found
        logger.debug(f"No countermodel with {size} worlds ({nodes} nodes so far)")
    logger.info(f"[OK] search space exhausted after {nodes} nodes")
    return Exhausted(nodes=nodes)


def enumerate_countermodels(conditions: Sequence[str], target: Union[Schema, Formula],
                            size: int) -> Iterator[SelectionFrame]:
    """
    Unpruned enumeration of every countermodel of one size.

    (id) and (cent) only narrow the value domains, as in the search; every
    other condition and the target are checked on complete frames.
    """
    frames = enumerate_frames(size, restrict_id="id" in conditions, centred="cent" in conditions)
    for frame in frames:
        if all(check_condition(frame, c) is True for c in conditions) \
                and schema_valid_on_frame(frame, target) is not True:
            yield frame

"""
Strict Engine - Innermost-order evaluator for the n-dimensional tarai recurrence
Step budgets, on-stack cycle detection, and a value-keyed memoized variant
"""

import itertools
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from closed_form import f_char
from lazy_engine import EvalStats
from tarai_core import IntSeq, TaraiArgumentError, as_seq, inner_vector

logger = logging.getLogger(__name__)

DEFAULT_STRICT_BUDGET = 1_000_000
DEFAULT_GRID_CAP = 10_000_000

Vector = Tuple[int, ...]


class OutcomeTag(Enum):
    VALUE = "value"
    BUDGET = "budget"
    CYCLE = "cycle"


@dataclass(frozen=True)
class CycleWitness:
    """
    Finite proof of strict non-termination

    ``path`` starts and ends with the repeated vector; consecutive entries are
    one strict expansion step apart. ``repeat_index`` is the call-stack depth
    at which the repeated vector was first entered.
    """
    path: Tuple[IntSeq, ...]
    repeat_index: int

    @property
    def head(self) -> IntSeq:
        return self.path[0]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "path": [seq.to_list() for seq in self.path],
            "repeat_index": self.repeat_index,
        }


@dataclass(frozen=True)
class EvalOutcome:
    tag: OutcomeTag
    stats: EvalStats
    value: Optional[int] = None
    witness: Optional[CycleWitness] = None

    @property
    def is_value(self) -> bool:
        return self.tag is OutcomeTag.VALUE

    def to_dict(self) -> Dict[str, Any]:
        return {
            "outcome": self.tag.value,
            "value": self.value,
            "witness": self.witness.to_dict() if self.witness else None,
            "stats": self.stats.to_dict(),
        }


class _Frame:
    __slots__ = ["vec", "inner", "awaiting_outer"]

    def __init__(self, vec: Vector):
        self.vec = vec
        self.inner: List[int] = []
        self.awaiting_outer = False


class _Abort(Exception):
    def __init__(self, outcome_tag: OutcomeTag, witness: Optional[CycleWitness] = None):
        self.outcome_tag = outcome_tag
        self.witness = witness


_IN_PROGRESS = object()


class StrictEvaluator:
    """
    Innermost-first tarai evaluation over an explicit call stack

    With ``memoize`` the evaluator keeps a value memo for its whole lifetime;
    an entry is marked in progress while its vector is on the stack, so
    meeting a marker is the same event as an on-stack repeat.
    """

    def __init__(self, budget: int = DEFAULT_STRICT_BUDGET, memoize: bool = False):
        if budget <= 0:
            raise TaraiArgumentError(f"strict budget must be positive, got {budget}")
        self.budget = budget
        self.memoize = memoize
        self.memo: Dict[Vector, Any] = {}
        self.logger = logging.getLogger(f"{__name__}.StrictEvaluator")

    def evaluate(self, x: IntSeq) -> EvalOutcome:
        x = as_seq(x).require_arity(3)
        stats = EvalStats()
        stack: List[_Frame] = []
        on_stack: Dict[Vector, int] = {}
        started = time.perf_counter()

        def call(vec: Vector) -> Optional[int]:
            if self.memoize:
                cached = self.memo.get(vec)
                if cached is _IN_PROGRESS:
                    raise _Abort(OutcomeTag.CYCLE, self._witness(stack, on_stack[vec], vec))
                if cached is not None:
                    stats.memo_hits += 1
                    return cached
            elif vec in on_stack:
                raise _Abort(OutcomeTag.CYCLE, self._witness(stack, on_stack[vec], vec))

            if stats.apps_forced >= self.budget:
                raise _Abort(OutcomeTag.BUDGET)
            stats.apps_forced += 1
            stats.apps_created += 1

            if vec[0] <= vec[1]:
                if self.memoize:
                    self.memo[vec] = vec[1]
                return vec[1]

            on_stack[vec] = len(stack)
            stack.append(_Frame(vec))
            if self.memoize:
                self.memo[vec] = _IN_PROGRESS
            if len(stack) > stats.max_force_depth:
                stats.max_force_depth = len(stack)
            return None

        try:
            result = call(x.values)
            n = x.n
            while stack:
                frame = stack[-1]
                if result is not None:
                    if frame.awaiting_outer:
                        stack.pop()
                        del on_stack[frame.vec]
                        if self.memoize:
                            self.memo[frame.vec] = result
                        continue
                    frame.inner.append(result)
                if len(frame.inner) < n:
                    result = call(inner_vector(frame.vec, len(frame.inner)))
                else:
                    frame.awaiting_outer = True
                    result = call(tuple(frame.inner))
        except _Abort as abort:
            if self.memoize:
                for frame in stack:
                    if self.memo.get(frame.vec) is _IN_PROGRESS:
                        del self.memo[frame.vec]
            stats.wall_time = time.perf_counter() - started
            if abort.outcome_tag is OutcomeTag.CYCLE:
                self.logger.debug(f"Strict t{x} re-entered {abort.witness.head} at depth {abort.witness.repeat_index}")
            else:
                self.logger.debug(f"Strict t{x} exhausted its budget of {self.budget} applications")
            return EvalOutcome(tag=abort.outcome_tag, stats=stats, witness=abort.witness)

        stats.wall_time = time.perf_counter() - started
        return EvalOutcome(tag=OutcomeTag.VALUE, stats=stats, value=result)

    @staticmethod
    def _witness(stack: List[_Frame], depth: int, repeat: Vector) -> CycleWitness:
        path = tuple(IntSeq(frame.vec) for frame in stack[depth:]) + (IntSeq(repeat),)
        return CycleWitness(path=path, repeat_index=depth)


def eval_strict(x: IntSeq, budget: int = DEFAULT_STRICT_BUDGET) -> EvalOutcome:
    """Strict evaluation with on-stack cycle detection and no memo"""
    return StrictEvaluator(budget=budget).evaluate(x)


def eval_strict_memo(x: IntSeq, budget: int = DEFAULT_STRICT_BUDGET,
                     evaluator: Optional[StrictEvaluator] = None) -> EvalOutcome:
    """
    Memoized strict evaluation

    Pass ``evaluator`` to share one memo across calls; otherwise a fresh one is used.
    """
    if evaluator is None:
        evaluator = StrictEvaluator(budget=budget, memoize=True)
    return evaluator.evaluate(x)


def replay_step(parent: IntSeq, child: IntSeq) -> bool:
    """
    True iff child is demanded directly by the strict expansion of parent

    The candidates are the n inner vectors and the outer vector, whose entries
    are the closed-form values of the inner calls.
    """
    vec = as_seq(parent).values
    if vec[0] <= vec[1]:
        return False
    target = as_seq(child).values
    inner = [inner_vector(vec, i) for i in range(len(vec))]
    if target in inner:
        return True
    return target == tuple(f_char(IntSeq(z)) for z in inner)


def grid_size(n: int, lo: int, hi: int) -> int:
    if n < 3:
        raise TaraiArgumentError(f"tarai arity must be at least 3, got {n}")
    if lo > hi:
        raise TaraiArgumentError(f"empty range: lo={lo} > hi={hi}")
    return (hi - lo + 1) ** n


def check_grid_cap(n: int, lo: int, hi: int, cap: int) -> int:
    size = grid_size(n, lo, hi)
    if size > cap:
        raise TaraiArgumentError(
            f"grid [{lo},{hi}]^{n} has {size} points, above the cap of {cap}; shrink the range"
        )
    return size


def _divergent_chunk(n: int, lo: int, hi: int, first: int, budget: int, memoize: bool) -> List[Vector]:
    shared = StrictEvaluator(budget=budget, memoize=True) if memoize else None
    found = []
    for rest in itertools.product(range(lo, hi + 1), repeat=n - 1):
        vec = (first,) + rest
        evaluator = shared or StrictEvaluator(budget=budget)
        outcome = evaluator.evaluate(IntSeq(vec))
        if not outcome.is_value:
            found.append(vec)
    return found


def find_divergent(n: int, lo: int, hi: int, budget: int = DEFAULT_STRICT_BUDGET,
                   grid_cap: int = DEFAULT_GRID_CAP, workers: int = 1,
                   memoize: bool = False) -> List[IntSeq]:
    """
    Every x in [lo, hi]^n on which strict evaluation cycles or runs out of budget

    The grid is split by first coordinate; each chunk gets its own evaluator.
    ``memoize`` shares a memo inside a chunk, which is sound for cycle
    detection but lets budget-bound points finish, so keep it off when the
    budget itself is under study.
    """
    size = check_grid_cap(n, lo, hi, grid_cap)
    logger.info(f"Searching {size} points of [{lo},{hi}]^{n} for strict divergence (workers={workers})")

    firsts = list(range(lo, hi + 1))
    if workers <= 1:
        chunks = [_divergent_chunk(n, lo, hi, first, budget, memoize) for first in firsts]
    else:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            futures = [executor.submit(_divergent_chunk, n, lo, hi, first, budget, memoize) for first in firsts]
            chunks = [future.result() for future in futures]

    found = sorted(vec for chunk in chunks for vec in chunk)
    if found:
        logger.warning(f"{len(found)} strictly divergent points in [{lo},{hi}]^{n}")
    return [IntSeq(vec) for vec in found]

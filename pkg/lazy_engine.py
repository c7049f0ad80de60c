"""
Lazy Engine - Call-by-need evaluator for the n-dimensional tarai recurrence
Builds a thunk graph with sharing and forces it with an explicit work stack
"""

import logging
import time
from dataclasses import asdict, dataclass
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Tuple

from tarai_core import IntSeq, TaraiArgumentError, TaraiError, as_seq, checked_decrement, max_value

logger = logging.getLogger(__name__)

DEFAULT_MAX_APPS = 5_000_000
DEFAULT_MAX_DEPTH = 10_000_000


class BudgetExceeded(TaraiError):
    """Evaluation hit its application or depth budget"""

    def __init__(self, message: str, stats: "EvalStats"):
        super().__init__(message)
        self.stats = stats


class BoundViolation(TaraiError):
    """A lazy result exceeded max(x)"""


class NodeKind(Enum):
    LEAF = "leaf"
    DECREMENT = "decrement"
    TARAI_APP = "tarai_app"


@dataclass
class EvalStats:
    """Counters for one evaluation"""
    apps_created: int = 0
    apps_forced: int = 0
    thunks_forced: int = 0
    decrements: int = 0
    cache_hits: int = 0
    memo_hits: int = 0
    max_force_depth: int = 0
    wall_time: float = 0.0

    def counters(self) -> Dict[str, int]:
        """Everything except wall time, for reproducibility comparisons"""
        data = asdict(self)
        data.pop("wall_time")
        return data

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class LazyLimits:
    """
    Caps for one lazy evaluation

    Each created application keeps roughly 300 bytes of arena alive (the node,
    its argument tuple and its decrement thunks), so ``max_apps`` also bounds
    memory: the default stays near 1.5 GB.
    """
    max_apps: int = DEFAULT_MAX_APPS
    max_depth: int = DEFAULT_MAX_DEPTH


@dataclass(frozen=True)
class TraceRecord:
    """One forced application; args is None unless every argument was forced"""
    node: int
    args: Optional[List[int]]
    result: int

    def to_dict(self) -> Dict[str, Any]:
        return {"node": self.node, "args": self.args, "result": self.result}


@dataclass
class LazyResult:
    value: int
    stats: EvalStats


class ThunkNode:
    """
    A deferred computation in the thunk store

    ``cache`` is written exactly once when the node is forced; a LEAF is born forced.
    """

    __slots__ = ["kind", "cache"]

    def __init__(self, kind: NodeKind, cache: Optional[int] = None):
        self.kind = kind
        self.cache = cache

    @property
    def forced(self) -> bool:
        return self.cache is not None

    def __repr__(self) -> str:
        return f"<Leaf {self.cache}>"


class DecrementNode(ThunkNode):
    __slots__ = ["of"]

    def __init__(self, of: int):
        super().__init__(NodeKind.DECREMENT)
        self.of = of

    def __repr__(self) -> str:
        return f"<Decrement of={self.of} cache={self.cache}>"


class AppNode(ThunkNode):
    __slots__ = ["args", "state", "outer"]

    def __init__(self, args: Tuple[int, ...]):
        super().__init__(NodeKind.TARAI_APP)
        self.args = args
        # 0 needs arg1, 1 needs arg2, 2 compare, 3 needs expansion
        self.state = 0
        self.outer: Optional[int] = None

    def __repr__(self) -> str:
        return f"<TaraiApp args={self.args} cache={self.cache}>"


class ThunkStore:
    """
    Arena of thunk nodes private to one evaluation

    Children are always allocated before their parents, so the graph is acyclic.
    Every TaraiApp in one store has the same arity.
    """

    def __init__(self, arity: int, limits: Optional[LazyLimits] = None,
                 on_trace: Optional[Callable[[TraceRecord], None]] = None):
        if arity < 3:
            raise TaraiArgumentError(f"tarai arity must be at least 3, got {arity}")
        self.arity = arity
        self.limits = limits or LazyLimits()
        self.on_trace = on_trace
        self.nodes: List[ThunkNode] = []
        self.stats = EvalStats()
        self.logger = logging.getLogger(f"{__name__}.ThunkStore")

    def node(self, node_id: int) -> ThunkNode:
        try:
            return self.nodes[node_id]
        except IndexError:
            raise TaraiArgumentError(f"unknown thunk id {node_id}")

    def leaf(self, value: int) -> int:
        self.nodes.append(ThunkNode(NodeKind.LEAF, cache=value))
        # leaves are born forced
        self.stats.thunks_forced += 1
        return len(self.nodes) - 1

    def decrement(self, of: int) -> int:
        self.node(of)
        self.nodes.append(DecrementNode(of))
        return len(self.nodes) - 1

    def app(self, args: Tuple[int, ...]) -> int:
        if len(args) != self.arity:
            raise TaraiArgumentError(f"application of arity {len(args)} in a store of arity {self.arity}")
        if self.stats.apps_created >= self.limits.max_apps:
            raise BudgetExceeded(
                f"created-application budget of {self.limits.max_apps} exhausted", self.stats
            )
        self.nodes.append(AppNode(tuple(args)))
        self.stats.apps_created += 1
        return len(self.nodes) - 1

    def _expand(self, node: AppNode) -> int:
        """Build z_i = t(sigma(r^(i-1)(args))) over the shared argument thunks and the outer application"""
        args = node.args
        inner = []
        for i in range(self.arity):
            rotated = args[i:] + args[:i]
            first = self.decrement(rotated[0])
            inner.append(self.app((first,) + rotated[1:]))
        return self.app(tuple(inner))

    def _finish(self, node_id: int, node: ThunkNode, value: int):
        node.cache = value
        self.stats.thunks_forced += 1
        if node.kind is NodeKind.TARAI_APP:
            self.stats.apps_forced += 1
            if self.on_trace is not None:
                arg_values = [self.nodes[a].cache for a in node.args]
                self.on_trace(TraceRecord(
                    node=node_id,
                    args=arg_values if all(v is not None for v in arg_values) else None,
                    result=value,
                ))
        else:
            self.stats.decrements += 1

    def force(self, node_id: int) -> int:
        """
        Force a thunk and return its value

        A cached node returns immediately and only bumps ``cache_hits``.
        """
        root = self.node(node_id)
        if root.cache is not None:
            self.stats.cache_hits += 1
            return root.cache

        nodes = self.nodes
        stats = self.stats
        max_depth = self.limits.max_depth
        stack = [node_id]
        stats.max_force_depth = max(stats.max_force_depth, 1)

        while stack:
            current_id = stack[-1]
            node = nodes[current_id]
            demand = None

            if node.kind is NodeKind.DECREMENT:
                child = nodes[node.of]
                if child.cache is None:
                    demand = node.of
                else:
                    self._finish(current_id, node, checked_decrement(child.cache))
                    stack.pop()

            elif node.state == 0 or node.state == 1:
                arg = node.args[node.state]
                if nodes[arg].cache is None:
                    demand = arg
                else:
                    node.state += 1

            elif node.state == 2:
                a1 = nodes[node.args[0]].cache
                a2 = nodes[node.args[1]].cache
                if a1 <= a2:
                    self._finish(current_id, node, a2)
                    stack.pop()
                else:
                    node.outer = self._expand(node)
                    node.state = 3
                    demand = node.outer

            else:
                outer = nodes[node.outer]
                if outer.cache is None:
                    demand = node.outer
                else:
                    self._finish(current_id, node, outer.cache)
                    stack.pop()

            if demand is not None:
                stack.append(demand)
                if len(stack) > stats.max_force_depth:
                    stats.max_force_depth = len(stack)
                    if len(stack) > max_depth:
                        raise BudgetExceeded(f"forcing depth budget of {max_depth} exhausted", stats)

        return root.cache


def eval_lazy(x: IntSeq, limits: Optional[LazyLimits] = None,
              on_trace: Optional[Callable[[TraceRecord], None]] = None) -> LazyResult:
    """
    Evaluate t(x) call-by-need

    Args:
        x: argument vector of length >= 3
        limits: optional caps on created applications and forcing depth
        on_trace: callback receiving one TraceRecord per forced application

    Returns:
        LazyResult with the value and the evaluation's EvalStats
    """
    x = as_seq(x)
    store = ThunkStore(x.n, limits=limits, on_trace=on_trace)
    started = time.perf_counter()
    try:
        root = store.app(tuple(store.leaf(v) for v in x.values))
        value = store.force(root)
    except BudgetExceeded as e:
        store.stats.wall_time = time.perf_counter() - started
        logger.error(f"Lazy evaluation of {x} exceeded its budget: {e} ({store.stats.counters()})")
        raise
    store.stats.wall_time = time.perf_counter() - started

    upper = max_value(x)
    if value > upper:
        raise BoundViolation(f"lazy t{x} = {value} exceeds max(x) = {upper}")

    logger.debug(f"t{x} = {value} lazily ({store.stats.apps_forced}/{store.stats.apps_created} apps forced)")
    return LazyResult(value=value, stats=store.stats)

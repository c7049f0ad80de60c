"""
Verifier - Theorem-checking harness for the n-dimensional tarai function
Exhaustive and seeded randomized sweeps of t = f, the recurrence of f, and the lemma suite
"""

import itertools
import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Any, Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from closed_form import f_char, f_conjecture, g_b, mccarthy3
from lazy_engine import BudgetExceeded, LazyLimits, eval_lazy
from strict_engine import (
    DEFAULT_GRID_CAP,
    DEFAULT_STRICT_BUDGET,
    StrictEvaluator,
    check_grid_cap,
    grid_size,
)
from tarai_core import IntSeq, TaraiArgumentError, inner_vector, k_index, l_index, max_value, x_k_indices

logger = logging.getLogger(__name__)


class PropertyId(Enum):
    THM_TERMINATION_BOUND = "thm_termination_bound"
    LEMMA_STAR_K_DEPENDENCE = "lemma_star_k_dependence"
    LEMMA_STAR_K_BOUND = "lemma_star_k_bound"
    MAIN_T_EQ_F = "main_t_eq_f"
    F_RECURRENCE = "f_recurrence"
    F_RECURRENCE_K_LT_N = "f_recurrence_k_lt_n"
    F_RECURRENCE_K_EQ_N = "f_recurrence_k_eq_n"
    LEMMA_GB_CLOSED = "lemma_gb_closed"
    CHAR_LEMMA = "char_lemma"
    LEMMA_I = "lemma_I"
    LEMMA_A = "lemma_A"
    LEMMA_E = "lemma_E"
    LEMMA_H = "lemma_H"
    LEMMA_B = "lemma_B"
    LEMMA_C = "lemma_C"
    LEMMA_D = "lemma_D"
    LEMMA_F = "lemma_F"
    LEMMA_G = "lemma_G"
    MCCARTHY3_AGREEMENT = "mccarthy3_agreement"
    X_K_COVER = "x_k_cover"
    STRICT_TOTALITY = "strict_totality"

    @classmethod
    def parse_list(cls, text: str) -> List["PropertyId"]:
        """Parse 'main_t_eq_f,lemma_C' into property ids"""
        names = [part.strip() for part in text.split(",") if part.strip()]
        known = {p.value: p for p in cls}
        unknown = [name for name in names if name not in known]
        if unknown:
            raise TaraiArgumentError(
                f"unknown properties {unknown}; choose from {sorted(known)}"
            )
        return [known[name] for name in names]


LEMMA_SUITE = [
    PropertyId.LEMMA_I,
    PropertyId.LEMMA_A,
    PropertyId.LEMMA_E,
    PropertyId.LEMMA_H,
    PropertyId.LEMMA_B,
    PropertyId.LEMMA_C,
    PropertyId.LEMMA_D,
    PropertyId.LEMMA_F,
    PropertyId.LEMMA_G,
]

RECURRENCE_PROPERTIES = [
    PropertyId.F_RECURRENCE,
    PropertyId.F_RECURRENCE_K_LT_N,
    PropertyId.F_RECURRENCE_K_EQ_N,
]


@dataclass(frozen=True)
class SweepMode:
    """Exhaustive grid, or ``count`` seeded random points"""
    kind: str = "exhaustive"
    seed: Optional[int] = None
    count: Optional[int] = None

    @classmethod
    def exhaustive(cls) -> "SweepMode":
        return cls()

    @classmethod
    def randomized(cls, seed: int, count: int) -> "SweepMode":
        if count <= 0:
            raise TaraiArgumentError(f"randomized sweeps need a positive count, got {count}")
        return cls(kind="randomized", seed=seed, count=count)

    @property
    def is_exhaustive(self) -> bool:
        return self.kind == "exhaustive"

    def to_dict(self) -> Dict[str, Any]:
        if self.is_exhaustive:
            return {"kind": self.kind}
        return {"kind": self.kind, "seed": self.seed, "count": self.count}


@dataclass(frozen=True)
class Mismatch:
    input: IntSeq
    expected: Any
    actual: Any
    property: str

    def to_dict(self) -> Dict[str, Any]:
        return {
            "input": self.input.to_list(),
            "expected": self.expected,
            "actual": self.actual,
            "property": self.property,
        }


@dataclass
class SweepReport:
    """Outcome of one verification sweep"""
    n: int
    lo: int
    hi: int
    mode: SweepMode
    properties: List[str]
    points_checked: int = 0
    mismatches: List[Mismatch] = field(default_factory=list)
    hits: Dict[str, int] = field(default_factory=dict)
    apps_created: Dict[str, Optional[float]] = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def vacuous(self) -> List[str]:
        """Selected properties whose hypothesis never held"""
        return [name for name in self.properties if self.hits.get(name, 0) == 0]

    def to_dict(self, include_timing: bool = True) -> Dict[str, Any]:
        data = {
            "n": self.n,
            "range": [self.lo, self.hi],
            "mode": self.mode.to_dict(),
            "properties": list(self.properties),
            "points_checked": self.points_checked,
            "passed": self.passed,
            "mismatches": [m.to_dict() for m in self.mismatches],
            "hits": dict(self.hits),
            "apps_created": dict(self.apps_created),
        }
        if include_timing:
            data["wall_time"] = self.wall_time
        return data

    def to_json(self, include_timing: bool = True) -> str:
        return json.dumps(self.to_dict(include_timing), indent=2, default=str)

    def summary_table(self) -> pd.DataFrame:
        failures = pd.Series([m.property for m in self.mismatches], dtype=object).value_counts()
        return pd.DataFrame({
            "property": self.properties,
            "hits": [self.hits.get(name, 0) for name in self.properties],
            "mismatches": [int(failures.get(name, 0)) for name in self.properties],
        })


@dataclass(frozen=True)
class Verdict:
    ok: bool
    expected: Any
    actual: Any


class PointContext:
    """
    Lazily computed facts about one grid point, shared by every checker

    The lazy evaluation runs at most once per point.
    """

    def __init__(self, x: IntSeq, index: int, seed: int, lo: int, hi: int,
                 limits: Optional[LazyLimits], strict: Optional[StrictEvaluator]):
        self.x = x
        self.v = x.values
        self.n = x.n
        self.index = index
        self.seed = seed
        self.lo = lo
        self.hi = hi
        self.limits = limits
        self.strict = strict
        self.apps_created: Optional[int] = None

    @cached_property
    def k(self) -> int:
        return k_index(self.x)

    @cached_property
    def l(self) -> int:
        return l_index(self.x)

    @cached_property
    def f(self) -> int:
        return f_char(self.x)

    @cached_property
    def f_conj(self) -> int:
        return f_conjecture(self.x)

    @cached_property
    def lazy(self) -> Optional[int]:
        """t(x) call-by-need, or None when the budget tripped"""
        try:
            result = eval_lazy(self.x, limits=self.limits)
        except BudgetExceeded as e:
            self.apps_created = e.stats.apps_created
            return None
        self.apps_created = result.stats.apps_created
        return result.value

    def at(self, i: int) -> int:
        return self.v[i - 1]


def _thm_termination_bound(ctx: PointContext) -> List[Verdict]:
    bound = max_value(ctx.x)
    value = ctx.lazy
    actual = "budget exceeded" if value is None else value
    return [Verdict(value is not None and value <= bound, f"<= {bound}", actual)]


def perturb_tail(x: IntSeq, k: int, rng: np.random.Generator, lo: int, hi: int) -> IntSeq:
    """Keep positions 1..k and redraw the rest uniformly from [lo, hi]"""
    tail = rng.integers(lo, hi + 1, size=x.n - k)
    return IntSeq(x.values[:k] + tuple(int(v) for v in tail))


def _lemma_star_k_dependence(ctx: PointContext) -> List[Verdict]:
    ks = [k for k in x_k_indices(ctx.x) if k < ctx.n]
    if not ks:
        return []
    rng = np.random.default_rng([ctx.seed, ctx.index])
    verdicts = []
    for k in ks:
        other = perturb_tail(ctx.x, k, rng, ctx.lo, ctx.hi)
        try:
            other_value = eval_lazy(other, limits=ctx.limits).value
        except BudgetExceeded:
            other_value = None
        verdicts.append(Verdict(ctx.lazy is not None and ctx.lazy == other_value,
                                ctx.lazy, f"t{other} = {other_value}"))
    return verdicts


def _lemma_star_k_bound(ctx: PointContext) -> List[Verdict]:
    ks = x_k_indices(ctx.x)
    if not ks:
        return []
    bound = min(ctx.at(k) for k in ks)
    return [Verdict(ctx.lazy is not None and ctx.lazy <= bound, f"<= {bound}", ctx.lazy)]


def _main_t_eq_f(ctx: PointContext) -> List[Verdict]:
    ok = ctx.lazy == ctx.f == ctx.f_conj
    actual = ctx.lazy if ctx.f == ctx.f_conj else f"lazy={ctx.lazy}, conjecture={ctx.f_conj}"
    return [Verdict(ok, ctx.f, actual)]


def recurrence_vector(x: IntSeq) -> IntSeq:
    """y(i) = f(sigma(r^(i-1)(x)))"""
    return IntSeq(tuple(f_char(IntSeq(inner_vector(x.values, i))) for i in range(x.n)))


def _recurrence(ctx: PointContext) -> Verdict:
    y = recurrence_vector(ctx.x)
    value = f_char(y)
    return Verdict(ctx.f == value, ctx.f, f"f{y} = {value}")


def _f_recurrence(ctx: PointContext) -> List[Verdict]:
    if ctx.v[0] <= ctx.v[1]:
        return []
    return [_recurrence(ctx)]


def _f_recurrence_k_lt_n(ctx: PointContext) -> List[Verdict]:
    if ctx.v[0] <= ctx.v[1] or ctx.k == ctx.n:
        return []
    return [_recurrence(ctx)]


def _f_recurrence_k_eq_n(ctx: PointContext) -> List[Verdict]:
    if ctx.k != ctx.n:
        return []
    return [_recurrence(ctx)]


def _lemma_gb_closed(ctx: PointContext) -> List[Verdict]:
    if ctx.k != ctx.n - 1:
        return []
    expected = max(ctx.at(ctx.l + 2), ctx.at(ctx.k + 1))
    actual = g_b(ctx.x)
    return [Verdict(actual == expected, expected, actual)]


def _char_lemma(ctx: PointContext) -> List[Verdict]:
    verdicts = [Verdict(ctx.f == ctx.f_conj, ctx.f_conj, ctx.f)]
    if ctx.k == ctx.n:
        verdicts.append(Verdict(ctx.f_conj == ctx.at(1), ctx.at(1), ctx.f_conj))
    return verdicts


def _equals_next_after_k(ctx: PointContext) -> List[Verdict]:
    expected = ctx.at(ctx.k + 1)
    return [Verdict(ctx.f == expected, expected, ctx.f)]


def _lemma_I(ctx: PointContext) -> List[Verdict]:
    if ctx.k > 2:
        return []
    return _equals_next_after_k(ctx)


def _lemma_A(ctx: PointContext) -> List[Verdict]:
    if ctx.k >= ctx.n:
        return []
    pivot = ctx.at(ctx.k + 1)
    if not any(ctx.at(m) <= pivot for m in range(1, ctx.l + 3)):
        return []
    return _equals_next_after_k(ctx)


def _lemma_E(ctx: PointContext) -> List[Verdict]:
    if ctx.k >= ctx.n or ctx.at(3) > ctx.at(ctx.k + 1):
        return []
    return _equals_next_after_k(ctx)


def _lemma_H(ctx: PointContext) -> List[Verdict]:
    if ctx.k >= ctx.n or ctx.at(2) > ctx.at(ctx.k + 1):
        return []
    return _equals_next_after_k(ctx)


def _lemma_B(ctx: PointContext) -> List[Verdict]:
    if ctx.k >= ctx.n or ctx.l < ctx.k - 2:
        return []
    return _equals_next_after_k(ctx)


def _lemma_C(ctx: PointContext) -> List[Verdict]:
    x2, x3 = ctx.at(2), ctx.at(3)
    if x2 > x3:
        return []
    verdicts = [Verdict(ctx.f in (x2, x3), f"one of {x2}, {x3}", ctx.f)]
    if x2 == x3:
        verdicts.append(Verdict(ctx.f == x2, x2, ctx.f))
    return verdicts


def _lemma_D(ctx: PointContext) -> List[Verdict]:
    verdicts = []
    for m in range(1, ctx.n):
        if ctx.at(m) == ctx.at(m + 1) and ctx.k >= m - 1 and ctx.l >= m - 2:
            verdicts.append(Verdict(ctx.f == ctx.at(m), ctx.at(m), ctx.f))
    return verdicts


def _lemma_F(ctx: PointContext) -> List[Verdict]:
    verdicts = []
    for m in range(1, ctx.n - 1):
        if (ctx.k >= m - 1 and ctx.l >= m - 2
                and ctx.at(m) == ctx.at(m + 2) and ctx.at(m) >= ctx.at(m + 1)):
            verdicts.append(Verdict(ctx.f == ctx.at(m), ctx.at(m), ctx.f))
    return verdicts


def _lemma_G(ctx: PointContext) -> List[Verdict]:
    if not 2 <= ctx.k < ctx.n:
        return []
    bound = max(ctx.at(3), ctx.at(ctx.k + 1))
    return [Verdict(ctx.f <= bound, f"<= {bound}", ctx.f)]


def _mccarthy3_agreement(ctx: PointContext) -> List[Verdict]:
    if ctx.n != 3:
        return []
    expected = mccarthy3(ctx.x)
    return [Verdict(ctx.f == expected, expected, ctx.f)]


def _x_k_cover(ctx: PointContext) -> List[Verdict]:
    if ctx.at(1) >= max_value(ctx.x):
        return []
    ks = x_k_indices(ctx.x)
    return [Verdict(bool(ks), "some k with x in X_k", ks)]


def _strict_totality(ctx: PointContext) -> List[Verdict]:
    evaluator = ctx.strict or StrictEvaluator(memoize=True)
    outcome = evaluator.evaluate(ctx.x)
    actual = outcome.value if outcome.is_value else outcome.tag.value
    return [Verdict(outcome.is_value and outcome.value == ctx.f, ctx.f, actual)]


CHECKERS: Dict[PropertyId, Callable[[PointContext], List[Verdict]]] = {
    PropertyId.THM_TERMINATION_BOUND: _thm_termination_bound,
    PropertyId.LEMMA_STAR_K_DEPENDENCE: _lemma_star_k_dependence,
    PropertyId.LEMMA_STAR_K_BOUND: _lemma_star_k_bound,
    PropertyId.MAIN_T_EQ_F: _main_t_eq_f,
    PropertyId.F_RECURRENCE: _f_recurrence,
    PropertyId.F_RECURRENCE_K_LT_N: _f_recurrence_k_lt_n,
    PropertyId.F_RECURRENCE_K_EQ_N: _f_recurrence_k_eq_n,
    PropertyId.LEMMA_GB_CLOSED: _lemma_gb_closed,
    PropertyId.CHAR_LEMMA: _char_lemma,
    PropertyId.LEMMA_I: _lemma_I,
    PropertyId.LEMMA_A: _lemma_A,
    PropertyId.LEMMA_E: _lemma_E,
    PropertyId.LEMMA_H: _lemma_H,
    PropertyId.LEMMA_B: _lemma_B,
    PropertyId.LEMMA_C: _lemma_C,
    PropertyId.LEMMA_D: _lemma_D,
    PropertyId.LEMMA_F: _lemma_F,
    PropertyId.LEMMA_G: _lemma_G,
    PropertyId.MCCARTHY3_AGREEMENT: _mccarthy3_agreement,
    PropertyId.X_K_COVER: _x_k_cover,
    PropertyId.STRICT_TOTALITY: _strict_totality,
}


def check_point(x: IntSeq, which: Sequence[PropertyId], index: int = 0, seed: int = 1,
                lo: Optional[int] = None, hi: Optional[int] = None,
                limits: Optional[LazyLimits] = None,
                strict: Optional[StrictEvaluator] = None) -> Tuple[List[Mismatch], Dict[str, int], PointContext]:
    """Run the selected checkers on one point"""
    lo = min(x.values) if lo is None else lo
    hi = max(x.values) if hi is None else hi
    ctx = PointContext(x, index, seed, lo, hi, limits, strict)
    mismatches = []
    hits = {}
    for prop in which:
        verdicts = CHECKERS[prop](ctx)
        if not verdicts:
            continue
        hits[prop.value] = 1
        for verdict in verdicts:
            if not verdict.ok:
                mismatches.append(Mismatch(x, verdict.expected, verdict.actual, prop.value))
    return mismatches, hits, ctx


def iter_grid(n: int, lo: int, hi: int) -> Iterator[IntSeq]:
    """Every point of [lo, hi]^n in lexicographic order"""
    for vec in itertools.product(range(lo, hi + 1), repeat=n):
        yield IntSeq(vec)


def sample_points(n: int, lo: int, hi: int, seed: int, count: int) -> List[IntSeq]:
    """``count`` uniform points of [lo, hi]^n from a PCG64 generator seeded with ``seed``"""
    rng = np.random.default_rng(seed)
    block = rng.integers(lo, hi + 1, size=(count, n))
    return [IntSeq(tuple(int(v) for v in row)) for row in block]


@dataclass
class _ChunkResult:
    points: int
    mismatches: List[Mismatch]
    hits: Dict[str, int]
    apps: List[int]


@dataclass(frozen=True)
class _ChunkTask:
    n: int
    lo: int
    hi: int
    which: Tuple[PropertyId, ...]
    seed: int
    limits: Optional[LazyLimits]
    strict_budget: int
    first: Optional[int] = None
    points: Optional[Tuple[Tuple[int, ...], ...]] = None
    start_index: int = 0


def _points_of(task: _ChunkTask) -> Iterable[Tuple[int, ...]]:
    if task.points is not None:
        return task.points
    return ((task.first,) + rest for rest in itertools.product(range(task.lo, task.hi + 1), repeat=task.n - 1))


def _run_chunk(task: _ChunkTask) -> _ChunkResult:
    strict = StrictEvaluator(budget=task.strict_budget, memoize=True)
    result = _ChunkResult(points=0, mismatches=[], hits={}, apps=[])
    for offset, vec in enumerate(_points_of(task)):
        mismatches, hits, ctx = check_point(
            IntSeq(vec), task.which, index=task.start_index + offset, seed=task.seed,
            lo=task.lo, hi=task.hi, limits=task.limits, strict=strict,
        )
        result.points += 1
        result.mismatches.extend(mismatches)
        for name, count in hits.items():
            result.hits[name] = result.hits.get(name, 0) + count
        if ctx.apps_created is not None:
            result.apps.append(ctx.apps_created)
    return result


def _map_chunks(tasks: List[_ChunkTask], workers: int) -> List[_ChunkResult]:
    if workers <= 1 or len(tasks) <= 1:
        return [_run_chunk(task) for task in tasks]
    with ProcessPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(_run_chunk, tasks))


def _aggregate_apps(apps: List[int]) -> Dict[str, Optional[float]]:
    if not apps:
        return {"min": None, "max": None, "mean": None}
    arr = np.asarray(apps, dtype=np.int64)
    return {"min": int(arr.min()), "max": int(arr.max()), "mean": float(arr.mean())}


def run_sweep(n: int, lo: int, hi: int, mode: Optional[SweepMode] = None,
              which: Sequence[PropertyId] = (PropertyId.MAIN_T_EQ_F,),
              grid_cap: int = DEFAULT_GRID_CAP, workers: int = 1,
              limits: Optional[LazyLimits] = None,
              strict_budget: int = DEFAULT_STRICT_BUDGET) -> SweepReport:
    """
    Check the selected properties at every point of the sweep domain

    Exhaustive sweeps are split by first coordinate, randomized sweeps into
    ``workers`` contiguous runs; chunk results merge in chunk order so the
    report does not depend on the worker count.
    """
    mode = mode or SweepMode.exhaustive()
    which = tuple(dict.fromkeys(which))
    if not which:
        raise TaraiArgumentError("select at least one property to check")
    seed = mode.seed if mode.seed is not None else 0
    common = dict(n=n, lo=lo, hi=hi, which=which, seed=seed, limits=limits, strict_budget=strict_budget)

    if mode.is_exhaustive:
        size = check_grid_cap(n, lo, hi, grid_cap)
        per_chunk = size // (hi - lo + 1)
        tasks = [
            _ChunkTask(first=first, start_index=i * per_chunk, **common)
            for i, first in enumerate(range(lo, hi + 1))
        ]
    else:
        grid_size(n, lo, hi)
        if mode.count > grid_cap:
            raise TaraiArgumentError(f"{mode.count} random points exceed the cap of {grid_cap}")
        points = [p.values for p in sample_points(n, lo, hi, mode.seed, mode.count)]
        step = -(-len(points) // max(workers, 1))
        tasks = [
            _ChunkTask(points=tuple(points[start:start + step]), start_index=start, **common)
            for start in range(0, len(points), step)
        ]

    names = [p.value for p in which]
    logger.info(f"Sweeping [{lo},{hi}]^{n} ({mode.kind}) for {', '.join(names)} with {workers} worker(s)")
    started = time.perf_counter()
    results = _map_chunks(tasks, workers)

    report = SweepReport(n=n, lo=lo, hi=hi, mode=mode, properties=names)
    apps: List[int] = []
    for chunk in results:
        report.points_checked += chunk.points
        report.mismatches.extend(chunk.mismatches)
        for name, count in chunk.hits.items():
            report.hits[name] = report.hits.get(name, 0) + count
        apps.extend(chunk.apps)
    report.hits = {name: report.hits.get(name, 0) for name in names}
    report.apps_created = _aggregate_apps(apps)
    report.wall_time = time.perf_counter() - started

    if report.passed:
        logger.info(f"Sweep of {report.points_checked} points passed")
    else:
        logger.warning(f"Sweep found {len(report.mismatches)} mismatches; first: {report.mismatches[0].to_dict()}")
    return report


def sweep_equivalence(n: int, lo: int, hi: int, mode: Optional[SweepMode] = None, **kwargs) -> SweepReport:
    """t = f at every point, together with the max(x) bound (and the 3-dimensional closed form when n = 3)"""
    which = [PropertyId.MAIN_T_EQ_F, PropertyId.THM_TERMINATION_BOUND]
    if n == 3:
        which.append(PropertyId.MCCARTHY3_AGREEMENT)
    return run_sweep(n, lo, hi, mode, which, **kwargs)


def check_recurrence(n: int, lo: int, hi: int, mode: Optional[SweepMode] = None, **kwargs) -> SweepReport:
    """f(x) = f(y) wherever x(1) > x(2); uses the closed form only"""
    return run_sweep(n, lo, hi, mode, RECURRENCE_PROPERTIES, **kwargs)


def check_lemma_suite(n: int, lo: int, hi: int, mode: Optional[SweepMode] = None,
                      which: Optional[Sequence[PropertyId]] = None, **kwargs) -> SweepReport:
    return run_sweep(n, lo, hi, mode, which or LEMMA_SUITE, **kwargs)


def sample_x_k(n: int, lo: int, hi: int, rng: np.random.Generator) -> Tuple[IntSeq, int]:
    """
    Draw (x, k) with x in X_k by construction

    k uniform in [2, n], x(k) uniform in [lo, hi], earlier positions uniform in
    [lo, x(k)], later positions uniform in [lo, hi].
    """
    k = int(rng.integers(2, n + 1))
    pivot = int(rng.integers(lo, hi + 1))
    head = [int(v) for v in rng.integers(lo, pivot + 1, size=k - 1)]
    tail = [int(v) for v in rng.integers(lo, hi + 1, size=n - k)]
    return IntSeq(tuple(head + [pivot] + tail)), k


def dependence_trial(x: IntSeq, k: int, other: IntSeq,
                     limits: Optional[LazyLimits] = None) -> Tuple[List[Mismatch], int]:
    """
    Compare t(x) with t(other) where both agree on positions 1..k

    Returns mismatches and the apps created for x.
    """
    if x.values[:k] != other.values[:k]:
        raise TaraiArgumentError(f"{x} and {other} differ inside positions 1..{k}")
    first = eval_lazy(x, limits=limits)
    second = eval_lazy(other, limits=limits)
    mismatches = []
    if first.value != second.value:
        mismatches.append(Mismatch(x, first.value, f"t{other} = {second.value}",
                                   PropertyId.LEMMA_STAR_K_DEPENDENCE.value))
    bound = x.at(k)
    for seq, value in ((x, first.value), (other, second.value)):
        if value > bound:
            mismatches.append(Mismatch(seq, f"<= {bound}", value, PropertyId.LEMMA_STAR_K_BOUND.value))
    return mismatches, first.stats.apps_created


def check_dependence(n: int, trials: int, seed: int, lo: int = -10, hi: int = 10,
                     limits: Optional[LazyLimits] = None) -> SweepReport:
    """Seeded trials of the restriction lemma: positions after k never change t(x), and t(x) <= x(k)"""
    grid_size(n, lo, hi)
    if trials <= 0:
        raise TaraiArgumentError(f"trials must be positive, got {trials}")
    rng = np.random.default_rng(seed)
    names = [PropertyId.LEMMA_STAR_K_DEPENDENCE.value, PropertyId.LEMMA_STAR_K_BOUND.value]
    report = SweepReport(n=n, lo=lo, hi=hi, mode=SweepMode.randomized(seed, trials), properties=names)
    started = time.perf_counter()
    apps = []
    for _ in range(trials):
        x, k = sample_x_k(n, lo, hi, rng)
        other = perturb_tail(x, k, rng, lo, hi)
        mismatches, created = dependence_trial(x, k, other, limits)
        report.mismatches.extend(mismatches)
        report.points_checked += 1
        apps.append(created)
    report.hits = {name: trials for name in names}
    report.apps_created = _aggregate_apps(apps)
    report.wall_time = time.perf_counter() - started
    logger.info(f"{trials} dependence trials at n={n}: {len(report.mismatches)} mismatches")
    return report


def acceptance_suite(workers: int = 1, seed: int = 1,
                     limits: Optional[LazyLimits] = None) -> List[Tuple[str, SweepReport]]:
    """The full acceptance batch, one labelled report per check"""
    exhaustive = SweepMode.exhaustive()
    opts = dict(workers=workers, limits=limits)
    reports = [
        ("t = f, n=3", sweep_equivalence(3, -4, 8, exhaustive, **opts)),
        ("t = f, n=4", sweep_equivalence(4, -2, 6, exhaustive, **opts)),
        ("t = f, n=5 random", sweep_equivalence(5, -10, 10, SweepMode.randomized(seed, 10_000), **opts)),
        ("strict totality, n=3", run_sweep(3, -4, 8, exhaustive, [PropertyId.STRICT_TOTALITY], **opts)),
        ("f recurrence, n=3", check_recurrence(3, -4, 8, exhaustive, **opts)),
        ("f recurrence, n=4", check_recurrence(4, -2, 6, exhaustive, **opts)),
    ]
    for length in range(3, 7):
        reports.append((f"g_b closed form, length {length}",
                        run_sweep(length, -3, 5, exhaustive, [PropertyId.LEMMA_GB_CLOSED], **opts)))
    reports.append(("lemma suite, n=4", check_lemma_suite(4, -2, 6, exhaustive, **opts)))
    for n in (3, 4, 5):
        reports.append((f"restriction lemma, n={n}", check_dependence(n, 1000, seed, limits=limits)))
    return reports

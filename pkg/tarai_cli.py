"""
Tarai CLI - Command-line front-end for the tarai toolkit
Evaluation, closed forms, verification sweeps, divergence search, benchmarking and tracing
"""

import argparse
import json
import logging
import sys
from typing import Any, Dict, List, Optional, Sequence, Tuple

import colorlog
import pandas as pd

from closed_form import ClosedFormVariant, closed_form
from lazy_engine import BudgetExceeded, eval_lazy
from strict_engine import EvalOutcome, OutcomeTag, check_grid_cap, eval_strict, eval_strict_memo, find_divergent
from tarai_config import OUTPUT_FORMATS, CliConfig, load_config
from tarai_core import IntegerOverflowError, IntSeq, TaraiArgumentError, TaraiError
from verifier import (
    PropertyId,
    SweepMode,
    SweepReport,
    acceptance_suite,
    check_dependence,
    iter_grid,
    run_sweep,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

STRATEGIES = ("lazy", "strict", "strict-memo")
BENCH_COLUMNS = ["x", "strategy", "outcome", "value", "apps_created", "apps_forced", "wall_time_s"]
DEFAULT_SWEEP_PROPS = "main_t_eq_f,thm_termination_bound"


def setup_logging(level: str = "INFO"):
    """Colored log lines on stderr; stdout is kept for results"""
    handler = colorlog.StreamHandler(sys.stderr)
    handler.setFormatter(colorlog.ColoredFormatter(
        "%(log_color)s%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    ))
    root = logging.getLogger()
    root.handlers = [handler]
    root.setLevel(level.upper())


def emit(payload: Dict[str, Any], config: CliConfig, human: Sequence[str],
         table: Optional[pd.DataFrame] = None):
    """Write one result; human and csv output are renderings of the JSON payload"""
    if config.output_format == "json":
        print(json.dumps({**payload, "config": config.to_dict()}, indent=2, default=str))
    elif config.output_format == "csv":
        frame = table if table is not None else pd.json_normalize(payload)
        sys.stdout.write(frame.to_csv(index=False))
    else:
        for line in human:
            print(line)
        if table is not None:
            print(table.to_string(index=False))


def parse_args_vector(values: Sequence[int], minimum: int = 3) -> IntSeq:
    if len(values) < minimum:
        raise TaraiArgumentError(f"expected at least {minimum} integer arguments, got {len(values)}")
    try:
        return IntSeq(tuple(values))
    except IntegerOverflowError as e:
        raise TaraiArgumentError(f"argument out of range: {e}") from e


def _stats_lines(stats: Dict[str, Any]) -> List[str]:
    return [f"  {key}: {value}" for key, value in stats.items()]


def _outcome_exit(outcome: EvalOutcome) -> int:
    if outcome.tag is OutcomeTag.VALUE:
        return EXIT_OK
    if outcome.tag is OutcomeTag.CYCLE:
        return EXIT_MISMATCH
    return EXIT_BUDGET


def cmd_eval(args: argparse.Namespace, config: CliConfig) -> int:
    x = parse_args_vector(args.args)
    strategy = args.strategy
    if strategy == "lazy":
        try:
            result = eval_lazy(x, limits=config.lazy_limits)
        except BudgetExceeded as e:
            payload = {"x": x.to_list(), "strategy": strategy, "outcome": "budget",
                       "value": None, "stats": e.stats.to_dict()}
            emit(payload, config, [f"t{x}: lazy budget exhausted", *_stats_lines(e.stats.to_dict())])
            return EXIT_BUDGET
        payload = {"x": x.to_list(), "strategy": strategy, "outcome": "value",
                   "value": result.value, "stats": result.stats.to_dict()}
        emit(payload, config, [f"t{x} = {result.value} (lazy)", *_stats_lines(result.stats.to_dict())])
        return EXIT_OK

    budget = args.budget or config.strict_budget
    if strategy == "strict":
        outcome = eval_strict(x, budget)
    else:
        outcome = eval_strict_memo(x, budget)
    payload = {"x": x.to_list(), "strategy": strategy, **outcome.to_dict()}

    if outcome.tag is OutcomeTag.VALUE:
        human = [f"t{x} = {outcome.value} ({strategy})"]
    elif outcome.tag is OutcomeTag.CYCLE:
        human = [f"t{x} does not terminate under {strategy} evaluation; cycle:"]
        human += [f"  {seq}" for seq in outcome.witness.path]
        human.append(f"  repeat at stack depth {outcome.witness.repeat_index}")
    else:
        human = [f"t{x}: strict budget of {budget} applications exhausted"]
    emit(payload, config, human + _stats_lines(outcome.stats.to_dict()))
    return _outcome_exit(outcome)


def cmd_closed_form(args: argparse.Namespace, config: CliConfig) -> int:
    variant = ClosedFormVariant(args.variant)
    minimum = 1 if variant is ClosedFormVariant.CONJECTURE_RECURSIVE else 3
    x = parse_args_vector(args.args, minimum)
    value = closed_form(x, variant)
    emit({"x": x.to_list(), "variant": variant.value, "value": value}, config, [str(value)])
    return EXIT_OK


def _report_lines(label: str, report: SweepReport) -> List[str]:
    status = "PASS" if report.passed else "FAIL"
    human = [
        f"[{status}] {label}: {report.points_checked} points of [{report.lo},{report.hi}]^{report.n} "
        f"({report.mode.kind}), {len(report.mismatches)} mismatches",
    ]
    for mismatch in report.mismatches[:10]:
        human.append(f"  {mismatch.property} at {mismatch.input}: expected {mismatch.expected}, got {mismatch.actual}")
    vacuous = report.vacuous()
    if vacuous:
        human.append(f"  no hypothesis hits for: {', '.join(vacuous)}")
    return human


def sweep_exit(reports: Sequence[Tuple[str, SweepReport]], fail_on_vacuous: bool) -> int:
    """Mismatches always fail; unexercised properties fail only when asked"""
    failed = any(not report.passed for _, report in reports)
    if fail_on_vacuous:
        failed = failed or any(report.vacuous() for _, report in reports)
    return EXIT_MISMATCH if failed else EXIT_OK


def cmd_sweep(args: argparse.Namespace, config: CliConfig) -> int:
    if args.acceptance:
        reports = acceptance_suite(workers=config.workers, seed=config.seed, limits=config.lazy_limits)
    else:
        if args.n is None or args.lo is None or args.hi is None:
            raise TaraiArgumentError("sweep needs --n, --lo and --hi (or --acceptance)")
        reports = []
        if args.dependence_trials:
            reports.append(("restriction lemma", check_dependence(
                args.n, args.dependence_trials, config.seed, args.lo, args.hi, limits=config.lazy_limits)))
        else:
            mode = SweepMode.randomized(config.seed, args.random) if args.random else SweepMode.exhaustive()
            which = PropertyId.parse_list(args.props)
            reports.append((args.props, run_sweep(
                args.n, args.lo, args.hi, mode, which, grid_cap=config.grid_cap,
                workers=config.workers, limits=config.lazy_limits, strict_budget=config.strict_budget)))

    if config.output_format == "json":
        rendered = [{"label": label, **report.to_dict()} for label, report in reports]
        print(json.dumps({"reports": rendered, "config": config.to_dict()}, indent=2, default=str))
    elif config.output_format == "csv":
        tables = [report.summary_table().assign(label=label) for label, report in reports]
        frame = pd.concat(tables, ignore_index=True)[["label", "property", "hits", "mismatches"]]
        sys.stdout.write(frame.to_csv(index=False))
    else:
        for label, report in reports:
            emit({}, config, _report_lines(label, report), report.summary_table())

    return sweep_exit(reports, fail_on_vacuous=args.acceptance)


def cmd_find_divergent(args: argparse.Namespace, config: CliConfig) -> int:
    budget = args.budget or config.strict_budget
    found = find_divergent(args.n, args.lo, args.hi, budget=budget, grid_cap=config.grid_cap,
                           workers=config.workers, memoize=args.memo)
    payload = {"n": args.n, "range": [args.lo, args.hi], "budget": budget,
               "divergent": [seq.to_list() for seq in found]}
    table = pd.DataFrame({"x": [" ".join(map(str, seq)) for seq in found]})
    human = [f"{len(found)} strictly divergent points in [{args.lo},{args.hi}]^{args.n}"]
    human += [" ".join(map(str, seq)) for seq in found] or ["none"]
    if config.output_format == "human":
        table = None
    emit(payload, config, human, table)
    return EXIT_OK


def bench_rows(n: int, lo: int, hi: int, strategies: Sequence[str], config: CliConfig) -> List[List[Any]]:
    """One row per (point, strategy) in BENCH_COLUMNS order, then a TOTAL row per strategy"""
    check_grid_cap(n, lo, hi, config.grid_cap)
    rows: List[List[Any]] = []
    for x in iter_grid(n, lo, hi):
        label = " ".join(map(str, x))
        for strategy in strategies:
            if strategy == "lazy":
                try:
                    result = eval_lazy(x, limits=config.lazy_limits)
                    stats, outcome, value = result.stats, "VALUE", result.value
                except BudgetExceeded as e:
                    stats, outcome, value = e.stats, "BUDGET", None
            else:
                evaluate = eval_strict if strategy == "strict" else eval_strict_memo
                result = evaluate(x, config.strict_budget)
                stats, outcome, value = result.stats, result.tag.name, result.value
            rows.append([label, strategy, outcome, value, stats.apps_created,
                         stats.apps_forced, stats.wall_time])

    totals = []
    for strategy in strategies:
        part = [row for row in rows if row[1] == strategy]
        completed = sum(1 for row in part if row[2] == "VALUE")
        totals.append(["TOTAL", strategy, f"{completed}/{len(part)}", None,
                       sum(row[4] for row in part), sum(row[5] for row in part),
                       sum(row[6] for row in part)])
    return rows + totals


def bench_frame(rows: List[List[Any]]) -> pd.DataFrame:
    frame = pd.DataFrame(rows, columns=BENCH_COLUMNS)
    frame["value"] = pd.array([row[3] for row in rows], dtype="Int64")
    return frame


def cmd_bench(args: argparse.Namespace, config: CliConfig) -> int:
    strategies = [s.strip() for s in args.strategies.split(",") if s.strip()]
    unknown = [s for s in strategies if s not in STRATEGIES]
    if unknown or not strategies:
        raise TaraiArgumentError(f"unknown strategies {unknown}; choose from {list(STRATEGIES)}")
    rows = bench_rows(args.n, args.lo, args.hi, strategies, config)
    if config.output_format == "json":
        emit({"columns": BENCH_COLUMNS, "rows": rows}, config, [])
    else:
        frame = bench_frame(rows)
        # the bench table is comma-separated in every non-JSON format
        sys.stdout.write(frame.to_csv(index=False))
    return EXIT_OK


def cmd_trace(args: argparse.Namespace, config: CliConfig) -> int:
    x = parse_args_vector(args.args)

    def write(record):
        print(json.dumps(record.to_dict()))

    try:
        eval_lazy(x, limits=config.lazy_limits, on_trace=write)
    except BudgetExceeded:
        return EXIT_BUDGET
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=None, help="YAML config file (default: $TARAI_CONFIG or tarai.yaml)")
    common.add_argument("--format", dest="output_format", choices=OUTPUT_FORMATS, default=None,
                        help="output format")
    common.add_argument("--workers", type=int, default=None, help="parallel workers for sweeps")
    common.add_argument("--seed", type=int, default=None, help="seed for randomized modes")
    common.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    common.add_argument("-q", "--quiet", action="store_true", help="warnings and errors only")

    parser = argparse.ArgumentParser(
        prog="tarai",
        description="Evaluate and verify the n-dimensional tarai function",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate t(x) under a strategy")
    p.add_argument("--strategy", choices=STRATEGIES, default="lazy")
    p.add_argument("--budget", type=int, default=None, help="strict application budget")
    p.add_argument("args", type=int, nargs="*", help="integer arguments x(1) ... x(n)")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("closed-form", parents=[common], help="evaluate the closed form f(x)")
    p.add_argument("--variant", choices=[v.value for v in ClosedFormVariant],
                   default=ClosedFormVariant.CHARACTERIZATION.value)
    p.add_argument("args", type=int, nargs="*")
    p.set_defaults(func=cmd_closed_form)

    p = sub.add_parser("sweep", parents=[common], help="verify properties over a grid")
    p.add_argument("--n", type=int)
    p.add_argument("--lo", type=int)
    p.add_argument("--hi", type=int)
    p.add_argument("--random", type=int, default=None, metavar="COUNT",
                   help="check COUNT seeded random points instead of the whole grid")
    p.add_argument("--props", default=DEFAULT_SWEEP_PROPS,
                   help=f"comma-separated properties (default: {DEFAULT_SWEEP_PROPS})")
    p.add_argument("--dependence-trials", type=int, default=None,
                   help="run seeded restriction-lemma trials instead of a grid sweep")
    p.add_argument("--acceptance", action="store_true", help="run the full acceptance batch")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("find-divergent", parents=[common], help="search a grid for strict divergence")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--lo", type=int, required=True)
    p.add_argument("--hi", type=int, required=True)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--memo", action="store_true", help="share a strict memo within each chunk")
    p.set_defaults(func=cmd_find_divergent)

    p = sub.add_parser("bench", parents=[common], help="compare strategies over a grid (CSV)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--lo", type=int, required=True)
    p.add_argument("--hi", type=int, required=True)
    p.add_argument("--strategies", default=",".join(STRATEGIES))
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("trace", parents=[common], help="JSON Lines trace of a lazy evaluation")
    p.add_argument("args", type=int, nargs="*")
    p.set_defaults(func=cmd_trace)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    flag_level = "DEBUG" if args.verbose else "WARNING" if args.quiet else None
    setup_logging(flag_level or "INFO")

    try:
        config = load_config(args.config).with_overrides(
            output_format=args.output_format, workers=args.workers, seed=args.seed,
        )
    except TaraiError as e:
        print(f"tarai: {e}", file=sys.stderr)
        return EXIT_USAGE

    if flag_level is None:
        logging.getLogger().setLevel(config.log_level.upper())

    try:
        return args.func(args, config)
    except TaraiArgumentError as e:
        logger.error(str(e))
        print(f"tarai: {e}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as e:
        logger.error(str(e))
        return EXIT_BUDGET
    except TaraiError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())

"""
Tests for the tarai command line
"""

import io
import json

import pandas as pd
import pytest

import tarai_cli
from tarai_cli import BENCH_COLUMNS, EXIT_BUDGET, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, main, sweep_exit
from verifier import PropertyId, check_recurrence, run_sweep, sweep_equivalence


@pytest.fixture(autouse=True)
def isolated(no_config):
    return no_config


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_eval_lazy(capsys):
    code, out = run(capsys, "eval", "1", "2", "3")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "t<1, 2, 3> = 2 (lazy)"


def test_eval_lazy_terminates_where_strict_cycles(capsys):
    code, out = run(capsys, "eval", "--format", "json", "3", "2", "1", "5")
    assert code == EXIT_OK
    assert json.loads(out)["value"] == 5


def test_eval_strict_cycle(capsys):
    code, out = run(capsys, "eval", "--strategy", "strict", "3", "2", "1", "5")
    assert code == EXIT_MISMATCH
    assert "cycle" in out
    assert "<2, 1, 5, 4>" in out


def test_eval_strict_cycle_json(capsys):
    code, out = run(capsys, "eval", "--strategy", "strict-memo", "--format", "json", "3", "2", "1", "5")
    data = json.loads(out)
    assert code == EXIT_MISMATCH
    assert data["outcome"] == "cycle"
    assert data["witness"]["path"] == [[3, 2, 1, 5], [2, 1, 5, 4], [3, 2, 1, 5]]
    assert data["config"]["strict_budget"] == 1_000_000


def test_eval_strict_budget(capsys):
    code, _ = run(capsys, "eval", "--strategy", "strict", "--budget", "1", "5", "4", "3")
    assert code == EXIT_BUDGET


def test_eval_lazy_budget_from_config(capsys, isolated):
    (isolated / "tarai.yaml").write_text("lazy_max_apps: 3\n")
    code, out = run(capsys, "eval", "3", "2", "1", "5")
    assert code == EXIT_BUDGET
    assert "budget exhausted" in out


def test_eval_csv(capsys):
    code, out = run(capsys, "eval", "--format", "csv", "5", "4", "3")
    frame = pd.read_csv(io.StringIO(out))
    assert code == EXIT_OK
    assert frame.loc[0, "value"] == 5
    assert "stats.apps_created" in frame.columns


def test_eval_needs_three_arguments(capsys):
    code, _ = run(capsys, "eval", "1", "2")
    assert code == EXIT_USAGE


@pytest.mark.parametrize("argv, expected", [
    (["closed-form", "3", "2", "1", "5"], "5"),
    (["closed-form", "--variant", "mccarthy3", "1", "2", "3"], "2"),
    (["closed-form", "--variant", "conjecture", "7"], "7"),
    (["closed-form", "5", "4", "3"], "5"),
    (["closed-form", "--variant", "mccarthy3", "3", "1", "5"], "5"),
    (["closed-form", "--variant", "conjecture", "3", "2", "1", "5"], "5"),
])
def test_closed_form(capsys, argv, expected):
    code, out = run(capsys, *argv)
    assert code == EXIT_OK
    assert out.strip() == expected


def test_closed_form_mccarthy3_arity(capsys):
    code, _ = run(capsys, "closed-form", "--variant", "mccarthy3", "1", "2", "3", "4")
    assert code == EXIT_USAGE


def test_sweep_json(capsys):
    code, out = run(capsys, "sweep", "--n", "3", "--lo", "-2", "--hi", "3", "--format", "json")
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["reports"][0]["points_checked"] == 216
    assert data["reports"][0]["passed"] is True


def test_sweep_random_human(capsys):
    code, out = run(capsys, "sweep", "--n", "4", "--lo", "-4", "--hi", "4", "--random", "50",
                    "--props", "main_t_eq_f,lemma_C")
    assert code == EXIT_OK
    assert out.startswith("[PASS]")


def test_sweep_dependence_trials(capsys):
    code, out = run(capsys, "sweep", "--n", "4", "--lo", "-5", "--hi", "5", "--dependence-trials", "20")
    assert code == EXIT_OK
    assert "20 points" in out


def test_sweep_usage_errors(capsys):
    assert run(capsys, "sweep", "--n", "3")[0] == EXIT_USAGE
    assert run(capsys, "sweep", "--n", "3", "--lo", "0", "--hi", "2", "--props", "nope")[0] == EXIT_USAGE


def test_find_divergent_none(capsys):
    code, out = run(capsys, "find-divergent", "--n", "4", "--lo", "0", "--hi", "1")
    assert code == EXIT_OK
    assert out.splitlines()[0].startswith("0 strictly divergent")


def test_find_divergent_json(capsys):
    code, out = run(capsys, "find-divergent", "--n", "4", "--lo", "0", "--hi", "5", "--memo",
                    "--format", "json", "--workers", "1")
    assert code == EXIT_OK
    assert [3, 2, 1, 5] in json.loads(out)["divergent"]


def test_bench_csv(capsys):
    code, out = run(capsys, "bench", "--n", "3", "--lo", "0", "--hi", "2")
    assert code == EXIT_OK
    assert out.splitlines()[0] == ",".join(BENCH_COLUMNS)

    frame = pd.read_csv(io.StringIO(out))
    rows = frame[frame["x"] != "TOTAL"]
    totals = frame[frame["x"] == "TOTAL"].set_index("strategy")
    assert len(rows) == 27 * 3
    assert set(totals["outcome"]) == {"27/27"}
    assert totals.loc["lazy", "apps_forced"] <= totals.loc["strict", "apps_forced"]

    lazy = rows[rows["strategy"] == "lazy"].set_index("x")
    strict = rows[rows["strategy"] == "strict"].set_index("x")
    assert (lazy["value"] == strict["value"]).all()
    assert (lazy["apps_forced"] <= strict["apps_forced"]).all()


def test_bench_json(capsys):
    code, out = run(capsys, "bench", "--n", "3", "--lo", "0", "--hi", "1", "--strategies", "lazy",
                    "--format", "json")
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["columns"] == BENCH_COLUMNS
    assert len(data["rows"]) == 9
    assert data["rows"][-1][:3] == ["TOTAL", "lazy", "8/8"]


@pytest.mark.slow
def test_bench_four_dimensions(capsys):
    code, out = run(capsys, "bench", "--n", "4", "--lo", "0", "--hi", "5", "--strategies", "lazy,strict-memo")
    frame = pd.read_csv(io.StringIO(out))
    assert code == EXIT_OK
    cycled = frame[(frame["strategy"] == "strict-memo") & (frame["outcome"] == "CYCLE")]
    assert "3 2 1 5" in set(cycled["x"])


def test_bench_unknown_strategy(capsys):
    code, _ = run(capsys, "bench", "--n", "3", "--lo", "0", "--hi", "1", "--strategies", "eager")
    assert code == EXIT_USAGE


def test_trace(capsys):
    code, out = run(capsys, "trace", "1", "2", "3")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert len(lines) == 1
    assert json.loads(lines[0])["result"] == 2

    code, out = run(capsys, "trace", "3", "2", "1", "5")
    last = json.loads(out.splitlines()[-1])
    assert last["args"] == [3, 2, 1, 5]
    assert last["result"] == 5


def test_flags_override_config_file(capsys, isolated):
    (isolated / "tarai.yaml").write_text("output_format: json\n")
    _, out = run(capsys, "closed-form", "5", "4", "3")
    assert json.loads(out)["value"] == 5
    _, out = run(capsys, "closed-form", "--format", "human", "5", "4", "3")
    assert out.strip() == "5"


def test_bad_config_is_a_usage_error(capsys, isolated):
    (isolated / "tarai.yaml").write_text("strict_budget: lots\n")
    code, _ = run(capsys, "eval", "1", "2", "3")
    assert code == EXIT_USAGE


def test_argparse_rejects_unknown_strategy():
    with pytest.raises(SystemExit) as info:
        main(["eval", "--strategy", "eager", "1", "2", "3"])
    assert info.value.code == 2


def test_sweep_singleton_grid(capsys):
    code, out = run(capsys, "sweep", "--n", "3", "--lo", "0", "--hi", "0", "--format", "json")
    assert code == EXIT_OK
    assert json.loads(out)["reports"][0]["points_checked"] == 1


def test_sweep_recurrence_props(capsys):
    code, out = run(capsys, "sweep", "--n", "4", "--lo", "-2", "--hi", "6", "--props", "f_recurrence",
                    "--format", "json", "--workers", "1")
    assert code == EXIT_OK
    assert json.loads(out)["reports"][0]["points_checked"] == 9 ** 4


def test_find_divergent_three_dimensions(capsys):
    code, out = run(capsys, "find-divergent", "--n", "3", "--lo", "-2", "--hi", "4", "--format", "json")
    assert code == EXIT_OK
    assert json.loads(out)["divergent"] == []


@pytest.mark.slow
def test_find_divergent_without_memo(capsys):
    code, out = run(capsys, "find-divergent", "--n", "4", "--lo", "0", "--hi", "5", "--format", "json")
    assert code == EXIT_OK
    assert [3, 2, 1, 5] in json.loads(out)["divergent"]


def test_bench_base_case_row(capsys):
    code, out = run(capsys, "bench", "--n", "3", "--lo", "0", "--hi", "1")
    frame = pd.read_csv(io.StringIO(out))
    base = frame[frame["x"] == "0 1 1"]
    assert code == EXIT_OK
    assert len(base) == 3
    assert (base["apps_created"] == 1).all()
    assert (base["apps_forced"] == 1).all()


def test_unknown_log_level_is_a_usage_error(capsys, isolated):
    (isolated / "tarai.yaml").write_text("log_level: LOUD\n")
    code, _ = run(capsys, "eval", "1", "2", "3")
    assert code == EXIT_USAGE


def test_argument_outside_int64_is_a_usage_error(capsys):
    code, _ = run(capsys, "eval", "9223372036854775808", "0", "0")
    assert code == EXIT_USAGE


def test_dependence_trials_with_inverted_range(capsys):
    code, _ = run(capsys, "sweep", "--n", "4", "--lo", "5", "--hi", "0", "--dependence-trials", "10")
    assert code == EXIT_USAGE


def test_acceptance_fails_on_vacuous_report(capsys, monkeypatch):
    vacuous = run_sweep(3, 0, 0, which=[PropertyId.F_RECURRENCE])
    monkeypatch.setattr(tarai_cli, "acceptance_suite", lambda **kwargs: [("recurrence", vacuous)])
    code, out = run(capsys, "sweep", "--acceptance")
    assert code == EXIT_MISMATCH
    assert "no hypothesis hits for: f_recurrence" in out


def test_vacuous_report_passes_outside_acceptance():
    vacuous = run_sweep(3, 0, 0, which=[PropertyId.F_RECURRENCE])
    assert sweep_exit([("recurrence", vacuous)], fail_on_vacuous=False) == EXIT_OK
    assert sweep_exit([("recurrence", vacuous)], fail_on_vacuous=True) == EXIT_MISMATCH


def test_sweep_csv_is_one_table(capsys, monkeypatch):
    reports = [
        ("t = f", sweep_equivalence(3, 0, 1)),
        ("recurrence", check_recurrence(3, 0, 1)),
    ]
    monkeypatch.setattr(tarai_cli, "acceptance_suite", lambda **kwargs: reports)
    code, out = run(capsys, "sweep", "--acceptance", "--format", "csv")
    lines = out.splitlines()
    assert lines[0] == "label,property,hits,mismatches"
    assert sum(1 for line in lines if line.startswith("label,")) == 1
    frame = pd.read_csv(io.StringIO(out))
    assert set(frame["label"]) == {"t = f", "recurrence"}
    assert code == sweep_exit(reports, fail_on_vacuous=True)


def test_config_load_is_logged(capsys, isolated):
    (isolated / "tarai.yaml").write_text("seed: 4\n")
    assert main(["closed-form", "5", "4", "3"]) == EXIT_OK
    assert "Loaded configuration from tarai.yaml" in capsys.readouterr().err

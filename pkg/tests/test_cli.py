import json

import pytest

from debtclear.cli import main
from debtclear.core import DebtVector, verify_clearing
from debtclear.formats import load_instance, parse_solution, parse_solution_text


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("cmd", [["greedy"], ["exact"], ["solve", "--generations", "50"],
                                 ["random-search", "--evaluations", "500"]])
def test_sample_two_transfers(capsys, sample_path, cmd):
    code, out, _ = run(capsys, cmd[0], sample_path, *cmd[1:])
    assert code == 0
    plan = parse_solution_text(out)
    assert len(plan) == 2
    assert verify_clearing((3, 0, 4, -7, 0), plan)


def test_exact_reports_blocks(capsys, sample_path):
    code, out, err = run(capsys, "exact", sample_path)
    assert code == 0
    assert "max_blocks 3" in err
    assert out == "2\n1 4 3\n3 4 4\n"


def test_solve_writes_files(capsys, sample_path, tmp_path):
    sol, hist = tmp_path / "sol.txt", tmp_path / "hist.csv"
    code, out, _ = run(capsys, "solve", sample_path, "--generations", "10", "-o", sol, "--history", hist)
    assert code == 0 and out == ""
    assert len(parse_solution(sol)) == 2
    lines = hist.read_text().splitlines()
    assert lines[0] == "generation,best_fitness,mean_fitness"
    assert len(lines) == 12


def test_usage_errors(capsys, sample_path):
    assert run(capsys)[0] == 1
    assert run(capsys, "solve")[0] == 1
    assert run(capsys, "solve", sample_path, "--generations", "x")[0] == 1
    assert run(capsys, "gen", "1")[0] == 1


def test_invalid_input_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("D 3\n1 2 3\n")
    assert run(capsys, "greedy", bad)[0] == 2
    assert run(capsys, "greedy", tmp_path / "missing.txt")[0] == 2
    bad.write_text("2 1\n1 1 5\n")
    assert run(capsys, "greedy", bad)[0] == 2
    assert run(capsys, "solve", tmp_path / "missing.txt", "--population-size", "1")[0] == 2


def test_exact_limit_exit_code(capsys, tmp_path):
    p = tmp_path / "big.txt"
    code, _, _ = run(capsys, "gen", "2", "--pairs-upto", "12", "-o", p)
    assert code == 0
    assert run(capsys, "exact", p, "--limit", "20")[0] == 3


def test_gen_round_trip(capsys, tmp_path):
    base = tmp_path / "base.txt"
    assert run(capsys, "gen", "4", "--n", "12", "--l", "3", "--range", "1", "20", "--seed", "4", "-o", base)[0] == 0
    d, meta = load_instance(base)
    assert isinstance(d, DebtVector) and len(d) == 12
    assert meta["method"] == 4 and meta["claimed_optimum"] == 3
    assert meta["parameters"]["cuts"][-1] == 9

    code, out, _ = run(capsys, "gen", "5", "--base", base, "--copies", "3")
    assert code == 0
    text = tmp_path / "five.txt"
    text.write_text(out)
    d5, meta5 = load_instance(text)
    assert list(d5) == list(d) * 3
    assert meta5["claimed_optimum"] == 9
    assert meta5["optimum_kind"] == "lower_bound_claimed_exact"

    code, out, _ = run(capsys, "gen", "1", "--base", base, "--k", "2")
    text.write_text(out)
    assert load_instance(text)[1]["claimed_optimum"] == 5


def test_gen_base_without_metadata_is_labeled(capsys, tmp_path):
    base = tmp_path / "plain.txt"
    base.write_text("D 4\n1 -1 2 -2\n")
    code, out, _ = run(capsys, "gen", "2", "--base", base, "--pairs", "5")
    assert code == 0
    p = tmp_path / "out.txt"
    p.write_text(out)
    d, meta = load_instance(p)
    assert list(d) == [1, -1, 2, -2, 5, -5]
    assert meta["claimed_optimum"] == 3


def test_gen_method3(capsys, tmp_path):
    p = tmp_path / "m3.txt"
    assert run(capsys, "gen", "3", "--count-positive", "6", "--seed", "1", "-o", p)[0] == 0
    d, meta = load_instance(p)
    assert len(d) == 8 and meta["claimed_optimum"] == 2 and meta["optimum_kind"] == "exact"


def test_bench(capsys, tmp_path):
    inst = tmp_path / "pairs.txt"
    run(capsys, "gen", "2", "--pairs-upto", "5", "-o", inst)
    cfg = tmp_path / "bench.json"
    cfg.write_text(json.dumps({
        "instances": ["pairs.txt"],
        "ga": {"generations": 30, "population_size": 12, "elite_count": 2},
        "repetitions": 2,
    }))
    out_dir = tmp_path / "out"
    code, _, _ = run(capsys, "bench", cfg, "--output-dir", out_dir)
    assert code == 0
    assert sorted(p.name for p in out_dir.iterdir()) == ["pairs_run0.csv", "pairs_run1.csv", "summary.csv"]
    summary = (out_dir / "summary.csv").read_text().splitlines()
    assert summary[0] == "n,best,best_pct,avg,avg_pct,seconds"
    assert summary[1].startswith("10,")

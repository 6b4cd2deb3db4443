import json
import subprocess
import sys

import pytest

from covera.cli import EXIT_BUDGET, EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, main
from covera.designs import Design, write_design
from oracles import fano


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


# bound

def test_bound_text_names_the_winner(capsys):
    code, out, _ = run(capsys, "bound", 141, 36)
    assert code == EXIT_OK
    winner = out.strip().splitlines()[-1]
    assert winner.startswith("winner: ") and int(winner.split("=")[-1]) >= 20


def test_bound_tsv_has_a_fixed_header_and_best_line(capsys):
    code, out, _ = run(capsys, "bound", 7, 3, "--format", "tsv")
    lines = out.splitlines()
    assert code == EXIT_OK
    assert lines[0] == "name\tapplicable\texact\trounded"
    assert lines[-1].startswith("best\t1\t\t7\t")


def test_bound_json_packing(capsys):
    code, out, _ = run(capsys, "bound", 5, 3, 1, "--side", "pack", "--format", "json")
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == EXIT_OK and rows[-1]["best"] == 2


@pytest.mark.parametrize("args", [(5, 5), (5, 2), (5, 3, 0)])
def test_trivial_parameters_exit_with_usage_error(capsys, args):
    code, _, err = run(capsys, "bound", *args)
    assert code == EXIT_USAGE and "error" in err


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["bound", "x", "3"])
    assert exc.value.code == 2


# table

def test_table_four_text(capsys):
    code, out, _ = run(capsys, "table", 4, "--k-max", 40)
    assert code == EXIT_OK
    assert out.splitlines()[1].split() == ["36", "4", "141"]


def test_table_one_tsv(capsys):
    code, out, _ = run(capsys, "table", 1, "--k-max", 6, "--format", "tsv")
    assert code == EXIT_OK and out.startswith("k\tv\timprovement\tsuperscript\n")


# construct and verify

def test_construct_then_verify_round_trip(capsys, tmp_path):
    path = tmp_path / "c.txt"
    code, out, _ = run(capsys, "construct", "restrict", 4, 9, 141, "-o", path)
    assert code == EXIT_OK
    assert "v=141 k=36 lambda=1 b=20 class=covering" in out
    code, out, _ = run(capsys, "verify", path)
    assert code == EXIT_OK
    assert "covering lower bound 20" in out


def test_construct_blowup_and_verify(capsys, tmp_path):
    path = tmp_path / "b.txt"
    assert run(capsys, "construct", "blowup", 2, 5, "-o", path)[0] == EXIT_OK
    code, out, _ = run(capsys, "verify", path)
    assert code == EXIT_OK and "v=20 k=10 lambda=1 b=6 class=covering" in out


def test_construct_to_stdout_puts_summary_on_stderr(capsys):
    code, out, err = run(capsys, "construct", "plane", 3)
    assert code == EXIT_OK
    assert out.splitlines()[0] == "9 3 1" and len(out.splitlines()) == 13
    assert "class=exact-design" in err


@pytest.mark.parametrize("args", [("plane", 6), ("blowup", 3), ("restrict", 2, 5, 30)])
def test_construct_rejects_bad_arguments(capsys, args):
    assert run(capsys, "construct", *args)[0] == EXIT_USAGE


def test_verify_fano(capsys, tmp_path):
    path = tmp_path / "fano.txt"
    write_design(Design(7, 3, 1, tuple(fano())), path)
    code, out, _ = run(capsys, "verify", path, "--subset", "1,2,3,4,5,6,7")
    assert code == EXIT_OK
    assert "b=7" in out and "bose_lower=7" in out
    assert "certificate premise holds" in out


def test_verify_weighted_subset(capsys, tmp_path):
    path = tmp_path / "fano.txt"
    write_design(Design(7, 3, 1, tuple(fano())), path)
    code, out, _ = run(capsys, "verify", path, "--subset", "1,2", "--weights", "1/2,3")
    assert code == EXIT_OK and "certificate premise" in out
    assert run(capsys, "verify", path, "--subset", "1,2", "--weights", "1")[0] == EXIT_USAGE


def test_verify_neither_exits_1(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("4 3 1\n1 2 3\n1 2 4\n")
    code, out, _ = run(capsys, "verify", path)
    assert code == EXIT_VIOLATION and "neither" in out


@pytest.mark.parametrize("text", ["4 3 1\n1 2\n", "4 3 1\n1 2 9\n", "garbage\n", ""])
def test_verify_corrupt_file_exits_2(capsys, tmp_path, text):
    path = tmp_path / "bad.txt"
    path.write_text(text)
    code, _, err = run(capsys, "verify", path)
    assert code == EXIT_USAGE and err


def test_verify_missing_file_exits_2(capsys, tmp_path):
    assert run(capsys, "verify", tmp_path / "nope.txt")[0] == EXIT_USAGE


# search

def test_search_prints_value_and_witness(capsys, tmp_path):
    code, out, _ = run(capsys, "search", 7, 3)
    assert code == EXIT_OK
    assert out.startswith("C_1(7,3) = 7")
    assert out.splitlines()[1] == "7 3 1"


def test_search_packing_to_file(capsys, tmp_path):
    path = tmp_path / "p.txt"
    code, out, _ = run(capsys, "search", 8, 4, "--side", "pack", "-o", path)
    assert code == EXIT_OK and out.startswith("D_1(8,4) = 2")
    assert path.read_text().startswith("8 4 1\n")


def test_search_budget_exceeded_exits_3(capsys):
    code, out, _ = run(capsys, "search", 12, 4, 1, "--max-nodes", 5)
    assert code == EXIT_BUDGET and out.startswith("budget-exceeded")


def test_search_trivial_exits_2(capsys):
    assert run(capsys, "search", 4, 4)[0] == EXIT_USAGE


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "covera", "bound", "7", "3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "winner:" in proc.stdout

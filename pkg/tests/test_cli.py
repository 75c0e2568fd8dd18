import io
import json
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relcas.cli import main


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue().splitlines(), err.getvalue()


# -- worked examples ----------------------------------------------------------------

def test_eval():
    assert cli("eval", "--env", "x=5", "x^2")[:2] == (0, ["25"])


def test_diff():
    assert cli("diff", "--var", "x", "x^3 + x^0")[:2] == (0, ["x^2*3 + 0"])


def test_diff_other_variable():
    assert cli("diff", "--var", "t", "t^2")[:2] == (0, ["t^1*2"])


def test_reorder_all():
    code, lines, _ = cli("reorder", "1 + 2*3", "-n", "all")
    assert code == 0
    assert sorted(lines) == sorted(["1 + 2*3", "2*3 + 1", "1 + 3*2", "3*2 + 1"])


def test_integrate():
    assert cli("integrate", "--var", "x", "x*2", "-n", "1")[:2] == (0, ["x^2"])


def test_simplify():
    assert cli("simplify", "0^5 + 2*1")[:2] == (0, ["2"])


def test_simplify_with_raw_output():
    code, lines, _ = cli("simplify", "--format", "sexpr", "--bits", "0^5 + 2*1")
    assert (code, lines) == (0, ["(num (0 1))"])


def test_complicate():
    code, lines, _ = cli("complicate", "x", "-n", "3")
    assert code == 0 and lines[0] == "x" and len(lines) == 3


def test_solve():
    assert cli("solve", "--unknowns", "z", "z*z = 9")[:2] == (0, ["z=3"])
    assert cli("solve", "--unknowns", "y", "--env", "x=2", "x + y = 7")[:2] == (0, ["y=5"])


def test_anydiff_check_and_generate():
    assert cli("anydiff", "x^3 + x^0", "1*x^2*3")[:2] == (0, ["yes"])
    code, lines, _ = cli("anydiff", "x", "-n", "1")
    assert code == 0 and lines == ["1"]


# -- exit codes -------------------------------------------------------------------------

def test_no_answer_exits_one():
    assert cli("diff", "y")[:2] == (1, [])
    assert cli("simplify", "0^0")[:2] == (1, [])


def test_parse_error_exits_two():
    code, lines, err = cli("diff", "x +")
    assert (code, lines) == (2, [])
    assert "offset 3" in err


def test_solve_offsets_count_from_the_whole_equation():
    code, _, err = cli("solve", "--unknowns", "x", "x = 2 +")
    assert code == 2 and "offset 7" in err


@pytest.mark.parametrize("argv", [
    ["eval", "x"],                                    # unbound variable
    ["eval", "--env", "x=1", "--env", "x=2", "x"],    # bound twice
    ["solve", "x = 1"],                               # no unknowns
    ["solve", "--unknowns", "x", "x + 1"],            # no '='
    ["solve", "--unknowns", "x", "--env", "x=1", "x = 1"],
])
def test_usage_errors_exit_two(argv):
    assert cli(*argv)[0] == 2


@pytest.mark.parametrize("argv", [
    ["frobnicate", "x"],
    ["eval", "--env", "x=-1", "x"],
    ["eval", "--env", "x", "x"],
    ["diff", "-n", "0", "x"],
    ["diff", "--max-steps", "0", "x"],
    ["diff", "--format", "latex", "x"],
])
def test_argument_errors_exit_two(argv, capsys):
    assert cli(*argv)[0] == 2


def test_budget_exhaustion_exits_three_and_keeps_answers():
    code, lines, err = cli("complicate", "x", "-n", "all", "--max-steps", "200")
    assert code == 3 and lines and lines[0] == "x"
    assert "budget exhausted (steps) after 200 steps" in err
    assert f"{len(lines)} answer(s) shown" in err


def test_timeout_exits_three():
    code, _, err = cli("complicate", "x", "-n", "all", "--timeout", "50",
                       "--max-steps", "1000000000")
    assert code == 3 and "(timeout)" in err


# -- output modes -----------------------------------------------------------------------------

def test_json_output():
    code, lines, _ = cli("reorder", "1 + 2*3", "-n", "all", "--json")
    assert code == 0 and len(lines) == 1
    assert sorted(json.loads(lines[0])) == sorted(["1 + 2*3", "2*3 + 1", "1 + 3*2", "3*2 + 1"])


def test_sorted_output():
    code, lines, _ = cli("reorder", "1 + 2*3", "-n", "all", "--sorted")
    assert lines == sorted(lines) and len(lines) == 4


def test_bits_in_solutions():
    assert cli("solve", "--bits", "--unknowns", "z", "z*z = 9")[1] == ["z=(1 1)"]


def test_partial_numerals_print_as_sexpr():
    code, lines, _ = cli("integrate", "0", "-n", "3")
    assert code == 0 and "(num (_.0 . _.1))" in lines


def test_output_is_deterministic():
    argv = ("complicate", "x + 1", "-n", "8")
    assert cli(*argv) == cli(*argv)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "relcas", "eval", "--env", "x=3", "x*x"],
                          capture_output=True, text=True, check=False)
    assert (proc.returncode, proc.stdout) == (0, "9\n")


# -- budget monotonicity ----------------------------------------------------------------------------

@settings(max_examples=30)
@given(st.sampled_from(["x", "x + 1", "x*2", "1"]), st.integers(20, 400), st.integers(1, 400))
def test_larger_budgets_keep_earlier_answers_in_order(expr, small, extra):
    _, few, _ = cli("complicate", expr, "-n", "all", "--max-steps", str(small))
    _, more, _ = cli("complicate", expr, "-n", "all", "--max-steps", str(small + extra))
    assert more[:len(few)] == few

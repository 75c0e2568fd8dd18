"""Command-line front end.

Each subcommand wraps one query shape over the relations::

    relcas diff --var x "x^3 + x^0"          # x^2*3 + 0
    relcas integrate --var x "x*2" -n 1      # x^2
    relcas eval --env x=5 "x^2"              # 25
    relcas solve --unknowns x,y,z --positive "x^2 + y^2 = z*z"

Exit status: 0 when at least one answer was printed, 1 when the search
finished without answers, 2 on a parse or usage error, 3 when the step or
time budget ran out (answers found before that are still printed).
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from .arith import build_num, poso
from .dxo import anydo, do, evalo, reordero, simpo
from .kanren import BudgetExhausted, eq, fresh, iter_answers
from .surface import MAX_INT, ParseError, format_answer, format_numeral, parse, lower
from .terms import lst, to_pylist

COMMANDS = ("simplify", "complicate", "diff", "integrate", "eval", "solve",
            "reorder", "anydiff")
# deterministic queries show one answer unless asked for more
ONE_ANSWER = {"simplify", "diff", "eval"}
DEFAULT_MAX_STEPS = 10**6

_NAME = re.compile(r"[A-Za-z][A-Za-z0-9]*\Z")
_NAT = re.compile(r"[0-9]+\Z")


class UsageError(Exception):
    pass


# -- query builders -----------------------------------------------------------

def integrate_query(x, deriv):
    """Antiderivatives of ``deriv`` up to simplification and operand order.

    Candidate (expression, derivative) pairs come from running ``do``
    backward with both sides open; each derivative is simplified and
    matched against a reordering of the simplified input, so ``x*2``,
    ``2*x`` and ``x^1*2`` all integrate to ``x^2``.  Answers are simplified.
    """
    return lambda prim: fresh(lambda ecomp, dcomp, dsimp, dcs: [
        simpo(deriv, dsimp),
        do(x, ecomp, dcomp),
        simpo(dcomp, dcs),
        reordero(dcs, dsimp),
        simpo(ecomp, prim),
    ])


def solve_query(lhs, rhs, fixed, unknowns, positive):
    """Values of ``unknowns`` making both sides evaluate equal; ``fixed`` maps
    names to known naturals.

    Sides are evaluated left to right, except that a side free of unknowns
    goes first: its ground value turns the other side's arithmetic into a
    finite search.
    """
    if not _variables(rhs, set()) & set(unknowns):
        lhs, rhs = rhs, lhs

    def body(q):
        def goals(value, *vals):
            env = lst(*((name, v) for name, v in zip(unknowns, vals)),
                      *((name, build_num(n)) for name, n in fixed.items()))
            gs = [poso(v) for v in vals] if positive else []
            gs += [eq(q, lst(*vals)), evalo(env, lhs, value), evalo(env, rhs, value)]
            return gs
        return fresh(goals, arity=len(unknowns) + 1)
    return body


# -- argument handling ----------------------------------------------------------

def _count(text):
    if text == "all":
        return None
    if not _NAT.match(text) or int(text) < 1:
        raise argparse.ArgumentTypeError("expected a positive integer or 'all'")
    return int(text)


def _positive(text):
    if not _NAT.match(text) or int(text) < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return int(text)


def _binding(text):
    name, sep, value = text.partition("=")
    name, value = name.strip(), value.strip()
    if not sep or not _NAME.match(name) or not _NAT.match(value) or int(value) > MAX_INT:
        raise argparse.ArgumentTypeError(f"expected NAME=NATURAL, got {text!r}")
    return name, int(value)


def _names(text):
    names = [n.strip() for n in text.split(",") if n.strip()]
    if not names or not all(_NAME.match(n) for n in names):
        raise argparse.ArgumentTypeError(f"expected NAME[,NAME...], got {text!r}")
    return names


def build_parser():
    p = argparse.ArgumentParser(
        prog="relcas",
        description="Relational computer algebra: simplify, differentiate, "
                    "integrate, evaluate, solve and reorder expressions.")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")
    helps = {
        "simplify": "simplify an expression",
        "complicate": "list expressions that simplify to EXPR",
        "diff": "differentiate a polynomial",
        "integrate": "list antiderivatives of a polynomial",
        "eval": "evaluate under --env bindings",
        "solve": "find values of --unknowns satisfying 'LHS = RHS'",
        "reorder": "list operand reorderings",
        "anydiff": "derivatives up to simplification and reordering; "
                   "with DERIV, check the pair",
    }
    for name in COMMANDS:
        c = sub.add_parser(name, help=helps[name])
        c.add_argument("expr", metavar="EXPR")
        if name == "anydiff":
            c.add_argument("deriv", metavar="DERIV", nargs="?")
        c.add_argument("--var", default="x", metavar="NAME",
                       help="variable of differentiation (default x)")
        c.add_argument("--env", action="append", type=_binding, default=[],
                       metavar="NAME=NAT", help="bind a variable; repeatable")
        c.add_argument("--unknowns", type=_names, default=[], metavar="NAME,...")
        c.add_argument("--positive", action="store_true",
                       help="solve: restrict unknowns to positive values")
        # 0 marks "not given"; 'all' parses to None
        c.add_argument("-n", dest="count", type=_count, default=0,
                       metavar="COUNT|all")
        c.add_argument("--max-steps", type=_positive, default=DEFAULT_MAX_STEPS)
        c.add_argument("--timeout", type=_positive, default=None, metavar="MS")
        c.add_argument("--format", choices=("infix", "sexpr"), default="infix")
        c.add_argument("--bits", action="store_true",
                       help="print numerals as little-endian bit lists")
        c.add_argument("--json", action="store_true")
        c.add_argument("--sorted", action="store_true")
    return p


def _parse_at(text, base=0):
    try:
        return lower(parse(text))
    except ParseError as exc:
        if base:
            exc.offset += base
        raise


def _variables(t, out):
    items = to_pylist(t)
    if not items:
        return out
    if items[0] == "var" and len(items) == 2:
        out.add(items[1])
        return out
    for item in items[1:]:
        _variables(item, out)
    return out


def plan(args):
    """Return ``(query_body, formatter)`` for parsed arguments."""
    cmd = args.command
    decimal = not args.bits

    def fmt_expr(t):
        return format_answer(t, args.format, decimal)

    if cmd == "solve":
        lhs_text, sep, rhs_text = args.expr.partition("=")
        if not sep:
            raise UsageError("solve expects an equation 'LHS = RHS'")
        lhs = _parse_at(lhs_text)
        rhs = _parse_at(rhs_text, len(lhs_text.encode("utf-8", "surrogatepass")) + 1)
        if not args.unknowns:
            raise UsageError("solve needs --unknowns")
        fixed = _env(args)
        overlap = set(fixed) & set(args.unknowns)
        if overlap:
            raise UsageError(f"bound and unknown: {', '.join(sorted(overlap))}")
        _check_bound(_variables(rhs, _variables(lhs, set())),
                     set(fixed) | set(args.unknowns))
        names = args.unknowns

        def fmt_solution(t):
            return " ".join(f"{name}={format_numeral(v, decimal)}"
                            for name, v in zip(names, to_pylist(t)))
        return solve_query(lhs, rhs, fixed, names, args.positive), fmt_solution

    e = _parse_at(args.expr)
    if cmd == "simplify":
        return (lambda q: simpo(e, q)), fmt_expr
    if cmd == "complicate":
        return (lambda q: simpo(q, e)), fmt_expr
    if cmd == "diff":
        return (lambda q: do(args.var, e, q)), fmt_expr
    if cmd == "integrate":
        return integrate_query(args.var, e), fmt_expr
    if cmd == "reorder":
        return (lambda q: reordero(e, q)), fmt_expr
    if cmd == "eval":
        fixed = _env(args)
        _check_bound(_variables(e, set()), set(fixed))
        env = lst(*((name, build_num(n)) for name, n in fixed.items()))
        return (lambda q: evalo(env, e, q)), (lambda n: format_numeral(n, decimal))
    # anydiff
    if args.deriv is None:
        return (lambda q: anydo(e, q, args.var)), fmt_expr
    d = _parse_at(args.deriv)
    return (lambda q: anydo(e, d, args.var)), (lambda _: "yes")


def _env(args):
    fixed = {}
    for name, value in args.env:
        if name in fixed:
            raise UsageError(f"variable {name} bound twice")
        fixed[name] = value
    return fixed


def _check_bound(used, bound):
    missing = used - bound
    if missing:
        raise UsageError(f"no value for variable(s): {', '.join(sorted(missing))}")


def collect(body, count, max_steps, timeout_ms):
    """Distinct answers in engine order, plus the BudgetExhausted that cut the
    search short, if any."""
    answers, seen = [], set()
    timeout = None if timeout_ms is None else timeout_ms / 1000
    try:
        for a in iter_answers(body, max_steps=max_steps, timeout=timeout):
            if a in seen:
                continue
            seen.add(a)
            answers.append(a)
            if count is not None and len(answers) >= count:
                break
    except BudgetExhausted as exc:
        return answers, exc
    return answers, None


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.count == 0:
        checking = args.command == "anydiff" and args.deriv is not None
        args.count = 1 if args.command in ONE_ANSWER or checking else 10
    try:
        body, fmt = plan(args)
    except ParseError as exc:
        print(f"relcas: parse error: {exc}", file=stderr)
        return 2
    except UsageError as exc:
        print(f"relcas: {exc}", file=stderr)
        return 2

    answers, exhausted = collect(body, args.count, args.max_steps, args.timeout)
    lines = [fmt(a) for a in answers]
    if args.sorted:
        lines.sort()
    if args.json:
        print(json.dumps(lines), file=stdout)
    else:
        for line in lines:
            print(line, file=stdout)
    if exhausted is not None:
        print(f"relcas: budget exhausted ({exhausted.reason}) after "
              f"{exhausted.steps} steps; {len(lines)} answer(s) shown", file=stderr)
        return 3
    return 0 if lines else 1


if __name__ == "__main__":
    sys.exit(main())

"""Relational computer algebra on an embedded miniKanren-style engine."""

from .arith import build_num, expo, minuso, pluso, poso, timeso
from .dxo import anydo, do, doitallevalo, evalo, multruleo, reordero, simpo
from .expr import ONE, ZERO, make_env, num, numeral_to_int, var
from .kanren import (BudgetExhausted, conde, eq, fresh, iter_answers, neq, run,
                     run_all, symbolo)
from .surface import ParseError, format_answer, parse, parse_expr
from .terms import NIL, ReifiedVar, Var, lst, read, show

__all__ = [
    "BudgetExhausted", "NIL", "ONE", "ParseError", "ReifiedVar", "Var", "ZERO",
    "anydo", "build_num", "conde", "do", "doitallevalo", "eq", "evalo", "expo",
    "format_answer", "fresh", "iter_answers", "lst", "make_env", "minuso",
    "multruleo", "neq", "num", "numeral_to_int", "parse", "parse_expr", "pluso",
    "poso", "read", "reordero", "run", "run_all", "show", "simpo", "symbolo",
    "timeso", "var",
]

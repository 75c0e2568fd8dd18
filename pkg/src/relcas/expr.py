"""Expression terms, environments, and small list relations.

Expressions are tagged list terms::

    (num <numeral>) | (var <symbol>) | (+ e ...) | (* e ...) | (^ e e)

An environment is an association list ``((name . numeral) ...)``; lookup
finds the first binding.
"""

from __future__ import annotations

from .arith import build_num
from .kanren import conde, eq, fresh, neq, relation
from .terms import NIL, lst, to_pylist

ZERO = lst("num", build_num(0))
ONE = lst("num", build_num(1))


def num(n: int):
    return lst("num", build_num(n))


def var(name: str):
    return lst("var", name)


def make_env(bindings) -> tuple:
    """Association-list term from ``{name: int}`` or ``[(name, int), ...]``."""
    items = bindings.items() if isinstance(bindings, dict) else bindings
    return lst(*((name, build_num(value)) for name, value in items))


# -- relations ----------------------------------------------------------------

@relation
def typeo(expr, tag):
    return fresh(lambda a, b: conde(
        [eq((a, b), expr), eq("list", tag), neq("num", a), neq("var", a)],
        [eq(NIL, expr), eq("null", tag)],
        [eq(lst("num", a), expr), eq("atom", tag)],
        [eq(lst("var", a), expr), eq("atom", tag)],
        [eq("+", expr), eq("+or*", tag)],
        [eq("*", expr), eq("+or*", tag)],
    ))


@relation
def numo(n):
    return fresh(lambda b, rest: conde(
        [eq(NIL, n)],
        [eq((b, rest), n),
         conde([eq(1, b)], [eq(0, b)]),
         numo(rest)],
    ))


@relation
def lookupo(x, env, v):
    return fresh(lambda rest, y, w: conde(
        [eq(((x, v), rest), env)],
        [eq(((y, w), rest), env), neq(y, x), lookupo(x, rest, v)],
    ))


@relation
def membero(item, l):
    return fresh(lambda a, rest: conde(
        [eq((item, rest), l)],
        [eq((a, rest), l), neq(item, a), membero(item, rest)],
    ))


@relation
def notmembero(item, l):
    return fresh(lambda a, rest: conde(
        [eq(NIL, l)],
        [eq((a, rest), l), neq(a, item), notmembero(item, rest)],
    ))


@relation
def removeo(item, contain, removed):
    return fresh(lambda rest, rest2, c: conde(
        [eq((item, rest), contain), eq(rest, removed)],
        [eq((c, rest), contain),
         neq(item, c),
         eq((c, rest2), removed),
         removeo(item, rest, rest2)],
    ))


@relation
def samelengtho(l1, l2):
    return conde(
        [eq(NIL, l1), eq(NIL, l2)],
        fresh(lambda a, d, b, e: [
            eq((a, d), l1),
            eq((b, e), l2),
            samelengtho(d, e),
        ]),
    )


# -- host-side conversions ------------------------------------------------------

def numeral_to_int(n) -> int:
    """Value of a ground bit list, canonical or not."""
    total, weight = 0, 1
    while type(n) is tuple and n:
        bit = n[0]
        if type(bit) is not int or bit not in (0, 1):
            raise ValueError(f"not a bit: {bit!r}")
        total += weight * bit
        weight <<= 1
        n = n[1]
    if n != ():
        raise ValueError("numeral is not a proper list")
    return total


def is_ground_numeral(n) -> bool:
    while type(n) is tuple and n:
        if type(n[0]) is not int or n[0] not in (0, 1):
            return False
        n = n[1]
    return n == ()


def to_decimal_form(expr):
    """Rewrite every ``(num bits)`` with a ground payload to ``(num N)``.

    Non-expression shapes pass through untouched so partially unbound
    answers can still be displayed.
    """
    items = to_pylist(expr)
    if not items:
        return expr
    head = items[0]
    if head == "num" and len(items) == 2 and is_ground_numeral(items[1]):
        return lst("num", numeral_to_int(items[1]))
    if head in ("+", "*", "^"):
        return lst(head, *(to_decimal_form(e) for e in items[1:]))
    return expr


# -- grammar recognizers ----------------------------------------------------------

def is_canonical_numeral(n) -> bool:
    items = to_pylist(n)
    return (items is not None and all(type(b) is int and b in (0, 1) for b in items)
            and (not items or items[-1] == 1))


def _is_leaf(e) -> bool:
    items = to_pylist(e)
    if not items or len(items) != 2:
        return False
    if items[0] == "num":
        return is_canonical_numeral(items[1])
    return items[0] == "var" and type(items[1]) is str


def is_dxo_expr(e) -> bool:
    """Membership in the general expression grammar (ground terms only)."""
    if _is_leaf(e):
        return True
    items = to_pylist(e)
    if not items:
        return False
    op, args = items[0], items[1:]
    if op in ("+", "*"):
        return len(args) >= 1 and all(is_dxo_expr(a) for a in args)
    if op == "^":
        return len(args) == 2 and all(is_dxo_expr(a) for a in args)
    return False


def is_poly_expr(e) -> bool:
    """Membership in the polynomial grammar accepted by differentiation."""
    if _is_leaf(e):
        return True
    items = to_pylist(e)
    if not items:
        return False
    op, args = items[0], items[1:]
    if op in ("+", "*"):
        return len(args) >= 1 and all(is_poly_expr(a) for a in args)
    if op == "^":
        return (len(args) == 2 and _is_leaf(args[0]) and _is_leaf(args[1])
                and to_pylist(args[1])[0] == "num")
    return False

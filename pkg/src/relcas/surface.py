"""Infix surface syntax: parsing, lowering to expression terms, printing.

Grammar, loosest binding first::

    sum     := product ('+' product)*
    product := power ('*' power)*
    power   := atom ('^' power)?          # right-associative
    atom    := INTEGER | IDENT | '(' sum ')'

Unparenthesized chains of ``+`` or ``*`` become one n-ary node; a
parenthesized operand stays nested, so ``(a+b)+c`` keeps its inner sum.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import build_num
from .expr import is_ground_numeral, numeral_to_int
from .terms import ReifiedVar, Var, lst, show, to_pylist

MAX_INT = 2**63 - 1


class ParseError(ValueError):
    def __init__(self, message: str, offset: int, expected: frozenset = frozenset()):
        super().__init__(message)
        self.message = message
        self.offset = offset
        self.expected = expected

    def __str__(self) -> str:
        text = f"{self.message} at offset {self.offset}"
        if self.expected:
            text += f" (expected {', '.join(sorted(self.expected))})"
        return text


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Name:
    name: str


@dataclass(frozen=True)
class Op:
    op: str
    args: tuple


SurfaceExpr = Num | Name | Op

_ATOM_START = frozenset({"integer", "identifier", "("})


def _is_digit(c: str) -> bool:
    return "0" <= c <= "9"


def _is_letter(c: str) -> bool:
    return "a" <= c <= "z" or "A" <= c <= "Z"


def _tokenize(text: str):
    """Yield ``(kind, value, char_index)``; kind is 'int', 'ident', an
    operator character, or 'end'."""
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c in " \t\r\n":
            i += 1
        elif _is_digit(c):
            j = i
            while j < n and _is_digit(text[j]):
                j += 1
            yield "int", text[i:j], i
            i = j
        elif _is_letter(c):
            j = i
            while j < n and (_is_letter(text[j]) or _is_digit(text[j])):
                j += 1
            yield "ident", text[i:j], i
            i = j
        elif c in "+*^()":
            yield c, c, i
            i += 1
        else:
            yield "bad", c, i
            i += 1
    yield "end", "", n


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = list(_tokenize(text))
        self.pos = 0

    def offset(self, index: int) -> int:
        return len(self.text[:index].encode("utf-8", "surrogatepass"))

    def peek(self):
        return self.tokens[self.pos]

    def error(self, message, expected):
        kind, value, index = self.peek()
        if kind == "bad":
            message = f"unexpected character {value!r}"
        elif kind == "end":
            message = f"{message}: unexpected end of input"
        else:
            message = f"{message}: unexpected {value!r}"
        raise ParseError(message, self.offset(index), frozenset(expected))

    def chain(self, op, operand):
        first = operand()
        args = [first]
        while self.peek()[0] == op:
            self.pos += 1
            args.append(operand())
        return first if len(args) == 1 else Op(op, tuple(args))

    def sum(self):
        return self.chain("+", self.product)

    def product(self):
        return self.chain("*", self.power)

    def power(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.pos += 1
            return Op("^", (base, self.power()))
        return base

    def atom(self):
        kind, value, index = self.peek()
        if kind == "int":
            number = int(value)
            if number > MAX_INT:
                raise ParseError("integer literal too large", self.offset(index),
                                 frozenset({"integer <= 2^63-1"}))
            self.pos += 1
            return Num(number)
        if kind == "ident":
            self.pos += 1
            return Name(value)
        if kind == "(":
            self.pos += 1
            inner = self.sum()
            if self.peek()[0] != ")":
                self.error("unclosed parenthesis", {")", "+", "*", "^"})
            self.pos += 1
            return inner
        self.error("expected an operand", _ATOM_START)


def parse(text: str) -> SurfaceExpr:
    """Parse infix text; raises ParseError on any malformed input."""
    p = _Parser(text)
    tree = p.sum()
    if p.peek()[0] != "end":
        p.error("unexpected trailing input", {"+", "*", "^", "end of input"})
    return tree


def lower(tree: SurfaceExpr):
    """Surface tree to expression term."""
    if isinstance(tree, Num):
        return lst("num", build_num(tree.value))
    if isinstance(tree, Name):
        return lst("var", tree.name)
    return lst(tree.op, *(lower(a) for a in tree.args))


def parse_expr(text: str):
    return lower(parse(text))


# -- printing ---------------------------------------------------------------

def _numeral_text(n, decimal: bool) -> str:
    if decimal and is_ground_numeral(n):
        return str(numeral_to_int(n))
    return show(n)


def _sexpr(t, decimal: bool) -> str:
    """S-expression text; ``decimal`` rewrites ground ``(num bits)``."""
    items = to_pylist(t)
    if items is not None and len(items) == 2 and items[0] == "num":
        return f"(num {_numeral_text(items[1], decimal)})"
    if items:
        return "(" + " ".join(_sexpr(i, decimal) for i in items) + ")"
    if type(t) is tuple and t:
        # improper list
        parts = []
        while type(t) is tuple and t:
            parts.append(_sexpr(t[0], decimal))
            t = t[1]
        return "(" + " ".join(parts) + " . " + _sexpr(t, decimal) + ")"
    return show(t)


def _kind(t):
    """Infix node kind of ``t``, or None when it has no infix form."""
    items = to_pylist(t)
    if not items:
        return None
    head = items[0]
    if len(items) == 2 and head == "num" and is_ground_numeral(items[1]):
        return "num"
    if len(items) == 2 and head == "var" and type(items[1]) is str:
        return "var"
    if head in ("+", "*") and len(items) >= 3:
        return head
    if head == "^" and len(items) == 3:
        return "^"
    return None


def _infix(t, decimal: bool) -> str:
    kind = _kind(t)
    if kind is None:
        return _sexpr(t, decimal)
    items = to_pylist(t)
    if kind == "num":
        return _numeral_text(items[1], decimal)
    if kind == "var":
        return items[1]

    def wrap(child, loose):
        text = _infix(child, decimal)
        return f"({text})" if _kind(child) in loose else text

    if kind == "+":
        return " + ".join(wrap(c, {"+"}) for c in items[1:])
    if kind == "*":
        return "*".join(wrap(c, {"+", "*"}) for c in items[1:])
    base, exponent = items[1], items[2]
    return wrap(base, {"+", "*", "^"}) + "^" + wrap(exponent, {"+", "*"})


def format_answer(t, mode: str = "infix", decimal: bool = True) -> str:
    """Render a reified answer.

    ``infix`` with decimal numerals is the human form; ``sexpr`` with
    ``decimal=False`` is the raw term syntax.  Subterms with no infix form
    (partially unknown numerals, single-operand sums) fall back to
    s-expressions.
    """
    if mode == "sexpr":
        return _sexpr(t, decimal)
    if mode != "infix":
        raise ValueError(f"unknown format {mode!r}")
    return _infix(t, decimal)


def format_numeral(n, decimal: bool = True) -> str:
    return _numeral_text(n, decimal)


def contains_unbound(t) -> bool:
    if isinstance(t, (ReifiedVar, Var)):
        return True
    while type(t) is tuple and t:
        if contains_unbound(t[0]):
            return True
        t = t[1]
    return isinstance(t, (ReifiedVar, Var))

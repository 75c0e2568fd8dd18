"""Term representation and s-expression I/O.

Terms are plain Python values so the hot paths stay cheap:

* ``Var``                     logic variable
* ``str``                     symbol
* ``0`` / ``1`` (``int``)     bit
* ``()``                      the empty list
* ``(head, tail)``            a pair (always a 2-tuple)

``ReifiedVar`` only appears in reified answers and prints as ``_.N``.
"""

from __future__ import annotations

from dataclasses import dataclass

NIL = ()


class Var:
    __slots__ = ("id",)

    def __init__(self, id: int):
        self.id = id

    def __repr__(self) -> str:
        return f"<var {self.id}>"


@dataclass(frozen=True)
class ReifiedVar:
    index: int

    def __repr__(self) -> str:
        return f"_.{self.index}"


def cons(head, tail):
    return (head, tail)


def lst(*items, tail=NIL):
    """Build a proper list term (or an improper one ending in ``tail``)."""
    out = tail
    for item in reversed(items):
        out = (item, out)
    return out


def is_pair(t) -> bool:
    return type(t) is tuple and len(t) == 2


def to_pylist(t) -> list | None:
    """Elements of a proper list term, or None if ``t`` is not one."""
    out = []
    while type(t) is tuple and t:
        out.append(t[0])
        t = t[1]
    return out if t == () else None


# -- printing ---------------------------------------------------------------

def show(t) -> str:
    if type(t) is tuple:
        if not t:
            return "()"
        parts = []
        while type(t) is tuple and t:
            parts.append(show(t[0]))
            t = t[1]
        if t != ():
            parts.append(".")
            parts.append(show(t))
        return "(" + " ".join(parts) + ")"
    if type(t) is Var:
        return f"_{t.id}"
    return str(t) if not isinstance(t, ReifiedVar) else repr(t)


# -- reading ----------------------------------------------------------------

class SexprError(ValueError):
    pass


def _tokens(text: str):
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif c in "()'":
            yield c
            i += 1
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in "()'":
                j += 1
            yield text[i:j]
            i = j


def read(text: str):
    """Parse one s-expression. ``0``/``1`` read as bits, ``_.N`` as ReifiedVar."""
    toks = list(_tokens(text))
    pos = 0

    def atom(tok):
        if tok in ("0", "1"):
            return int(tok)
        if tok.startswith("_.") and tok[2:].isdigit():
            return ReifiedVar(int(tok[2:]))
        return tok

    def parse():
        nonlocal pos
        if pos >= len(toks):
            raise SexprError("unexpected end of input")
        tok = toks[pos]
        pos += 1
        if tok == "'":
            return parse()
        if tok == ")":
            raise SexprError("unexpected ')'")
        if tok != "(":
            return atom(tok)
        items = []
        tail = NIL
        while True:
            if pos >= len(toks):
                raise SexprError("unclosed '('")
            if toks[pos] == ")":
                pos += 1
                break
            if toks[pos] == ".":
                pos += 1
                tail = parse()
                if pos >= len(toks) or toks[pos] != ")":
                    raise SexprError("expected ')' after dotted tail")
                pos += 1
                break
            items.append(parse())
        return lst(*items, tail=tail)

    result = parse()
    if pos != len(toks):
        raise SexprError("trailing input")
    return result

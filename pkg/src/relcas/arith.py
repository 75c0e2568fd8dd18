"""Reversible arithmetic over little-endian binary numerals.

A numeral is a list term of bits, least significant first; ``()`` is zero
and a canonical numeral never ends in 0.  The relations follow Kiselyov's
construction: bounded multiplication keeps ``timeso`` finite whenever the
product is known.
"""

from __future__ import annotations

from .kanren import conde, eq, finite_conde, fresh, neq, relation
from .terms import NIL, lst

ONE_BITS = lst(1)


def build_num(n: int):
    if n < 0:
        raise ValueError("numerals are natural numbers")
    bits = []
    while n:
        bits.append(n & 1)
        n >>= 1
    return lst(*bits)


# The adder table never diverges, so it runs without suspending.

def poso(n):
    return fresh(lambda a, d: eq((a, d), n))


def gt1o(n):
    return fresh(lambda a, ad, dd: eq((a, (ad, dd)), n))


# rows of (carry-in, x, y, sum, carry-out)
_ADDER_ROWS = tuple(
    lst(b, x, y, (b + x + y) & 1, (b + x + y) >> 1)
    for y in (0, 1) for x in (0, 1) for b in (0, 1)
)


def full_addero(b, x, y, r, c):
    args = lst(b, x, y, r, c)
    return finite_conde(*(eq(args, row) for row in _ADDER_ROWS))


@relation
def addero(d, n, m, r):
    return conde(
        [eq(0, d), eq(NIL, m), eq(n, r)],
        [eq(0, d), eq(NIL, n), eq(m, r), poso(m)],
        [eq(1, d), eq(NIL, m), addero(0, n, ONE_BITS, r)],
        [eq(1, d), eq(NIL, n), poso(m), addero(0, ONE_BITS, m, r)],
        [eq(ONE_BITS, n), eq(ONE_BITS, m),
         fresh(lambda a, c: [eq(lst(a, c), r), full_addero(d, 1, 1, a, c)])],
        [eq(ONE_BITS, n), gen_addero(d, n, m, r)],
        [eq(ONE_BITS, m), gt1o(n), gt1o(r), addero(d, ONE_BITS, n, r)],
        [gt1o(n), gen_addero(d, n, m, r)],
    )


@relation
def gen_addero(d, n, m, r):
    return fresh(lambda a, b, c, e, x, y, z: [
        eq((a, x), n),
        eq((b, y), m), poso(y),
        eq((c, z), r), poso(z),
        full_addero(d, a, b, c, e),
        addero(e, x, y, z),
    ])


def pluso(n, m, k):
    return addero(0, n, m, k)


def minuso(n, m, k):
    return pluso(m, k, n)


@relation
def timeso(n, m, p):
    return conde(
        [eq(NIL, n), eq(NIL, p)],
        [poso(n), eq(NIL, m), eq(NIL, p)],
        [eq(ONE_BITS, n), poso(m), eq(m, p)],
        [gt1o(n), eq(ONE_BITS, m), eq(n, p)],
        fresh(lambda x, z: [
            eq((0, x), n), poso(x),
            eq((0, z), p), poso(z),
            gt1o(m),
            timeso(x, m, z),
        ]),
        fresh(lambda x, y: [
            eq((1, x), n), poso(x),
            eq((0, y), m), poso(y),
            timeso(m, n, p),
        ]),
        fresh(lambda x, y: [
            eq((1, x), n), poso(x),
            eq((1, y), m), poso(y),
            odd_timeso(x, n, m, p),
        ]),
    )


@relation
def odd_timeso(x, n, m, p):
    return fresh(lambda q: [
        bound_timeso(q, p, n, m),
        timeso(x, m, q),
        pluso((0, q), m, p),
    ])


@relation
def bound_timeso(q, p, n, m):
    return conde(
        [eq(NIL, q), poso(p)],
        fresh(lambda a0, a1, a2, a3, x, y, z: [
            eq((a0, x), q),
            eq((a1, y), p),
            conde(
                [eq(NIL, n), eq((a2, z), m), bound_timeso(x, y, z, NIL)],
                [eq((a3, z), n), bound_timeso(x, y, z, m)],
            ),
        ]),
    )


@relation
def expo(a, b, c):
    """``a ** b == c``; ``b == 0`` relates ``c`` to one, including 0**0."""
    return fresh(lambda bm1, rec: conde(
        [eq(build_num(0), b), eq(build_num(1), c)],
        [neq(build_num(0), b),
         pluso(bm1, build_num(1), b),
         expo(a, bm1, rec),
         timeso(a, rec, c)],
    ))


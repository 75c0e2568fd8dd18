"""Simplification, differentiation, evaluation and reordering relations.

Clause order inside each relation is significant: it decides which answers
come first and which backward queries terminate.
"""

from __future__ import annotations

from .arith import build_num, expo, minuso, pluso, poso, timeso
from .expr import ONE, ZERO, lookupo, numo, removeo, samelengtho, typeo
from .kanren import conde, eq, fresh, groundness_branch, neq, relation, symbolo
from .terms import NIL, lst


def _tagged(tag, payload):
    return lst(tag, payload)


@relation
def simpo(comp, simp):
    """``simp`` is the fully simplified form of ``comp``.

    Applies v+0=v, v*0=0, v*1=v, v^0=1 (v not 0), v^1=v, 0^v=0 (v not 0) and
    1^v=1 at every level.  Forward use succeeds at most once; an input whose
    subterms simplify to 0^0 has no answer.
    """
    return fresh(lambda: conde(
        fresh(lambda n: [eq(_tagged("num", n), comp), eq(comp, simp)]),
        fresh(lambda v: [eq(_tagged("var", v), comp), eq(comp, simp)]),
        fresh(lambda e1, e2, s1, s2: [
            eq(lst("^", e1, e2), comp),
            conde(
                [eq(ONE, s1), eq(ONE, simp)],
                [eq(ZERO, s1), neq(ZERO, s2), eq(ZERO, simp)],
                [neq(ZERO, s1), eq(ZERO, s2), neq(ONE, s1), eq(ONE, simp)],
                [neq(ZERO, s1), neq(ONE, s1), eq(ONE, s2), eq(s1, simp)],
                [eq(lst("^", s1, s2), simp),
                 neq(ONE, s1), neq(ONE, s2), neq(ZERO, s1), neq(ZERO, s2)],
            ),
            simpo(e1, s1),
            simpo(e2, s2),
        ]),
        fresh(lambda e, es, s, temp, ts, n, v: [
            eq(("*", (e, es)), comp),
            conde(
                [eq(NIL, es), simpo(e, simp)],
                [eq(ZERO, s), neq(NIL, es), eq(ZERO, simp)],
                [eq(ONE, s), neq(NIL, es), simpo(("*", es), simp)],
                [neq(ONE, s), neq(ZERO, s), neq(NIL, es),
                 conde(
                     [eq(ZERO, temp), eq(ZERO, simp)],
                     [eq(ONE, temp), eq(s, simp)],
                     [eq(("^", n), temp), eq(lst("*", s, temp), simp)],
                     [eq(("+", n), temp), eq(lst("*", s, temp), simp)],
                     [eq(_tagged("num", n), temp), neq(ZERO, temp),
                      neq(ONE, temp), eq(lst("*", s, temp), simp)],
                     [eq(_tagged("var", v), temp), eq(lst("*", s, temp), simp)],
                     [eq(("*", ts), temp), eq(("*", (s, ts)), simp)],
                 ),
                 simpo(("*", es), temp)],
            ),
            simpo(e, s),
        ]),
        fresh(lambda e, es, s, temp, ts, n, v: [
            eq(("+", (e, es)), comp),
            conde(
                [eq(NIL, es), simpo(e, simp)],
                [eq(ZERO, s), neq(NIL, es), simpo(("+", es), simp)],
                [neq(ZERO, s), neq(NIL, es),
                 conde(
                     [eq(ZERO, temp), eq(s, simp)],
                     [eq(("^", n), temp), eq(lst("+", s, temp), simp)],
                     [eq(("*", n), temp), eq(lst("+", s, temp), simp)],
                     [eq(_tagged("num", n), temp), neq(ZERO, temp),
                      eq(lst("+", s, temp), simp)],
                     [eq(_tagged("var", v), temp), eq(lst("+", s, temp), simp)],
                     [eq(("+", ts), temp), eq(("+", (s, ts)), simp)],
                 ),
                 simpo(("+", es), temp)],
            ),
            simpo(e, s),
        ]),
    ))


@relation
def do(x, expr, deriv):
    """``deriv`` is the derivative of the polynomial ``expr`` in ``x``.

    The derivative comes out in one canonical shape, e.g. x^3 + x^0 gives
    (x^2 * 3) + 0; use reordering and simplification to relate other shapes.
    Only ``x`` may occur as a variable.
    """
    x0 = lst("^", _tagged("var", x), _tagged("num", build_num(0)))
    return fresh(lambda: [
        symbolo(x),
        conde(
            fresh(lambda ds, es, a, b, c, d: [
                eq(expr, ("+", es)), eq(es, (a, b)),
                eq(deriv, ("+", ds)), eq(ds, (c, d)),
                samelengtho(es, ds),
                map_do_o(x, es, ds),
            ]),
            fresh(lambda: [eq(expr, x0), eq(deriv, ZERO)]),
            fresh(lambda l, e: [eq(expr, ("*", l)), multruleo(x, l, deriv)]),
            fresh(lambda k, km1: [
                eq(expr, lst("^", _tagged("var", x), _tagged("num", k))),
                eq(deriv, lst("*", lst("^", _tagged("var", x), _tagged("num", km1)),
                              _tagged("num", k))),
                minuso(k, build_num(1), km1),
            ]),
            fresh(lambda k1, k2: [
                eq(expr, lst("^", _tagged("num", k1), _tagged("num", k2))),
                eq(deriv, ZERO),
                # the second branch compares a bare numeral with the tagged
                # ZERO, so only a positive base gets through
                conde([poso(k1)], [eq(ZERO, k1), poso(k2)]),
            ]),
            fresh(lambda: [eq(expr, _tagged("var", x)), eq(deriv, ONE)]),
            fresh(lambda k: [eq(expr, _tagged("num", k)), eq(deriv, ZERO)]),
        ),
    ])


@relation
def multruleo(x, l, dd):
    """Product rule over the operand list ``l`` of a product."""
    return fresh(lambda e, es, d, ds, a, b: conde(
        [eq(l, lst(e)), do(x, e, dd)],
        [eq(l, (e, es)),
         eq(es, (a, b)),
         eq(dd, lst("+", ("*", (d, es)), lst("*", e, ds))),
         do(x, e, d),
         multruleo(x, es, ds)],
    ))


@relation
def map_do_o(x, exprs, outputs):
    return fresh(lambda es, e, out, outs: conde(
        [eq(exprs, NIL), eq(outputs, NIL)],
        [eq(exprs, (e, es)),
         eq(outputs, (out, outs)),
         do(x, e, out),
         map_do_o(x, es, outs)],
    ))


@relation
def evalo(env, expr, value):
    """``value`` is the numeral ``expr`` evaluates to under ``env``."""
    return fresh(lambda m, x, c, a, b, rest, evc, evrest, eva, evb: conde(
        [eq(_tagged("var", x), expr), lookupo(x, env, value)],
        [eq(_tagged("num", m), expr), numo(m), eq(m, value)],
        [eq(("+", (c, rest)), expr),
         conde(
             [eq(NIL, rest), evalo(env, c, value)],
             [neq(NIL, rest),
              evalo(env, c, evc),
              evalo(env, ("+", rest), evrest),
              pluso(evc, evrest, value)],
         )],
        [eq(("*", (c, rest)), expr),
         conde(
             [eq(NIL, rest), evalo(env, c, value)],
             [neq(NIL, rest),
              evalo(env, c, evc),
              evalo(env, ("*", rest), evrest),
              timeso(evc, evrest, value)],
         )],
        [eq(lst("^", a, b), expr),
         evalo(env, a, eva),
         evalo(env, b, evb),
         expo(eva, evb, value)],
    ))


@relation
def reordero(e1, e2):
    """``e2`` is ``e1`` with the operands of any sum or product permuted,
    at every depth."""
    return fresh(lambda: conde(
        [eq(e1, e2), typeo(e1, "atom")],
        fresh(lambda o, e1s, e2s: [
            eq((o, e1s), e1),
            eq((o, e2s), e2),
            typeo(o, "+or*"),
            reorderitemso(e1s, e2s),
        ]),
        fresh(lambda a1, b1, a2, b2: [
            eq(lst("^", a1, b1), e1),
            eq(lst("^", a2, b2), e2),
            reordero(a1, a2),
            reordero(b1, b2),
        ]),
    ))


@relation
def reorderitemso(e1s, e2s):
    # the length check first keeps the permutation search finite
    return fresh(lambda: [samelengtho(e1s, e2s), reorderinnero(e1s, e2s)])


@relation
def reorderinnero(e1s, e2s):
    return fresh(lambda c1, rc1, rest1, rest2: conde(
        [eq(NIL, e1s), eq(NIL, e2s)],
        [eq((c1, rest1), e1s),
         removeo(rc1, e2s, rest2),
         reorderinnero(rest1, rest2),
         reordero(c1, rc1)],
    ))


@relation
def anydo(expr, deriv, x):
    """Like ``do`` but up to simplification and reordering of both sides.

    Goal order depends on whether ``expr`` is unbound when the goal runs:
    starting from the derivative side is what lets integration terminate.
    """
    return fresh(lambda ecomp, dcomp, esimp, dsimp, dcorder: groundness_branch(
        expr,
        fresh(lambda: [
            simpo(deriv, dsimp),
            simpo(dcorder, dsimp),
            reordero(dcomp, dcorder),
            do(x, ecomp, dcomp),
            simpo(ecomp, esimp),
            simpo(expr, esimp),
        ]),
        fresh(lambda: [
            simpo(expr, esimp),
            simpo(ecomp, esimp),
            do(x, ecomp, dcomp),
            reordero(dcomp, dcorder),
            simpo(dcorder, dsimp),
            simpo(deriv, dsimp),
        ]),
    ))


@relation
def doitallevalo(ieval, inte, deriv, deval, x, env):
    return fresh(lambda icomp, dcomp, isimp, dsimp, dcorder: [
        evalo(env, inte, ieval),
        evalo(env, deriv, deval),
        do(x, icomp, dcomp),
        reordero(dcomp, dcorder),
        simpo(deriv, dsimp),
        simpo(dcorder, dsimp),
        simpo(inte, isimp),
        simpo(icomp, isimp),
    ])

"""Embedded relational engine.

Goals are callables ``State -> stream``.  A stream is one of

* ``None``                  no answers
* ``State``                 exactly one answer
* ``(State, suspension)``   an answer followed by more
* a zero-argument callable  a suspension producing a stream

Disjunction interleaves suspended streams so a diverging branch cannot
starve a productive one.  Only ``conde`` suspends; ``fresh`` runs its body
at once.  One suspension per disjunction is enough for fairness because
every recursive relation recurs from inside a ``conde`` clause.
"""

from __future__ import annotations

import functools
import time

from .terms import NIL, ReifiedVar, Var

_MISSING = object()


class State:
    __slots__ = ("subst", "diseq", "symbols", "counter")

    def __init__(self, subst=None, diseq=None, symbols=frozenset(), counter=0):
        self.subst = {} if subst is None else subst
        # var -> tuple of constraints; a constraint is a tuple of (var, term)
        # pairs that must never all hold at once
        self.diseq = {} if diseq is None else diseq
        self.symbols = symbols
        self.counter = counter

    def __repr__(self) -> str:
        return f"State(<{len(self.subst)} bindings>, next={self.counter})"


EMPTY_STATE = State()


class BudgetExhausted(Exception):
    """Search budget ran out before the requested answers were found."""

    def __init__(self, answers, steps, reason="steps"):
        super().__init__(f"budget exhausted after {steps} steps ({reason}); "
                         f"{len(answers)} answer(s) found")
        self.answers = answers
        self.steps = steps
        self.reason = reason


# -- substitution -----------------------------------------------------------

def walk(t, s):
    while type(t) is Var:
        b = s.get(t, _MISSING)
        if b is _MISSING:
            return t
        t = b
    return t


def walk_star(t, s):
    t = walk(t, s)
    if type(t) is tuple and t:
        items = []
        while type(t) is tuple and t:
            items.append(walk_star(t[0], s))
            t = walk(t[1], s)
        out = t
        for item in reversed(items):
            out = (item, out)
        return out
    return t


def occurs(x, t, s) -> bool:
    stack = [t]
    while stack:
        t = walk(stack.pop(), s)
        if t is x:
            return True
        if type(t) is tuple and t:
            stack.append(t[1])
            stack.append(t[0])
    return False


def unify(u, v, s):
    """Unify ``u`` and ``v`` under ``s``.

    Returns ``(subst, prefix)`` where ``prefix`` lists the bindings added, or
    None on clash or occurs-check failure.  ``s`` itself is never mutated.
    """
    copied = False
    prefix = []
    todo = None
    while True:
        while type(u) is Var:
            b = s.get(u, _MISSING)
            if b is _MISSING:
                break
            u = b
        while type(v) is Var:
            b = s.get(v, _MISSING)
            if b is _MISSING:
                break
            v = b
        if u is v:
            pass
        elif type(u) is Var:
            if type(v) is tuple and v and occurs(u, v, s):
                return None
            if not copied:
                s = dict(s)
                copied = True
            s[u] = v
            prefix.append((u, v))
        elif type(v) is Var:
            if type(u) is tuple and u and occurs(v, u, s):
                return None
            if not copied:
                s = dict(s)
                copied = True
            s[v] = u
            prefix.append((v, u))
        elif type(u) is tuple and type(v) is tuple:
            if u and v:
                if todo is None:
                    todo = []
                todo.append((u[1], v[1]))
                u, v = u[0], v[0]
                continue
            if u or v:
                return None
        elif type(u) is not type(v) or u != v:
            return None
        if not todo:
            return s, prefix
        u, v = todo.pop()


# -- constraints ------------------------------------------------------------

def _constraint_vars(constraint):
    for x, t in constraint:
        yield x
        if type(t) is Var:
            yield t


def _attach(diseq, constraint):
    for v in _constraint_vars(constraint):
        cs = diseq.get(v, ())
        if constraint not in cs:
            diseq[v] = cs + (constraint,)


def _detach(diseq, constraint):
    """Remove ``constraint`` from every variable it is attached to; without
    this, stale copies get rechecked and re-attached again and again."""
    for v in _constraint_vars(constraint):
        cs = diseq.get(v)
        if cs:
            kept = tuple(c for c in cs if c != constraint)
            if kept:
                diseq[v] = kept
            else:
                del diseq[v]


def _recheck(constraint, s):
    """Re-evaluate a disequality: None when it can no longer be violated,
    an empty tuple when it already is, else the residual bindings."""
    residual = []
    for x, t in constraint:
        r = unify(x, t, s)
        if r is None:
            return None
        s, p = r
        residual.extend(p)
    return tuple(residual)


def _commit(st, s, prefix):
    """Extend ``st`` with ``s`` after ``prefix`` was added; None if a stored
    constraint is violated."""
    diseq = st.diseq
    symbols = st.symbols
    touched = None
    for x, _ in prefix:
        if symbols and x in symbols:
            t = walk(x, s)
            if type(t) is Var:
                symbols = (symbols - {x}) | {t}
            elif type(t) is not str:
                return None
            else:
                symbols = symbols - {x}
        cs = diseq.get(x)
        if cs:
            if touched is None:
                touched = {}
                diseq = dict(diseq)
            for c in cs:
                touched[c] = None
    if touched:
        for c in touched:
            _detach(diseq, c)
        for c in touched:
            residual = _recheck(c, s)
            if residual is None:
                continue
            if not residual:
                return None
            _attach(diseq, residual)
    return State(s, diseq, symbols, st.counter)


# -- streams ----------------------------------------------------------------

def mplus(stream, f):
    if stream is None:
        return f()
    t = type(stream)
    if t is State:
        return (stream, f)
    if t is tuple:
        c, g = stream
        return (c, lambda: mplus(f(), g))
    return lambda: mplus(f(), stream)


def bind(stream, g):
    if stream is None:
        return None
    t = type(stream)
    if t is State:
        return g(stream)
    if t is tuple:
        c, f = stream
        return mplus(g(c), lambda: bind(f(), g))
    return lambda: bind(stream(), g)


def _bind_all(stream, goals, start=1):
    for i in range(start, len(goals)):
        stream = bind(stream, goals[i])
    return stream


def _as_goals(body):
    if callable(body):
        return (body,)
    return tuple(body)


# -- goals ------------------------------------------------------------------

def succeed(st):
    return st


def fail(st):
    return None


def eq(u, v):
    def goal(st):
        s = st.subst
        a = u
        while type(a) is Var:
            b = s.get(a, _MISSING)
            if b is _MISSING:
                break
            a = b
        c = v
        while type(c) is Var:
            b = s.get(c, _MISSING)
            if b is _MISSING:
                break
            c = b
        if a is c:
            return st
        if type(a) is Var:
            x, t = a, c
        elif type(c) is Var:
            x, t = c, a
        else:
            r = unify(a, c, s)
            if r is None:
                return None
            s, prefix = r
            if not prefix:
                return st
            return _commit(st, s, prefix)
        if type(t) is tuple and t and occurs(x, t, s):
            return None
        s = dict(s)
        s[x] = t
        if x in st.diseq or x in st.symbols:
            return _commit(st, s, ((x, t),))
        return State(s, st.diseq, st.symbols, st.counter)
    return goal


def neq(u, v):
    def goal(st):
        r = unify(u, v, st.subst)
        if r is None:
            return st
        _, prefix = r
        if not prefix:
            return None
        diseq = dict(st.diseq)
        _attach(diseq, tuple(prefix))
        return State(st.subst, diseq, st.symbols, st.counter)
    return goal


def symbolo(t):
    def goal(st):
        w = walk(t, st.subst)
        if type(w) is str:
            return st
        if type(w) is Var:
            if w in st.symbols:
                return st
            return State(st.subst, st.diseq, st.symbols | {w}, st.counter)
        return None
    return goal


def conj(*goals):
    goals = tuple(goals)
    if len(goals) == 1:
        return goals[0]

    def goal(st):
        return _bind_all(goals[0](st), goals)
    return goal


def conde(*clauses):
    """Interleaving disjunction of clauses; each clause is a goal or a
    sequence of goals run in conjunction."""
    clauses = tuple(_as_goals(c) for c in clauses)
    last = len(clauses) - 1

    def goal(st):
        def from_clause(i):
            gs = clauses[i]
            stream = gs[0](st)
            for j in range(1, len(gs)):
                stream = bind(stream, gs[j])
            if i == last:
                return stream
            return mplus(stream, lambda: from_clause(i + 1))

        return lambda: from_clause(0)
    return goal


def finite_conde(*clauses):
    """Disjunction of clauses that cannot diverge, evaluated without
    suspending.  Answers keep clause order."""
    clauses = tuple(_as_goals(c) for c in clauses)

    def goal(st):
        out = []
        for gs in clauses:
            stream = gs[0](st)
            for j in range(1, len(gs)):
                stream = bind(stream, gs[j])
            out.extend(take(None, stream))
        stream = None
        for s in reversed(out):
            stream = s if stream is None else (s, _const(stream))
        return stream
    return goal


def _const(stream):
    return lambda: stream


def disj(*goals):
    return conde(*((g,) for g in goals))


def fresh(body, arity=None):
    """Allocate logic variables and run ``body(*vars)``.

    ``body`` returns a goal or a sequence of goals (a conjunction).  The
    arity defaults to the number of positional parameters ``body`` takes.
    Only ``conde`` suspends, so every recursive relation must recur from
    inside one.
    """
    n = body.__code__.co_argcount if arity is None else arity

    def goal(st):
        if n:
            c = st.counter
            st = State(st.subst, st.diseq, st.symbols, c + n)
            gs = _as_goals(body(*map(Var, range(c, c + n))))
        else:
            gs = _as_goals(body())
        stream = gs[0](st)
        for j in range(1, len(gs)):
            stream = bind(stream, gs[j])
        return stream
    return goal


def relation(fn):
    """Defer building a relation's body until it runs on a state, so
    recursive relations can call themselves at construction time."""
    @functools.wraps(fn)
    def make(*args):
        def goal(st):
            return fn(*args)(st)
        return goal
    return make


def groundness_branch(t, if_unbound, if_bound):
    """Non-relational: pick a goal by whether ``t`` is currently unbound."""
    def goal(st):
        w = walk(t, st.subst)
        return (if_unbound if type(w) is Var else if_bound)(st)
    return goal


# -- running ----------------------------------------------------------------

def reify(t, s):
    t = walk_star(t, s)
    names = {}

    def rename(t):
        if type(t) is Var:
            if t not in names:
                names[t] = ReifiedVar(len(names))
            return names[t]
        if type(t) is tuple and t:
            items = []
            while type(t) is tuple and t:
                items.append(rename(t[0]))
                t = t[1]
            out = rename(t)
            for item in reversed(items):
                out = (item, out)
            return out
        return t

    return rename(t)


def _states(stream, max_steps=None, timeout=None):
    """Yield the states of ``stream`` in order.  Each forcing of a
    suspension costs one step; raises BudgetExhausted (with no answers
    attached) when the step or wall-clock budget runs out."""
    steps = 0
    deadline = None if timeout is None else time.monotonic() + timeout
    while stream is not None:
        t = type(stream)
        if t is State:
            yield stream
            return
        if t is tuple:
            yield stream[0]
            stream = stream[1]
            continue
        if max_steps is not None and steps >= max_steps:
            raise BudgetExhausted([], steps)
        if deadline is not None and steps & 1023 == 0 and time.monotonic() > deadline:
            raise BudgetExhausted([], steps, "timeout")
        steps += 1
        stream = stream()


def take(n, stream, max_steps=None, timeout=None):
    """Force ``stream`` until ``n`` states (None: all) are produced.

    On BudgetExhausted the states found so far travel in the exception.
    """
    states = []
    if n is not None and n <= 0:
        return states
    try:
        for st in _states(stream, max_steps, timeout):
            states.append(st)
            if n is not None and len(states) >= n:
                break
    except BudgetExhausted as exc:
        exc.answers = states
        raise
    return states


def _start(body):
    arity = body.__code__.co_argcount
    qs = [Var(i) for i in range(arity)]
    st = State(counter=arity)
    gs = _as_goals(body(*qs))
    query = qs[0] if arity == 1 else _list(qs)
    return query, lambda: _bind_all(gs[0](st), gs)


def run(n, body, *, max_steps=None, timeout=None):
    """Run a query for up to ``n`` answers (``None`` for all).

    ``body`` takes the query variables and returns a goal or a sequence of
    goals.  With one query variable each answer is its reified value; with
    several, a list term of them.  ``timeout`` is in seconds.
    """
    if n is not None and n < 1:
        raise ValueError("n must be positive or None")
    query, stream = _start(body)
    try:
        states = take(n, stream, max_steps, timeout)
    except BudgetExhausted as exc:
        exc.answers = [reify(query, s.subst) for s in exc.answers]
        raise
    return [reify(query, s.subst) for s in states]


def iter_answers(body, *, max_steps=None, timeout=None):
    """Yield reified answers lazily.  Running out of budget raises
    BudgetExhausted whose ``answers`` is empty; the caller has seen
    everything found before that point."""
    query, stream = _start(body)
    for st in _states(stream, max_steps, timeout):
        yield reify(query, st.subst)


def run_all(body, **budget):
    return run(None, body, **budget)


def _list(items):
    out = NIL
    for item in reversed(items):
        out = (item, out)
    return out

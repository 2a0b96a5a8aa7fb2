"""Deterministic context enumeration, the contextual distance as a sound
bracket, the finitary ball test and the genericity semi-test."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .distance import DistanceValue, bracket, dyadic
from .lamcalc import Abs, App, LambdaTerm, Var, solvability

HOLE = Var("_HOLE_")

_TERM_VARS = ("x", "y", "z")


def _binder_name(depth: int) -> str:
    return _TERM_VARS[depth] if depth < 3 else f"v{depth - 3}"


@lru_cache(maxsize=None)
def _terms_of_size(size: int, depth: int) -> tuple:
    """Fixed size-ordered enumeration of plain terms over a 3-variable alphabet.

    Binders are named canonically by nesting depth (x, y, z, v0, ...), so a
    binder may shadow a free variable; plugging is literal anyway.
    """
    if size < 1:
        return ()
    out = []
    if size == 1:
        scope = [_binder_name(d) for d in range(depth)]
        for v in _TERM_VARS + tuple(n for n in scope if n not in _TERM_VARS):
            out.append(Var(v))
        return tuple(out)
    for body in _terms_of_size(size - 1, depth + 1):
        out.append(Abs(_binder_name(depth), body))
    for sf in range(1, size):
        for f in _terms_of_size(sf, depth):
            for a in _terms_of_size(size - sf, depth):
                out.append(App(f, a))
    return tuple(out)


@dataclass(frozen=True)
class Context:
    """A term over the extended grammar with exactly one hole."""

    term: LambdaTerm

    def plug(self, m: LambdaTerm) -> LambdaTerm:
        return _plug(self.term, m)

    def __str__(self):
        return _show_ctx(self.term)


def _plug(t: LambdaTerm, m: LambdaTerm) -> LambdaTerm:
    """Literal, capture-permitting hole replacement."""
    if isinstance(t, Var):
        return m if t.name == "_HOLE_" else t
    if isinstance(t, Abs):
        return Abs(t.binder, _plug(t.body, m))
    return App(_plug(t.fun, m), _plug(t.arg, m))


def _show_ctx(t: LambdaTerm) -> str:
    if isinstance(t, Var):
        return "[-]" if t.name == "_HOLE_" else t.name
    if isinstance(t, Abs):
        return f"\\{t.binder}. {_show_ctx(t.body)}"
    f = _show_ctx(t.fun)
    if isinstance(t.fun, Abs):
        f = f"({f})"
    a = _show_ctx(t.arg)
    if not isinstance(t.arg, Var):
        a = f"({a})"
    return f"{f} {a}"


@lru_cache(maxsize=None)
def _contexts_of_size(size: int, depth: int) -> tuple:
    """C ::= [-] | \\x.C | C T | T C, size-ordered, fixed tie-break.

    Within one size: abstractions first, then hole-left applications, then
    hole-right ones, each following the subterm enumeration order.
    """
    if size < 1:
        return ()
    if size == 1:
        return (HOLE,)
    out = []
    for c in _contexts_of_size(size - 1, depth + 1):
        out.append(Abs(_binder_name(depth), c))
    for sc in range(1, size):
        for c in _contexts_of_size(sc, depth):
            for t in _terms_of_size(size - sc, depth):
                out.append(App(c, t))
    for st in range(1, size):
        for t in _terms_of_size(st, depth):
            for c in _contexts_of_size(size - st, depth):
                out.append(App(t, c))
    return tuple(out)


def enumerate_context(n: int) -> Context:
    """The n-th context (0-indexed); injective, total, stable across runs."""
    if n < 0:
        raise ValueError("index must be >= 0")
    size = 1
    seen = 0
    while True:
        batch = _contexts_of_size(size, 0)
        if n < seen + len(batch):
            return Context(batch[n - seen])
        seen += len(batch)
        size += 1
        if size > 12:
            raise RuntimeError("context index out of supported range")


# ---------------------------------------------------------------------------
# Contextual distance

def p_ctx_bracket(m: LambdaTerm, n: LambdaTerm, prefix: int, fuel: int) -> DistanceValue:
    """Sound bracket around the context-counting distance.

    Certified divergences enter the lower bound; unknown solvability and the
    unenumerated tail enter the upper bound only.
    """
    if prefix < 1:
        raise ValueError("prefix must be >= 1")
    lower = Fraction(0)
    unknown = Fraction(0)
    for idx in range(prefix + 1):
        ctx = enumerate_context(idx)
        sm = solvability(ctx.plug(m), fuel)
        sn = solvability(ctx.plug(n), fuel)
        if sm.is_divergent or sn.is_divergent:
            lower += dyadic(idx)
        elif sm.is_unknown or sn.is_unknown:
            unknown += dyadic(idx)
    tail = dyadic(prefix)  # sum of 2**-i for i > prefix
    return bracket(lower, lower + unknown + tail)


def in_ctx_ball(m: LambdaTerm, candidate: LambdaTerm, epsilon, fuel: int) -> str:
    """Finitary ball test: "yes" | "no" | "unknown".

    The tested indices are those whose weight passes the threshold,
    {i : 2**-(i+1) >= epsilon}; the candidate must converge wherever the
    center does on them.
    """
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    indices = []
    i = 0
    while dyadic(i + 1) >= epsilon:
        indices.append(i)
        i += 1
    pending = False
    for idx in indices:
        ctx = enumerate_context(idx)
        sm = solvability(ctx.plug(m), fuel)
        if sm.is_divergent:
            continue  # center fails here; no constraint on the candidate
        sc = solvability(ctx.plug(candidate), fuel)
        if sm.is_solvable and sc.is_divergent:
            return "no"
        if sm.is_unknown or sc.is_unknown:
            pending = True
    return "unknown" if pending else "yes"


def genericity_violations(unsolvable: LambdaTerm, corpus, max_index: int,
                          fuel: int) -> list:
    """Semi-test of the genericity lemma for a certified-unsolvable term.

    Wherever a context converges on the unsolvable term, it must converge on
    every term; a certified divergence there is a violation.
    """
    st = solvability(unsolvable, fuel)
    if not st.is_divergent:
        raise ValueError("term is not certified unsolvable at this fuel")
    bad = []
    for idx in range(max_index + 1):
        ctx = enumerate_context(idx)
        if not solvability(ctx.plug(unsolvable), fuel).is_solvable:
            continue
        for n in corpus:
            sn = solvability(ctx.plug(n), fuel)
            if sn.is_divergent:
                bad.append({"index": idx, "context": str(ctx), "term": str(n)})
    return bad

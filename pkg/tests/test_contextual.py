from fractions import Fraction

import pytest

from lambdapm.contextual import (enumerate_context, genericity_violations,
                                 in_ctx_ball, p_ctx_bracket)
from lambdapm.corpus import OMEGA, normalizing_corpus
from lambdapm.lamcalc import alpha_eq, parse, solvability

I = parse("\\x. x")
ETA_I = parse("\\x. \\y. x y")


def test_enumeration_pinned_prefix():
    assert str(enumerate_context(0)) == "[-]"
    assert str(enumerate_context(1)) == "\\x. [-]"
    assert str(enumerate_context(2)) == "[-] x"


def test_enumeration_injective_prefix():
    seen = {str(enumerate_context(n)) for n in range(120)}
    assert len(seen) == 120


def test_enumeration_stable():
    snapshot = [str(enumerate_context(n)) for n in range(30)]
    assert snapshot == [str(enumerate_context(n)) for n in range(30)]


def test_plugging_is_literal():
    ctx = enumerate_context(1)  # \x. [-]
    plugged = ctx.plug(parse("x"))
    # the free x is captured on purpose
    assert alpha_eq(plugged, parse("\\x. x"))


def test_hole_applied_to_divergent_argument():
    # the context [-] Omega: plugging I gives I Omega, certified divergent
    from lambdapm.contextual import HOLE, Context
    from lambdapm.lamcalc import App
    ctx = Context(App(HOLE, OMEGA))
    assert solvability(ctx.plug(I), 50).is_divergent
    assert solvability(ctx.plug(parse("\\x. \\y. y")), 50).kind == "solvable"


def test_p_ctx_bracket_shape_and_symmetry():
    v = p_ctx_bracket(I, ETA_I, 8, 60)
    w = p_ctx_bracket(ETA_I, I, 8, 60)
    assert v == w
    assert 0 <= v.lower <= v.upper <= 2  # weights from index 0 sum to 2


def test_p_ctx_self_bracket_contains_refinement():
    coarse = p_ctx_bracket(I, I, 5, 40)
    fine = p_ctx_bracket(I, I, 10, 80)
    assert coarse.contains(fine)


def test_p_ctx_omega_generic_brackets_overlap():
    # the true distances coincide by genericity, so the sound brackets of
    # (Omega, N) and (Omega, Omega) must overlap, and certified divergence
    # on the N side can only add to the lower bound
    vo = p_ctx_bracket(OMEGA, OMEGA, 7, 60)
    for n in [I, ETA_I, parse("x y")]:
        vn = p_ctx_bracket(OMEGA, n, 7, 60)
        assert vn.lower >= vo.lower
        assert vn.lower <= vo.upper and vo.lower <= vn.upper


def test_in_ctx_ball_examples():
    assert in_ctx_ball(I, I, Fraction(1, 8), 100) == "yes"
    assert in_ctx_ball(I, OMEGA, Fraction(1, 4), 100) == "no"
    for k in (2, 3, 4, 5):
        assert in_ctx_ball(I, ETA_I, Fraction(1, 2 ** k), 200) == "yes"


def test_in_ctx_ball_validates_epsilon():
    with pytest.raises(ValueError):
        in_ctx_ball(I, I, 0, 10)


def test_genericity_semi_test():
    assert genericity_violations(OMEGA, normalizing_corpus(8), 40, 300) == []
    with pytest.raises(ValueError):
        genericity_violations(I, [I], 10, 50)

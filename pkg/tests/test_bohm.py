from fractions import Fraction

import pytest

from lambdapm import bohm
from lambdapm.bohm import (BOT, bohm_truncate, direct_approximant, height,
                           p_bohm, p_tree, parse_partial, partial_leq,
                           truncate, truncation_leq)
from lambdapm.distance import bracket, dyadic, exact
from lambdapm.lamcalc import App, parse

I = parse("\\x. x")
OMEGA = parse("(\\x. x x)(\\x. x x)")
OMEGA3 = parse("(\\x. x x x)(\\x. x x x)")
# fixpoint of \f.\x. f x: head-reduction cycles, so it is unsolvable
Y = parse("\\h. (\\u. h (u u)) (\\u. h (u u))")
FIX_ETA = App(Y, parse("\\f. \\x. f x"))
# fixpoint of \f.\x. x (f x): solvable with an infinite spine
FIX_SPINE = App(Y, parse("\\f. \\x. x (f x)"))


def test_direct_approximant_examples():
    assert direct_approximant(parse("\\x. x")) == parse_partial("\\x. x")
    assert direct_approximant(parse("\\x. x ((\\y. y) z)")) == \
        parse_partial("\\x. x _|_")
    assert direct_approximant(OMEGA) == BOT


def test_direct_approximant_idempotent_on_embeddings():
    for s in ["\\x. x", "x y", "\\a. \\b. a (b x)"]:
        t = parse(s)
        a = direct_approximant(t)
        assert direct_approximant(bohm.to_lambda(a)) == a


def test_partial_leq_examples():
    assert partial_leq(BOT, parse_partial("\\x. x"))
    assert partial_leq(parse_partial("\\x. x _|_"),
                       parse_partial("\\x. x (\\y. y)"))
    assert not partial_leq(parse_partial("\\x. x"),
                           parse_partial("\\x. \\y. x y"))


def test_partial_leq_alpha_aware():
    assert partial_leq(parse_partial("\\a. a _|_"), parse_partial("\\b. b x"))


def test_heights():
    assert height(BOT) == 0
    assert height(parse_partial("x")) == 1
    assert height(parse_partial("x _|_")) == 1
    assert height(parse_partial("x y")) == 2
    assert height(parse_partial("x (y x)")) == 3


def test_truncate_convention():
    t = parse_partial("x (y (z w))")
    assert truncate(t, 0) == BOT
    assert truncate(t, 1) == parse_partial("x _|_")
    assert truncate(t, 2) == parse_partial("x (y _|_)")
    assert truncate(t, 5) == t


def test_p_tree_paper_values():
    i = parse_partial("\\x. x")
    assert p_tree(i, i) == exact(Fraction(1, 2))
    assert p_tree(BOT, parse_partial("x y")) == exact(1)
    assert p_tree(BOT, BOT) == exact(1)
    assert p_tree(i, parse_partial("\\x. \\y. x y")) == exact(1)


def test_p_tree_self_distance_is_height():
    for s in ["x", "x _|_", "x (y x)", "\\a. a (a (a x))"]:
        t = parse_partial(s)
        assert p_tree(t, t) == exact(dyadic(height(t)))


def test_p_tree_agreement_levels():
    a = parse_partial("\\x. x _|_")
    b = parse_partial("\\x. x (\\y. y)")
    assert p_tree(a, b) == exact(Fraction(1, 2))
    assert p_tree(parse_partial("x (y x)"), parse_partial("x (y y)")) == \
        exact(Fraction(1, 4))


def test_induced_order_is_truncation_order():
    terms = [parse_partial(s) for s in
             ["x", "x _|_", "x x", "x _|_ y", "x y y", "x (y x)"]]
    for a in terms:
        for b in terms:
            induced = p_tree(a, b).value <= p_tree(a, a).value
            assert induced == truncation_leq(a, b)
            # the truncation order refines the approximant order
            if induced:
                assert partial_leq(a, b)


def test_bohm_truncate_examples():
    tr = bohm_truncate(I, 3, 100)
    assert tr.tree == parse_partial("\\x. x") and tr.is_exact and tr.complete
    tr = bohm_truncate(OMEGA, 3, 100)
    assert tr.tree == BOT and tr.is_exact and tr.complete
    tr = bohm_truncate(OMEGA3, 3, 5)
    assert tr.tree == BOT and not tr.is_exact


def test_bohm_truncate_unsolvable_eta_fixpoint():
    # the fixpoint of \f.\x. f x head-reduces back to itself in four steps
    tr = bohm_truncate(FIX_ETA, 2, 200)
    assert tr.tree == BOT and tr.is_exact


def test_bohm_truncate_growing_spine():
    tr = bohm_truncate(FIX_SPINE, 2, 200)
    assert tr.is_exact
    assert tr.tree == parse_partial("\\x. x (x _|_)")
    deeper = bohm_truncate(FIX_SPINE, 4, 400)
    assert deeper.tree == parse_partial("\\x. x (x (x (x _|_)))")


def test_p_bohm_examples():
    assert p_bohm(OMEGA, I, 3, 100) == exact(1)
    assert p_bohm(I, I, 3, 100) == exact(Fraction(1, 2))
    assert p_bohm(parse("(\\z. z)(\\x. x)"), I, 3, 100) == exact(Fraction(1, 2))


def test_p_bohm_brackets_for_undecided_inputs():
    v = p_bohm(OMEGA3, OMEGA3, 3, 5)  # unknown at the root on both sides
    assert not v.is_exact
    assert v.lower == 0 and v.upper == 1


def test_p_bohm_bracket_for_infinite_equal_trees():
    v = p_bohm(FIX_SPINE, FIX_SPINE, 3, 300)
    assert v == bracket(0, dyadic(3))


def test_p_bohm_narrows_with_depth_and_fuel():
    base = p_bohm(FIX_SPINE, FIX_SPINE, 2, 200)
    finer = p_bohm(FIX_SPINE, FIX_SPINE, 4, 400)
    assert base.contains(finer)
    exact_v = p_bohm(OMEGA, I, 2, 50)
    assert exact_v.is_exact
    assert p_bohm(OMEGA, I, 4, 100) == exact_v


def test_p_bohm_requires_depth():
    with pytest.raises(ValueError):
        p_bohm(I, I, 0, 10)


def test_alpha_equivalence_with_shadowed_binders():
    a = parse_partial("\\x. x (\\x. x)")
    b = parse_partial("\\x. x (\\y. y)")
    assert a == b
    assert p_tree(a, b) == exact(dyadic(height(a)))
    c = parse_partial("\\x. x (\\y. x)")  # inner head refers to the outer binder
    assert a != c


def test_partial_print_parse_roundtrip():
    for s in ["x _|_ y", "\\a. a (\\b. b a)", "\\x. x (\\x. x)",
              "x (y _|_) (\\a. a)"]:
        t = parse_partial(s)
        assert parse_partial(str(t)) == t

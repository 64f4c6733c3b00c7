import pytest

from tlci.formulas import (And, Atom, AutoMod, Count, Eventually, Globally,
                           Next, Not, Once, Or, Pnueli, TRUE, Until,
                           WeakEventually, conj, disj, neg, node_count,
                           subformulas, validate_formula)
from tlci.intervals import FULL, closed, open_
from tlci.rewrite import counting_nfa

P = Atom("P")
Q = Atom("Q")


def test_structural_equality_and_hash():
    a = And(P, Or(Q, Not(P)))
    b = And(P, Or(Q, Not(P)))
    assert a == b and hash(a) == hash(b)
    assert a != And(P, Or(Q, Not(Q)))
    assert Eventually(open_(1, 2), P) != Eventually(closed(1, 2), P)


def test_neg_collapses_double_negation():
    assert neg(neg(P)) == P
    assert neg(P) == Not(P)
    assert neg(neg(neg(P))) == Not(P)


def test_conj_disj_units():
    assert conj() == TRUE
    assert conj(P) == P
    assert conj(P, Q) == And(P, Q)
    assert disj(P) == P
    assert disj(P, Q, P) == Or(Or(P, Q), P)


def test_count_pnueli_validation():
    with pytest.raises(ValueError):
        Count(0, open_(0, 1), P)
    with pytest.raises(ValueError):
        Pnueli(2, open_(0, 1), (P,))  # needs k argument formulas
    with pytest.raises(ValueError):
        AutoMod(counting_nfa(2), open_(0, 1), (P,))  # arity mismatch


def test_validate_flags_singular_but_not_zero():
    issues = validate_formula(Eventually(closed(2, 2), P))
    assert issues and "singular" in issues[0]
    assert validate_formula(Next(closed(0, 0), P)) == []


def test_validate_flags_past_under_strict():
    issues = validate_formula(Once(open_(0, 1), P))
    assert any("past" in s for s in issues)


def test_subformulas_and_node_count():
    f = And(P, Or(P, Q))
    subs = list(subformulas(f))
    assert node_count(f) == 4  # P, Q, Or, And (shared P counted once)
    assert f in subs and P in subs and Q in subs


def test_children_cover_all_nodes():
    f = Until(FULL, P, WeakEventually(open_(0, 1), Globally(FULL, Q)))
    names = {type(g).__name__ for g in subformulas(f)}
    assert {"Until", "WeakEventually", "Globally", "Atom"} <= names

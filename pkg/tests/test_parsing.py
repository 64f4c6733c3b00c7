import pytest
from hypothesis import given, strategies as st

from tlci.formulas import (And, Atom, AutoMod, Count, Eventually, Formula,
                           Globally, Next, Not, Once, Or, Pnueli, TRUE, Until,
                           WeakEventually)
from tlci.intervals import FULL, closed, closed_open, open_, open_closed
from tlci.parsing import (ParseError, parse_automata, parse_formula,
                          render_automata, render_formula)
from tlci.rewrite import counting_nfa, until_nfa

P = Atom("P")
Q = Atom("Q")


def rt(f: Formula) -> None:
    text, autos = render_formula(f)
    assert parse_formula(text, automata=parse_automata(render_automata(autos))
                         if autos else None) == f


def test_fixed_round_trips():
    rt(And(P, Or(Q, Not(P))))
    rt(Until(open_(1, 2), P, Q))
    rt(Eventually(FULL, Count(2, closed_open(0, 1), Q)))
    rt(Pnueli(2, open_closed(0, 1), (P, Q)))
    rt(Once(open_(0, 1), P))
    rt(AutoMod(until_nfa(), closed(1, 2), (P, Q, TRUE)))
    rt(AutoMod(counting_nfa(2), FULL, (P, TRUE)))


def test_implication_sugar():
    assert parse_formula("P -> Q") == Or(Not(P), Q)


def test_omitted_interval_defaults_to_full():
    assert parse_formula("F P") == Eventually(FULL, P)
    assert parse_formula("P U Q") == Until(FULL, P, Q)


def test_until_right_associative():
    f = parse_formula("P U Q U P")
    assert f == Until(FULL, P, Until(FULL, Q, P))


def test_parse_errors():
    for bad in ["", "P &", "F(2,1) P", "C{0}[0,1) P", "(P", "P ! Q"]:
        with pytest.raises(ParseError):
            parse_formula(bad)


def test_unknown_automaton_name():
    with pytest.raises(ParseError):
        parse_formula("A{missing}[0,1) (P)")


_atoms = st.sampled_from([P, Q, TRUE])
_ivls = st.sampled_from([FULL, open_(0, 1), closed(1, 2), closed_open(0, 2),
                         open_closed(1, 3)])


def _formulas():
    return st.recursive(
        _atoms,
        lambda sub: st.one_of(
            st.builds(Not, sub),
            st.builds(And, sub, sub),
            st.builds(Or, sub, sub),
            st.builds(Until, _ivls, sub, sub),
            st.builds(Next, _ivls, sub),
            st.builds(Eventually, _ivls, sub),
            st.builds(WeakEventually, _ivls, sub),
            st.builds(Globally, _ivls, sub),
            st.builds(Once, _ivls, sub),
            st.builds(lambda i, a: Count(2, i, a), _ivls, sub),
            st.builds(lambda i, a, b: Pnueli(2, i, (a, b)), _ivls, sub, sub),
        ),
        max_leaves=12)


@given(_formulas())
def test_round_trip_random(f):
    rt(f)

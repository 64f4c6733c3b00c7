import itertools

from tlci.automata import (Nfa, accepts, complement, determinize,
                           determinize_minimize, intersect, make_nfa,
                           minimize)
from tlci.rewrite import counting_nfa, minimal_segment_nfa, until_nfa


def all_words(arity, max_len):
    for n in range(1, max_len + 1):
        yield from itertools.product(range(1, arity + 1), repeat=n)


def test_counting_nfa_minimal_dfa_sizes():
    # one initial state, k+1 counter states, and the trap the completion
    # adds is removed by minimization: k+2 live states for every k
    for k in (1, 2, 3, 4):
        dfa = determinize_minimize(counting_nfa(k))
        assert len(dfa.states) == k + 2


def test_until_nfa_language():
    nfa = until_nfa()
    for w in all_words(3, 4):
        # first letter arbitrary, then left-argument letters, final letter
        # is the right argument
        expected = len(w) >= 2 and w[-1] == 2 and all(c == 1 for c in w[1:-1])
        assert accepts(nfa, w) == expected


def test_complement_is_exact():
    nfa = until_nfa()
    comp = complement(nfa)
    for w in all_words(3, 4):
        assert accepts(comp, w) == (not accepts(nfa, w))


def test_intersect_is_exact():
    a = until_nfa()
    b = counting_nfa(1)
    # compare over the shared arity-2 sub-alphabet
    bb = make_nfa(3, b.initial, list(b.transitions), list(b.finals))
    prod = intersect(a, bb)
    for w in all_words(3, 4):
        assert accepts(prod, w) == (accepts(a, w) and accepts(bb, w))


def test_determinize_preserves_language():
    nfa = counting_nfa(2)
    dfa = determinize(nfa)
    assert dfa.is_deterministic()
    for w in all_words(2, 5):
        assert accepts(dfa, w) == accepts(nfa, w)


def test_minimize_preserves_language():
    dfa = determinize(counting_nfa(2))
    mini = minimize(dfa)
    assert len(mini.states) <= len(dfa.states)
    for w in all_words(2, 5):
        assert accepts(mini, w) == accepts(dfa, w)


def test_minimal_segment_nfa_drops_nested_witnesses():
    # two consecutive argument letters; a word accepted by the raw automaton
    # that properly contains another accepted infix is excluded
    nfa = make_nfa(2, "c0", [("c0", 1, "c1"), ("c1", 1, "acc")], ["acc"])
    mseg = minimal_segment_nfa(nfa)
    assert accepts(mseg, (1, 1))
    assert not accepts(mseg, (1, 1, 1))      # contains (1,1) as proper infix
    assert not accepts(mseg, (2, 1, 1))
    assert not accepts(mseg, (1, 1, 2))
    assert not accepts(mseg, (1, 2))

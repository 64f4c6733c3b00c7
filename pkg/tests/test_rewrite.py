import pytest

from tlci.difftest import derive_seed
from tlci.formulas import (And, Atom, Count, Eventually, Globally, Next, Not,
                           Once, Or, Pnueli, TRUE, Until, node_count)
from tlci.intervals import FULL, at_least, closed, closed_open, open_, open_closed
from tlci.parsing import render_formula
from tlci.rewrite import (PassReport, RewriteError, boundary_pattern,
                          build_phi_family, build_psi_family,
                          condition_formula_C, counting_automod,
                          eliminate_counting, eliminate_eventually,
                          eliminate_unbounded_counting, marker_formula,
                          modulo_counter_rewrite, rational_rewrite,
                          rewrite_to_unilateral, unit_pieces, until_automod)
from tlci.semantics import C1Spec, C2Spec, Evaluation
from tlci.words import GenConfig, generate_word

P = Atom("P")
Q = Atom("Q")


def sample_words(n, props=("P",)):
    cfg = GenConfig(props=props)
    return [generate_word(cfg, derive_seed(7, i)) for i in range(n)]


def assert_equivalent(lhs, rhs, words):
    for w in words:
        ev = Evaluation(w)
        lt, rt = ev.truth(lhs), ev.truth(rhs)
        assert lt == rt, f"disagreement on\n{w}"


def test_until_automaton_identity():
    for ivl in (FULL, open_(0, 1), closed(1, 2)):
        assert_equivalent(Until(ivl, P, Q), until_automod(ivl, P, Q),
                          sample_words(60, ("P", "Q")))


def test_counting_automaton_identity_downward_closed():
    for ivl in (closed_open(0, 2), closed(0, 1)):
        assert_equivalent(Count(2, ivl, P), counting_automod(2, ivl, P),
                          sample_words(60))


def test_rational_k2_unit_shape():
    text, _ = render_formula(rational_rewrite(2, open_(0, 1), P))
    assert text == ("((F(0,1/2) (P & F(0,1/2) P) | F(1/2,1) (P & O(0,1/2) P))"
                    " | (F(0,1/2) P & F(1/2,1) P))")


def test_rational_requires_bounded():
    with pytest.raises(RewriteError):
        rational_rewrite(2, at_least(1), P)


def test_unbounded_elimination_shape():
    text, _ = render_formula(
        eliminate_unbounded_counting(Count(2, at_least(1), P)))
    assert text == "F[1,inf) (P & X[0,inf) Fw[0,inf) P)"


def test_unit_pieces():
    ps = unit_pieces(open_(1, 4))
    assert [str(p) for p in ps] == ["(1,2]", "(2,3]", "(3,4)"]
    ps = unit_pieces(closed(2, 3))
    assert [str(p) for p in ps] == ["[2,3]"]
    with pytest.raises(RewriteError):
        unit_pieces(open_(0, open_(0, 1).hi + open_(0, 1).hi / 2))


def test_phi_family_level_sizes():
    levels = build_phi_family(P, 2)
    assert [len(lv) for lv in levels] == [1, 4, 16]
    # level 1: boundary patterns and unit stretches of P and of its negation
    assert boundary_pattern(P) in levels[1]
    assert boundary_pattern(Not(P)) in levels[1]


def test_psi_family_seeded_by_marker():
    levels = build_psi_family(P, 2, 2)
    assert levels[0] == [marker_formula(P, 2)]
    assert len(levels[1]) == 4


def test_marker_formula_shape():
    text, _ = render_formula(marker_formula(P, 2))
    assert "C{2}[0,1] P" in text and "C{2}[0,1) P" in text


def test_condition_formula_shape():
    f = condition_formula_C(P, 2)
    assert isinstance(f, Not)
    text, _ = render_formula(f)
    assert text.count("Fw[0,inf)") == 2


def test_eliminate_eventually_reports_conditions():
    out, rep = eliminate_eventually(open_(2, 3), P)
    assert rep.pass_id == "elim-F"
    assert rep.nodes_in < rep.nodes_out
    (c2,) = rep.side_conditions
    assert isinstance(c2, C2Spec) and P in c2.members
    # only unilateral intervals remain
    from tlci.formulas import intervals_of
    assert all(ivl.is_unilateral() for _, ivl in intervals_of(out))


def test_eliminate_counting_reports_conditions():
    out, rep = eliminate_counting(2, open_(1, 2), P)
    kinds = {type(c) for c in rep.side_conditions}
    assert kinds == {C1Spec, C2Spec}
    from tlci.formulas import intervals_of
    assert all(ivl.is_unilateral() for _, ivl in intervals_of(out))


def test_eliminate_counting_rejects_bad_intervals():
    for ivl in (closed(1, 2), closed_open(1, 2), open_(1, 3), open_(0, 1)):
        with pytest.raises(RewriteError):
            eliminate_counting(2, ivl, P)


def test_driver_output_unilateral():
    f = Globally(open_(1, 2), Or(P, Next(open_(0, 1), Q)))
    out, rep = rewrite_to_unilateral(f)
    from tlci.formulas import intervals_of
    assert all(ivl.is_unilateral() for _, ivl in intervals_of(out))
    assert rep.pass_id == "unilateral"


def test_driver_rejections():
    with pytest.raises(RewriteError):
        rewrite_to_unilateral(Until(open_(1, 2), P, Q))
    with pytest.raises(RewriteError):
        rewrite_to_unilateral(Once(open_(0, 1), P))
    with pytest.raises(RewriteError):
        rewrite_to_unilateral(Count(2, open_(1, 3), P))  # width > 1
    with pytest.raises(RewriteError):
        rewrite_to_unilateral(Pnueli(2, open_(1, 2), (P, Q)))


def test_driver_handles_bilateral_next_and_weak():
    from tlci.formulas import WeakEventually
    words = sample_words(60, ("P", "Q"))
    for f in (Next(open_(1, 2), P), WeakEventually(open_(1, 2), P)):
        out, rep = rewrite_to_unilateral(f)
        if rep.side_conditions:
            continue  # conditional equivalence is covered by the difftest
        assert_equivalent(f, out, words)


def test_modulo_counter_exactness_requires_all_residues():
    ivl = closed_open(1, 3)
    full = modulo_counter_rewrite(3, ivl, P)
    broken = modulo_counter_rewrite(3, ivl, P, drop_residue=2)
    assert node_count(broken) < node_count(full)

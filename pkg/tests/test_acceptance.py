"""Acceptance gate: end-to-end guarantees the package must uphold.

Each test states its own budget (trial counts, tolerances, wall-clock limits)
and fails loudly if the guarantee or the budget is missed.
"""
import time

import pytest

from tlci.difftest import (derive_seed, mutated_cases, repro_cases, run_bound,
                           run_equivalence, run_mutation_campaign,
                           standard_cases)
from tlci.formulas import (Atom, Count, Eventually, Globally, Not, Or, Pnueli,
                           TRUE, Until, WeakEventually)
from tlci.intervals import closed, open_
from tlci.rewrite import condition_formula_C
from tlci.semantics import Evaluation, check_C1
from tlci.words import GenConfig, generate_word, parse_word

CASES = standard_cases()

UNCONDITIONAL_IDS = [
    "mod-k-2-(1,2)", "mod-k-2-[1,3)", "mod-k-2-(0,2]",
    "mod-k-3-(1,2)", "mod-k-3-[1,3)", "mod-k-3-(0,2]",
    "rational-2-(0,1)", "rational-2-(1,2)",
    "rational-3-(0,1)", "rational-3-(1,2)",
    "elim-unbounded-1", "elim-unbounded-2", "elim-unbounded-3",
    "pnueli2-a1", "pnueli2-a2",
    "witness-pq-a1", "witness-pq-a2",
    "witness-consec-a1", "witness-consec-a2",
]

CONDITIONAL_IDS = [
    "elim-F-(1,2)", "elim-F-(2,3)", "elim-F-[1,2)",
    "elim-C-k2-a1", "elim-C-k2-a2", "elim-C-k3-a1", "elim-C-k3-a2",
]


def test_frozen_counterexamples_hold_in_under_a_second():
    start = time.monotonic()
    cases = repro_cases()
    assert len(cases) == 3
    for rc in cases:
        assert rc.holds(), rc.repro_id
    assert time.monotonic() - start < 1.0


def test_unconditional_passes_agree_at_every_position():
    start = time.monotonic()
    for case_id in UNCONDITIONAL_IDS:
        case = CASES[case_id]
        assert not case.conditional
        rep = run_equivalence(case, trials=500, master_seed=0)
        assert rep.trials == 500, case_id
        assert rep.disagreements == 0, (case_id, rep.counterexample)
        assert rep.skips == 0, case_id
    assert time.monotonic() - start < 300


def test_conditional_passes_agree_on_repaired_words():
    start = time.monotonic()
    for case_id in CONDITIONAL_IDS:
        case = CASES[case_id]
        assert case.conditional
        rep = run_equivalence(case, trials=500, master_seed=0)
        assert rep.disagreements == 0, (case_id, rep.counterexample)
        assert rep.skips <= 25, case_id          # at most 5% unrepairable
    assert time.monotonic() - start < 600


def test_marker_count_bounds_never_exceeded():
    start = time.monotonic()
    campaigns = (
        [("gap-markers-pq", dict(a=a)) for a in (1, 2, 3)]
        + [("gap-markers-witness", dict(a=1, automaton="consec")),
           ("gap-markers-witness", dict(a=1, automaton="pq"))]
        + [("boundary-runs", dict(a=1, k=2)), ("boundary-runs", dict(a=2, k=3))]
        + [("unit-markers", dict(a=1, k=2)), ("unit-markers", dict(a=2, k=3))]
    )
    for bound_id, kw in campaigns:
        rep = run_bound(bound_id, samples=10_000, master_seed=0, **kw)
        assert rep.violation is None, (bound_id, kw, rep.violation)
        assert rep.max_observed <= rep.bound
    assert time.monotonic() - start < 300


def test_anchor_condition_formula_matches_direct_checker():
    """The closed-form anchor-condition formula, evaluated at position 1,
    must return exactly the verdict of the independent procedural checker,
    on random words and on handcrafted violating words."""
    P = Atom("P")
    formulas = {k: condition_formula_C(P, k) for k in (2, 3)}
    crafted = [
        # k-th later event at exactly distance 1 with no anchor event
        parse_word("0 -\n3/2 P\n8/5 P\n12/5 P\n"),
        parse_word("0 -\n1 P\n6/5 P\n7/5 P\n2 P\n11/5 P\n"),
        parse_word("0 P\n1/2 P\n3/2 P\n5/2 P\n"),
    ]
    cfg = GenConfig()
    words = [generate_word(cfg, derive_seed(42, i)) for i in range(1000)]
    checked = 0
    for w in words + crafted:
        ev = Evaluation(w)
        for k in (2, 3):
            formula_verdict = ev.at(formulas[k], 1)
            checker_verdict = not check_C1(w, P, k, ev)
            assert formula_verdict == checker_verdict, (k, w)
            checked += 1
    assert checked >= 2000


def test_semantic_cross_checks():
    start = time.monotonic()
    # modality-vs-automaton cases, every position, 500 words each
    for case_id in ("until-automaton", "counting-automaton"):
        rep = run_equivalence(CASES[case_id], trials=500, master_seed=0)
        assert rep.disagreements == 0, (case_id, rep.counterexample)
    # derived-connective identities, every position, 500 words
    P = Atom("P")
    I1, I0 = open_(1, 2), closed(0, 1)
    identities = [
        (Eventually(I1, P), Until(I1, TRUE, P)),
        (Globally(I1, P), Not(Eventually(I1, Not(P)))),
        (WeakEventually(I0, P), Or(P, Eventually(I0, P))),
        (WeakEventually(I1, P), Or(P, Eventually(I1, P))),
        (Count(1, I1, P), Eventually(I1, P)),
        (Pnueli(1, I1, (P,)), Eventually(I1, P)),
    ]
    cfg = GenConfig()
    for i in range(500):
        w = generate_word(cfg, derive_seed(6, i))
        ev = Evaluation(w)
        for lhs, rhs in identities:
            assert ev.truth(lhs) == ev.truth(rhs), (lhs, rhs, w)
    assert time.monotonic() - start < 300


def test_every_documented_mutation_is_detected():
    for case_id in mutated_cases():
        rep = run_mutation_campaign(case_id, trials=2000, master_seed=0)
        assert rep.disagreements > 0, case_id


def test_campaign_reports_are_byte_identical_across_reruns():
    case = CASES["elim-C-k2-a1"]
    a = run_equivalence(case, trials=500, master_seed=7)
    b = run_equivalence(case, trials=500, master_seed=7)
    assert a == b
    x = run_bound("gap-markers-pq", samples=2000, master_seed=7, a=2)
    y = run_bound("gap-markers-pq", samples=2000, master_seed=7, a=2)
    assert x == y

"""Differential testing: each rewrite pass against the brute-force evaluator,
marker-count bound campaigns, and frozen counterexamples to the naive
constructions.  Everything is deterministic given the master seed."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from .automata import Nfa, make_nfa
from .formulas import (And, Atom, AutoMod, Count, Eventually, Formula,
                       Globally, Next, Not, Or, Pnueli, TRUE, Until, conj, neg)
from .intervals import FULL, Interval, at_least, closed, closed_open, open_, rat
from .rewrite import (counting_automod, counting_nfa, eliminate_counting,
                      eliminate_eventually, eliminate_unbounded_counting,
                      modulo_counter_rewrite, pnueli2_rewrite, rational_rewrite,
                      rewrite_to_unilateral, until_automod, witness_rewrite)
from .semantics import (C1Spec, C2Spec, ConditionSpec, Evaluation,
                        WitnessAutomaton, eval_witness_property, gap_markers,
                        make_witness_automaton, repair_conditions)
from .words import GenConfig, TimedWord, generate_word, parse_word, render_word


def derive_seed(master_seed: int, index: int) -> int:
    digest = hashlib.sha256(f"{master_seed}:{index}".encode()).hexdigest()
    return int(digest[:16], 16)


# -- cases ---------------------------------------------------------------------

LhsSpec = Union[Formula, Tuple[WitnessAutomaton, Interval]]


@dataclass(frozen=True)
class EquivalenceCase:
    case_id: str
    pass_id: str
    lhs: LhsSpec
    rhs: Formula
    conditional: bool                       # repair anchors, compare at position 1
    conditions: Tuple[ConditionSpec, ...]
    gen: GenConfig


_P = Atom("P")
_Q = Atom("Q")
_GEN_P = GenConfig()
_GEN_PQ = GenConfig(props=("P", "Q"))


def pq_pattern_nfa() -> Nfa:
    """Witness segments: a P-only event, then neither, then a Q-only event.
    Symbols partition the alphabet: 1 = P&!Q, 2 = !P&Q, 3 = P&Q, 4 = !P&!Q."""
    return make_nfa(4, "w0", [("w0", 1, "w1"), ("w1", 4, "w1"), ("w1", 2, "acc")],
                    ["acc"])


def pq_pattern_args() -> Tuple[Formula, ...]:
    return (And(_P, neg(_Q)), And(neg(_P), _Q), And(_P, _Q), And(neg(_P), neg(_Q)))


def consecutive_nfa() -> Nfa:
    """Witness segments: two adjacent positions both satisfying the argument.
    Symbols: 1 = argument, 2 = not argument."""
    return make_nfa(2, "c0", [("c0", 1, "c1"), ("c1", 1, "acc")], ["acc"])


def consecutive_args() -> Tuple[Formula, ...]:
    return (_P, neg(_P))


def _witness_case(case_id: str, nfa: Nfa, args: Tuple[Formula, ...], a: int,
                  gen: GenConfig) -> EquivalenceCase:
    wa = make_witness_automaton(nfa, args)
    rhs = witness_rewrite(nfa, args, a, wa.m)
    return EquivalenceCase(case_id, "witness", (wa, open_(a, a + 1)), rhs,
                           False, (), gen)


def _conditional_case(case_id: str, pass_id: str, lhs: Formula, rhs: Formula,
                      conditions: Sequence[ConditionSpec],
                      gen: GenConfig) -> EquivalenceCase:
    return EquivalenceCase(case_id, pass_id, lhs, rhs, True, tuple(conditions), gen)


def standard_cases() -> Dict[str, EquivalenceCase]:
    cases: List[EquivalenceCase] = []

    mod_ivls = {"(1,2)": open_(1, 2),
                "[1,3)": Interval(rat(1), rat(3), True, False),
                "(0,2]": Interval(rat(0), rat(2), False, True)}
    for k in (2, 3):
        for name, ivl in mod_ivls.items():
            cases.append(EquivalenceCase(
                f"mod-k-{k}-{name}", "mod-k", Count(k, ivl, _P),
                modulo_counter_rewrite(k, ivl, _P), False, (), _GEN_P))

    rat_ivls = {"(0,1)": open_(0, 1), "(1,2)": open_(1, 2),
                "[1,2]": Interval(rat(1), rat(2), True, True)}
    for k in (2, 3):
        for name, ivl in rat_ivls.items():
            cases.append(EquivalenceCase(
                f"rational-{k}-{name}", "rational", Count(k, ivl, _P),
                rational_rewrite(k, ivl, _P), False, (), _GEN_P))

    cases.append(EquivalenceCase(
        "until-automaton", "witness", Until(open_(1, 2), _P, _Q),
        until_automod(open_(1, 2), _P, _Q), False, (), _GEN_PQ))
    cases.append(EquivalenceCase(
        "counting-automaton", "witness", Count(2, closed_open(0, 2), _P),
        counting_automod(2, closed_open(0, 2), _P), False, (), _GEN_P))

    for a in (1, 2):
        cases.append(EquivalenceCase(
            f"pnueli2-a{a}", "pnueli2",
            Pnueli(2, open_(a, a + 1), (_P, _Q)),
            pnueli2_rewrite(a, _P, _Q), False, (), _GEN_PQ))

    for a in (1, 2):
        cases.append(_witness_case(f"witness-pq-a{a}", pq_pattern_nfa(),
                                   pq_pattern_args(), a, _GEN_PQ))
        cases.append(_witness_case(f"witness-consec-a{a}", consecutive_nfa(),
                                   consecutive_args(), a, _GEN_P))

    for k in (1, 2, 3):
        unb = Count(k, at_least(1), _P)
        cases.append(EquivalenceCase(
            f"elim-unbounded-{k}", "elim-unbounded", unb,
            eliminate_unbounded_counting(unb), False, (), _GEN_P))

    for ivl in (open_(1, 2), open_(2, 3), closed_open(1, 2)):
        lhs = Eventually(ivl, _P)
        rhs, rep = eliminate_eventually(ivl, _P)
        cases.append(_conditional_case(
            f"elim-F-{ivl}", "elim-F", lhs, rhs, rep.side_conditions, _GEN_P))

    for k in (2, 3):
        for a in (1, 2):
            ivl = open_(a, a + 1)
            lhs = Count(k, ivl, _P)
            rhs, rep = eliminate_counting(k, ivl, _P)
            cases.append(_conditional_case(
                f"elim-C-k{k}-a{a}", "elim-C", lhs, rhs,
                rep.side_conditions, _GEN_P))

    drv_in = Eventually(open_(1, 2), And(_P, Count(2, at_least(0), _Q)))
    drv_out, drv_rep = rewrite_to_unilateral(drv_in)
    cases.append(_conditional_case(
        "driver-composite", "unilateral", drv_in, drv_out,
        drv_rep.side_conditions, _GEN_PQ))

    return {c.case_id: c for c in cases}


def cases_for_pass(pass_id: str) -> List[EquivalenceCase]:
    return [c for c in standard_cases().values() if c.pass_id == pass_id]


# -- trial machinery -----------------------------------------------------------

@dataclass(frozen=True)
class Disagreement:
    word: TimedWord
    position: int
    lhs_value: bool
    rhs_value: bool


@dataclass(frozen=True)
class CampaignReport:
    case_id: str
    pass_id: str
    trials: int
    agreements: int
    disagreements: int
    skips: int
    counterexample: Optional[str]           # rendered, shrunk word
    counterexample_position: Optional[int]
    digest: str                             # sha256 over the verdict stream


def _lhs_at(case: EquivalenceCase, w: TimedWord, ev: Evaluation, i: int) -> bool:
    if isinstance(case.lhs, Formula):
        return ev.at(case.lhs, i)
    wa, ivl = case.lhs
    return eval_witness_property(w, wa, ivl, i, ev)


def check_word(case: EquivalenceCase, w: TimedWord) -> Union[str, Optional[Disagreement]]:
    """Returns 'skip', a Disagreement, or None (agreement)."""
    if case.conditional:
        try:
            w = repair_conditions(w, case.conditions)
        except RuntimeError:
            return "skip"
        positions: Sequence[int] = (1,)
    else:
        positions = range(1, len(w) + 1)
    ev = Evaluation(w)
    for i in positions:
        lv = _lhs_at(case, w, ev, i)
        rv = ev.at(case.rhs, i)
        if lv != rv:
            return Disagreement(w, i, lv, rv)
    return None


def shrink(case: EquivalenceCase, w: TimedWord) -> Disagreement:
    """Greedily drop events while the disagreement persists."""
    best = check_word(case, w)
    assert isinstance(best, Disagreement)
    changed = True
    events = list(w.events)
    while changed:
        changed = False
        j = 0
        while j < len(events) and len(events) > 1:
            trial = events[:j] + events[j + 1:]
            res = check_word(case, TimedWord(tuple(trial)))
            if isinstance(res, Disagreement):
                events = trial
                best = res
                changed = True
            else:
                j += 1
    return best


def run_equivalence(case: EquivalenceCase, trials: int, master_seed: int = 0,
                    stress_words: Sequence[TimedWord] = (),
                    stop_on_disagreement: bool = True) -> CampaignReport:
    verdicts: List[str] = []
    counter: Optional[Disagreement] = None
    agreements = disagreements = skips = 0
    pool: List[Tuple[int, TimedWord]] = list(enumerate(stress_words))
    done = 0
    idx = 0
    while done < trials:
        if pool:
            _, w = pool.pop(0)
        else:
            w = generate_word(case.gen, derive_seed(master_seed, idx))
            idx += 1
        done += 1
        res = check_word(case, w)
        if res == "skip":
            skips += 1
            verdicts.append("skip")
        elif res is None:
            agreements += 1
            verdicts.append("agree")
        else:
            disagreements += 1
            verdicts.append("disagree")
            if counter is None:
                counter = shrink(case, res.word)
            if stop_on_disagreement:
                break
    digest = hashlib.sha256()
    digest.update(f"{case.case_id}:{master_seed}".encode())
    for v in verdicts:
        digest.update(v.encode())
    cex = render_word(counter.word) if counter else None
    if cex:
        digest.update(cex.encode())
    return CampaignReport(case.case_id, case.pass_id, done, agreements,
                          disagreements, skips, cex,
                          counter.position if counter else None,
                          digest.hexdigest())


# -- mutation sensitivity --------------------------------------------------------

def mutated_cases() -> Dict[str, EquivalenceCase]:
    """Deliberately broken rewrites; the campaigns must catch each one."""
    i13 = Interval(rat(1), rat(3), True, False)
    cases = [
        EquivalenceCase(
            "mutant-mod-k-drop-residue", "mod-k", Count(3, i13, _P),
            modulo_counter_rewrite(3, i13, _P, drop_residue=2),
            False, (), _GEN_P),
        EquivalenceCase(
            "mutant-pnueli2-no-exclusion", "pnueli2",
            Pnueli(2, open_(1, 2), (_P, _Q)),
            pnueli2_rewrite(1, _P, _Q, drop_exclusion=True),
            False, (), _GEN_PQ),
    ]
    ivl = open_(1, 2)
    rhs, rep = eliminate_counting(2, ivl, _P, flip_witness_bound=True)
    cases.append(_conditional_case(
        "mutant-elim-C-flipped-bound", "elim-C", Count(2, ivl, _P), rhs,
        rep.side_conditions, _GEN_P))
    return {c.case_id: c for c in cases}


MUTANT_STRESS: Dict[str, Tuple[str, ...]] = {
    # window sees argument events number 3 and 4 (residues 0 and 1) but not
    # a residue-2 event, so dropping that conjunct flips the verdict
    "mutant-mod-k-drop-residue": (
        "0 -\n1/2 P\n3/5 P\n3/2 P\n8/5 P\n3 -\n",
    ),
    # a pattern closes inside the window and another opens inside it, but no
    # single pattern lies entirely inside
    "mutant-pnueli2-no-exclusion": (
        "0 -\n1/2 P\n6/5 Q\n3/2 P\n5/2 Q\n7/2 -\n",
    ),
    # two argument events in [1,2) but only one in (1,2)
    "mutant-elim-C-flipped-bound": (
        "0 -\n1 P\n3/2 P\n2 -\n3 -\n",
    ),
}


def run_mutation_campaign(case_id: str, trials: int,
                          master_seed: int = 0) -> CampaignReport:
    case = mutated_cases()[case_id]
    stress = [parse_word(t) for t in MUTANT_STRESS.get(case_id, ())]
    return run_equivalence(case, trials, master_seed, stress_words=stress)


# -- marker-count bounds ---------------------------------------------------------

BOUND_IDS = ("gap-markers-pq", "gap-markers-witness", "boundary-runs",
             "unit-markers")


@dataclass(frozen=True)
class BoundReport:
    bound_id: str
    samples: int
    bound: int
    max_observed: int
    violation: Optional[str]                # rendered word exceeding the bound
    digest: str


def _count_markers_in_prefix(w: TimedWord, markers: Sequence[int],
                             lo: Fraction, hi: Fraction,
                             hi_closed: bool) -> int:
    base = w.ts(1)
    n = 0
    for h in markers:
        d = w.ts(h) - base
        if lo <= d and (d <= hi if hi_closed else d < hi):
            n += 1
    return n


def _gk_positions(w: TimedWord, prop: str, k: int) -> List[int]:
    """Positions j with the argument, at least k argument events strictly
    later, fewer than k strictly later within distance < 1 (direct count)."""
    idxs = [i for i in range(1, len(w) + 1) if prop in w.label(i)]
    out = []
    for j in idxs:
        later = [i for i in idxs if i > j]
        if len(later) >= k and \
                sum(1 for i in later if w.ts(i) - w.ts(j) < 1) < k:
            out.append(j)
    return out


def _mu_positions(w: TimedWord, prop: str, k: int) -> List[int]:
    """Positions j where the k-th strictly-later argument event sits exactly
    at distance 1, and j is the last position of its timestamp (or the next
    position carries the argument at the same timestamp)."""
    idxs = [i for i in range(1, len(w) + 1) if prop in w.label(i)]
    out = []
    for j in range(1, len(w) + 1):
        nxt_strict = j < len(w) and w.ts(j + 1) > w.ts(j)
        nxt_same_arg = j < len(w) and w.ts(j + 1) == w.ts(j) and (j + 1) in idxs
        if not (j == len(w) or nxt_strict or nxt_same_arg):
            continue
        within_closed = sum(1 for i in idxs if i > j and w.ts(i) - w.ts(j) <= 1)
        within_open = sum(1 for i in idxs if i > j and w.ts(i) - w.ts(j) < 1)
        if within_closed >= k > within_open:
            out.append(j)
    return out


def run_bound(bound_id: str, samples: int, master_seed: int = 0,
              a: int = 1, k: int = 2,
              automaton: str = "consec") -> BoundReport:
    """bound_id in {'gap-markers-pq', 'gap-markers-witness',
    'boundary-runs', 'unit-markers'}.  For 'gap-markers-witness' the
    `automaton` flag selects which bundled automaton's minimal-segment
    language is measured ('consec' or 'pq')."""
    if bound_id == "gap-markers-pq":
        wa = make_witness_automaton(pq_pattern_nfa(), pq_pattern_args())
        bound = 2 * a + 2
        gen = GenConfig(props=("P", "Q"), event_count=16, active_window=a + 2)
    elif bound_id == "gap-markers-witness":
        if automaton == "pq":
            wa = make_witness_automaton(pq_pattern_nfa(), pq_pattern_args())
            gen = GenConfig(props=("P", "Q"), event_count=16,
                            active_window=a + 2)
        else:
            wa = make_witness_automaton(consecutive_nfa(), consecutive_args())
            gen = GenConfig(event_count=16, active_window=a + 2)
        bound = (wa.m + 1) * (a + 1)
    elif bound_id == "boundary-runs":
        wa = None
        bound = k * a
        gen = GenConfig(event_count=16, active_window=a + 2, density=Fraction(3, 4))
    elif bound_id == "unit-markers":
        wa = None
        bound = k * (a + 1) + 1
        gen = GenConfig(event_count=16, active_window=a + 2, density=Fraction(3, 4))
    else:
        raise ValueError(bound_id)

    max_obs = 0
    violation: Optional[str] = None
    digest = hashlib.sha256()
    digest.update(f"{bound_id}:{a}:{k}:{master_seed}:{automaton}".encode())
    for idx in range(samples):
        w = generate_word(gen, derive_seed(master_seed, idx))
        if bound_id == "gap-markers-pq" or bound_id == "gap-markers-witness":
            markers = gap_markers(w, wa)
            n = _count_markers_in_prefix(w, markers, rat(0), rat(a), True)
        elif bound_id == "boundary-runs":
            n = _count_markers_in_prefix(w, _gk_positions(w, "P", k),
                                         rat(0), rat(a), False)
        else:
            n = _count_markers_in_prefix(w, _mu_positions(w, "P", k),
                                         rat(0), rat(a), True)
        max_obs = max(max_obs, n)
        digest.update(str(n).encode())
        if n > bound and violation is None:
            violation = render_word(w)
    if violation:
        digest.update(violation.encode())
    return BoundReport(bound_id, samples, bound, max_obs, violation,
                       digest.hexdigest())


# -- frozen counterexamples to the naive constructions ----------------------------

@dataclass(frozen=True)
class ReproCase:
    repro_id: str
    word: TimedWord
    naive: Formula
    exact: Formula
    expect_naive: bool
    expect_exact: bool

    def holds(self) -> bool:
        ev = Evaluation(self.word)
        return (ev.at(self.naive, 1) == self.expect_naive
                and ev.at(self.exact, 1) == self.expect_exact)


def repro_cases() -> List[ReproCase]:
    P = _P
    w1 = parse_word("0 -\n1/2 P\n3/2 P\n5/2 P\n7/2 P\n")
    r1 = ReproCase(
        "naive-counting-automaton", w1,
        counting_automod(3, open_(2, 3), P),
        Count(3, open_(2, 3), P),
        expect_naive=True, expect_exact=False)

    w2 = parse_word("0 -\n3/5 -\n7/10 -\n4/5 P\n9/10 P\n8/5 -\n17/10 P\n"
                    "21/10 P\n3 -\n4 -\n")
    r2 = ReproCase(
        "unit-shift-overapproximates", w2,
        Eventually(open_(0, 1), Count(2, open_(0, 1), P)),
        Count(2, open_(1, 2), P),
        expect_naive=True, expect_exact=False)

    w3 = parse_word("0 -\n1 -\n13/10 P\n17/10 P\n4 -\n")
    r3 = ReproCase(
        "unit-shift-underapproximates", w3,
        Eventually(open_(0, 1), Count(2, open_(0, 1), P)),
        Count(2, open_(1, 2), P),
        expect_naive=False, expect_exact=True)
    return [r1, r2, r3]

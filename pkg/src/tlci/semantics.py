"""Pointwise semantics over finite timed words.

``Evaluation`` computes, per distinct subformula, a truth vector over all
positions of one word; everything quantifies over existing positions only.
Until is strict: neither argument is constrained at the current position,
and the right argument must hold at the timed witness itself.

Also here: witness-segment extraction for witness automata, and the two
anchor conditions (C1/C2) with their word repair.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from . import automata
from .automata import Nfa, determinize_minimize
from .formulas import (And, Atom, AutoMod, Count, Eventually, Formula, Globally,
                       Next, Not, Once, Or, Pnueli, TT, Until, WeakEventually)
from .intervals import Interval
from .words import TimedWord, insert_empty_event


class Evaluation:
    """Truth tables for one timed word, lazily built bottom-up."""

    def __init__(self, w: TimedWord):
        self.word = w
        self.ts = [ts for (_l, ts) in w.events]
        self.labels = [lbl for (lbl, _t) in w.events]
        self.n = len(w.events)
        self._tab: Dict[Formula, List[bool]] = {}
        self._win: Dict[Interval, Tuple[List[int], List[int]]] = {}

    def truth(self, f: Formula) -> List[bool]:
        got = self._tab.get(f)
        if got is None:
            got = self._compute(f)
            self._tab[f] = got
        return got

    def at(self, f: Formula, i: int) -> bool:
        if not 1 <= i <= self.n:
            raise IndexError(f"position {i} out of 1..{self.n}")
        return self.truth(f)[i - 1]

    # -- node dispatch ------------------------------------------------------

    def _compute(self, f: Formula) -> List[bool]:
        n, ts = self.n, self.ts
        if isinstance(f, TT):
            return [True] * n
        if isinstance(f, Atom):
            return [f.name in lbl for lbl in self.labels]
        if isinstance(f, Not):
            return [not v for v in self.truth(f.arg)]
        if isinstance(f, And):
            lt, rt = self.truth(f.left), self.truth(f.right)
            return [a and b for a, b in zip(lt, rt)]
        if isinstance(f, Or):
            lt, rt = self.truth(f.left), self.truth(f.right)
            return [a or b for a, b in zip(lt, rt)]
        if isinstance(f, Next):
            ta = self.truth(f.arg)
            return [i + 1 < n and ta[i + 1] and f.ivl.contains(ts[i + 1] - ts[i])
                    for i in range(n)]
        if isinstance(f, Until):
            return self._until(f.ivl, self.truth(f.left), self.truth(f.right))
        if isinstance(f, Eventually):
            return self._until(f.ivl, [True] * n, self.truth(f.arg))
        if isinstance(f, WeakEventually):
            ta = self.truth(f.arg)
            ev = self._until(f.ivl, [True] * n, ta)
            return [a or b for a, b in zip(ta, ev)]
        if isinstance(f, Globally):
            ev = self._until(f.ivl, [True] * n, [not v for v in self.truth(f.arg)])
            return [not v for v in ev]
        if isinstance(f, Once):
            ta = self.truth(f.arg)
            out = []
            for i in range(n):
                hit = False
                for j in range(i, -1, -1):
                    d = ts[i] - ts[j]
                    if f.ivl.hi is not None and (d > f.ivl.hi or
                                                 (d == f.ivl.hi and not f.ivl.hi_closed)):
                        break
                    if ta[j] and f.ivl.contains(d):
                        hit = True
                        break
                out.append(hit)
            return out
        if isinstance(f, Count):
            return self._count(f.k, f.ivl, self.truth(f.arg))
        if isinstance(f, Pnueli):
            return self._pnueli(f.k, f.ivl, [self.truth(a) for a in f.args])
        if isinstance(f, AutoMod):
            return self._automod(f.nfa, f.ivl, [self.truth(a) for a in f.args])
        raise TypeError(f"unknown formula node {type(f).__name__}")

    def _window(self, ivl: Interval) -> Tuple[List[int], List[int]]:
        """For each position i, the contiguous block of positions j >= i
        whose distance lies in the interval, as half-open index ranges
        (two-pointer sweep: O(n) exact comparisons per interval)."""
        got = self._win.get(ivl)
        if got is not None:
            return got
        n, ts = self.n, self.ts
        lo_arr, hi_arr = [0] * n, [0] * n
        lov, loc = ivl.lo, ivl.lo_closed
        hiv, hic = ivl.hi, ivl.hi_closed
        lo = hi = 0
        for i in range(n):
            if lo < i:
                lo = i
            while lo < n:
                d = ts[lo] - ts[i]
                if d > lov or (loc and d == lov):
                    break
                lo += 1
            lo_arr[i] = lo
            if hiv is None:
                hi_arr[i] = n
            else:
                if hi < i:
                    hi = i
                while hi < n:
                    d = ts[hi] - ts[i]
                    if d > hiv or (not hic and d == hiv):
                        break
                    hi += 1
                hi_arr[i] = hi
        self._win[ivl] = (lo_arr, hi_arr)
        return lo_arr, hi_arr

    def _until(self, ivl: Interval, tl: List[bool], tr: List[bool]) -> List[bool]:
        n = self.n
        lo_arr, hi_arr = self._window(ivl)
        out = []
        for i in range(n):
            hit = False
            lo_i = lo_arr[i]
            for j in range(i + 1, hi_arr[i]):
                if j >= lo_i and tr[j]:
                    hit = True
                    break
                if not tl[j]:
                    break
            out.append(hit)
        return out

    def _count(self, k: int, ivl: Interval, ta: List[bool]) -> List[bool]:
        # k strictly-future arg positions; only the first and the k-th are
        # interval-checked, but by convexity everything between is inside too.
        n = self.n
        lo_arr, hi_arr = self._window(ivl)
        out = []
        for i in range(n):
            c = 0
            for j in range(max(i + 1, lo_arr[i]), hi_arr[i]):
                if ta[j]:
                    c += 1
                    if c >= k:
                        break
            out.append(c >= k)
        return out

    def _pnueli(self, k: int, ivl: Interval, targs: List[List[bool]]) -> List[bool]:
        n = self.n
        lo_arr, hi_arr = self._window(ivl)
        out = []
        for i in range(n):
            inside = [False] * n
            for j in range(max(i + 1, lo_arr[i]), hi_arr[i]):
                inside[j] = True
            # ok[j] at level m: a chain x_m = j < x_{m+1} < ... < x_k exists
            ok = [targs[k - 1][j] and inside[j] and j > i for j in range(n)]
            for m in range(k - 2, -1, -1):
                suffix = [False] * (n + 1)
                for j in range(n - 1, -1, -1):
                    suffix[j] = suffix[j + 1] or ok[j]
                ok = [targs[m][j] and j > i and suffix[j + 1] for j in range(n)]
            out.append(any(ok[j] and inside[j] for j in range(n)))
        return out

    def _automod(self, nfa: Nfa, ivl: Interval, targs: List[List[bool]]) -> List[bool]:
        n = self.n
        lo_arr, hi_arr = self._window(ivl)
        smap = automata.step_map(nfa)
        finals = nfa.finals
        out = []
        for i in range(n):
            frontier = {nfa.initial}
            hit = False
            lo_i = lo_arr[i]
            for j in range(i, hi_arr[i]):
                syms = [s + 1 for s in range(nfa.arity) if targs[s][j]]
                frontier = {d for st in frontier for s in syms
                            for d in smap.get((st, s), ())}
                if not frontier:
                    break
                if j >= lo_i and frontier & finals:
                    hit = True
                    break
            out.append(hit)
        return out


def eval_formula(w: TimedWord, f: Formula, i: int) -> bool:
    return Evaluation(w).at(f, i)


# -- witness automata --------------------------------------------------------

@dataclass(frozen=True)
class Segment:
    """A candidate witness: positions h..l (1-based, h <= l)."""
    h: int
    l: int


@dataclass(frozen=True)
class WitnessAutomaton:
    """A segment property: ``nfa`` over symbols 1..n reads the positions of
    a segment, where symbol s is available at a position iff args[s-1]
    holds there.  ``m`` is the state count of the minimal DFA for the
    nesting-minimal segment language (used in the witness-count bound)."""

    nfa: Nfa
    args: Tuple[Formula, ...]
    m: int

    def __post_init__(self) -> None:
        if len(self.args) != self.nfa.arity:
            raise ValueError("arity mismatch")


def make_witness_automaton(nfa: Nfa, args: Sequence[Formula]) -> WitnessAutomaton:
    from .rewrite import minimal_segment_nfa  # construction lives with the passes
    min_dfa = determinize_minimize(minimal_segment_nfa(nfa))
    return WitnessAutomaton(nfa, tuple(args), len(min_dfa.states))


def accepted_segments(w: TimedWord, wa: WitnessAutomaton,
                      ev: Optional[Evaluation] = None) -> List[Segment]:
    """All segments accepted by the raw automaton."""
    ev = ev or Evaluation(w)
    targs = [ev.truth(a) for a in wa.args]
    smap = automata.step_map(wa.nfa)
    finals = wa.nfa.finals
    n = len(w)
    out = []
    for h in range(n):
        frontier = {wa.nfa.initial}
        for j in range(h, n):
            syms = [s + 1 for s in range(wa.nfa.arity) if targs[s][j]]
            frontier = {d for st in frontier for s in syms
                        for d in smap.get((st, s), ())}
            if not frontier:
                break
            if frontier & finals:
                out.append(Segment(h + 1, j + 1))
    return out


def potential_witnesses(w: TimedWord, wa: WitnessAutomaton,
                        ev: Optional[Evaluation] = None) -> List[Segment]:
    """Accepted segments with no properly nested accepted segment, sorted by
    start.  Starts are unique; ends strictly increase with starts."""
    segs = accepted_segments(w, wa, ev)
    by_pair = {(s.h, s.l) for s in segs}
    out = []
    for s in segs:
        nested = any((h2, l2) in by_pair
                     for (h2, l2) in _proper_subsegments(s.h, s.l))
        if not nested:
            out.append(s)
    return sorted(out, key=lambda s: (s.h, s.l))


def _proper_subsegments(h: int, l: int):
    for h2 in range(h, l + 1):
        for l2 in range(h2, l + 1):
            if (h2, l2) != (h, l):
                yield (h2, l2)


def gap_markers(w: TimedWord, wa: WitnessAutomaton,
                ev: Optional[Evaluation] = None) -> List[int]:
    """Starts h_j of potential witnesses whose *next* potential witness ends
    at least 1 time unit after h_j."""
    wits = potential_witnesses(w, wa, ev)
    out = []
    for cur, nxt in zip(wits, wits[1:]):
        if w.ts(nxt.l) - w.ts(cur.h) >= 1:
            out.append(cur.h)
    return out


def eval_witness_property(w: TimedWord, wa: WitnessAutomaton, ivl: Interval,
                          i: int, ev: Optional[Evaluation] = None) -> bool:
    """True iff some accepted segment lies strictly after i with both ends
    inside the window i + ivl.  (The independent oracle for the automata
    rewrites; uses raw acceptance, which is equivalent to quantifying over
    nesting-minimal segments by interval convexity.)"""
    if not 1 <= i <= len(w):
        raise IndexError(f"position {i} out of 1..{len(w)}")
    base = w.ts(i)
    for s in accepted_segments(w, wa, ev):
        if s.h > i and ivl.contains(w.ts(s.h) - base) and ivl.contains(w.ts(s.l) - base):
            return True
    return False


# -- anchor conditions -------------------------------------------------------

@dataclass(frozen=True)
class C1Spec:
    psi: Formula
    k: int


@dataclass(frozen=True)
class C2Spec:
    members: Tuple[Formula, ...]


ConditionSpec = Union[C1Spec, C2Spec]


@dataclass(frozen=True)
class Violation:
    condition: str          # "C1" or "C2"
    position: int           # the triggering position j
    needed_ts: Fraction     # missing anchor timestamp (tau_j - 1)
    member: Optional[Formula] = None


def check_C1(w: TimedWord, psi: Formula, k: int,
             ev: Optional[Evaluation] = None) -> List[Violation]:
    """Positions j where psi holds, fewer than k earlier psi-positions sit at
    0 < d < 1, at least k psi-positions (j included) sit at 0 <= d < 1, and
    no event exists at tau_j - 1.  Positions with tau_j - tau_1 < 1 are
    exempt."""
    ev = ev or Evaluation(w)
    tpsi = ev.truth(psi)
    ts = ev.ts
    have = set(ts)
    out = []
    for j in range(len(w)):
        if not tpsi[j]:
            continue
        if ts[j] - ts[0] < 1:
            continue
        strict = sum(1 for p in range(j) if tpsi[p] and 0 < ts[j] - ts[p] < 1)
        weak = sum(1 for p in range(j + 1) if tpsi[p] and 0 <= ts[j] - ts[p] < 1)
        if strict < k <= weak and (ts[j] - 1) not in have:
            out.append(Violation("C1", j + 1, ts[j] - 1))
    return out


def check_C2(w: TimedWord, members: Sequence[Formula],
             ev: Optional[Evaluation] = None) -> List[Violation]:
    """First-in-window occurrences: for each member m and position j where m
    holds with no earlier m-position within distance < 1, an event must
    exist at tau_j - 1 (same exemption as C1)."""
    ev = ev or Evaluation(w)
    ts = ev.ts
    have = set(ts)
    out = []
    for member in members:
        tm = ev.truth(member)
        for j in range(len(w)):
            if not tm[j]:
                continue
            if ts[j] - ts[0] < 1:
                continue
            if any(tm[p] and ts[j] - ts[p] < 1 for p in range(j)):
                continue
            if (ts[j] - 1) not in have:
                out.append(Violation("C2", j + 1, ts[j] - 1, member))
    return out


def condition_violations(w: TimedWord, specs: Sequence[ConditionSpec]) -> List[Violation]:
    ev = Evaluation(w)
    out: List[Violation] = []
    for spec in specs:
        if isinstance(spec, C1Spec):
            out.extend(check_C1(w, spec.psi, spec.k, ev))
        else:
            out.extend(check_C2(w, spec.members, ev))
    return out


def repair_conditions(w: TimedWord, specs: Sequence[ConditionSpec],
                      max_rounds: int = 10) -> TimedWord:
    """Insert empty anchor events until all conditions hold.  Inserting
    events can shift truth values, so iterate to a fixpoint."""
    for _ in range(max_rounds):
        violations = condition_violations(w, specs)
        if not violations:
            return w
        for ts in sorted({v.needed_ts for v in violations}):
            w = insert_empty_event(w, ts)
    if condition_violations(w, specs):
        raise RuntimeError(f"condition repair did not converge in {max_rounds} rounds")
    return w

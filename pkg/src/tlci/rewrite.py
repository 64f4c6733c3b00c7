"""Rewrite passes between the counting logics and (extended) MITL.

Pass ids:
  mod-k          counting via modulo-k counter automata
  rational       counting via rational-constant subdivision (plus past)
  pnueli2        binary Pnueli modality into automata modalities
  witness        generalized witness-automaton property into automata modalities
  elim-F         bounded bilateral Eventually into unilateral form (needs C2)
  elim-C         unit-interval Count into unilateral form (needs C1 + C2)
  elim-unbounded Count over <a,inf) into an Eventually chain
  unilateral     whole-formula driver composing the above
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .automata import Nfa, complement, intersect, make_nfa
from .formulas import (And, Atom, AutoMod, Count, Eventually, Formula, Globally,
                       Next, Not, Once, Or, Pnueli, TRUE, Until, WeakEventually,
                       conj, disj, implies, neg, next_positive, node_count)
from .intervals import (AT0, FULL, GT0, Interval, at_least, closed, closed_open,
                        open_, open_closed, rat, up_to)
from .semantics import C1Spec, C2Spec, ConditionSpec

MAX_OUTPUT_NODES = 10 ** 6


class RewriteError(ValueError):
    pass


@dataclass(frozen=True)
class PassReport:
    pass_id: str
    input_formula: Formula
    output_formula: Formula
    side_conditions: Tuple[ConditionSpec, ...]
    nodes_in: int
    nodes_out: int


def _report(pass_id: str, fin: Formula, fout: Formula,
            conditions: Sequence[ConditionSpec] = ()) -> PassReport:
    n_out = node_count(fout)
    if n_out > MAX_OUTPUT_NODES:
        raise RewriteError(f"{pass_id}: output blew up to {n_out} nodes")
    return PassReport(pass_id, fin, fout, tuple(conditions), node_count(fin), n_out)


# -- fixed automata (the Until and counting modalities as automata) ----------

def until_nfa() -> Nfa:
    """Three states: any first step, left-argument self-loop, right-argument
    exit.  The run ends at the exit, so the timing constraint lands on the
    position where the right argument holds."""
    return make_nfa(3, "q0",
                    [("q0", 1, "q1"), ("q0", 2, "q1"), ("q0", 3, "q1"),
                     ("q1", 1, "q1"), ("q1", 2, "q2")],
                    ["q2"])


def until_automod(ivl: Interval, f: Formula, g: Formula) -> Formula:
    return AutoMod(until_nfa(), ivl, (f, g, TRUE))


def counting_nfa(k: int) -> Nfa:
    """The naive counting automaton: any first step, then k progress
    transitions on the argument symbol, any-loops everywhere (including the
    final state, as drawn)."""
    if k < 1:
        raise ValueError("k >= 1")
    trans = [("c0", 1, "c1"), ("c0", 2, "c1")]
    for i in range(1, k + 2):
        trans += [(f"c{i}", 1, f"c{i}"), (f"c{i}", 2, f"c{i}")]
    for i in range(1, k + 1):
        trans.append((f"c{i}", 1, f"c{i + 1}"))
    return make_nfa(2, "c0", trans, [f"c{k + 1}"])


def counting_automod(k: int, ivl: Interval, arg: Formula) -> Formula:
    return AutoMod(counting_nfa(k), ivl, (arg, TRUE))


# -- mod-k counters ----------------------------------------------------------

def residue_nfa(k: int, r: int) -> Nfa:
    """Accepts runs ending exactly at an argument event whose index among
    the argument events after the anchor is congruent to r (mod k), r in
    1..k.  Symbols: 1 = argument, 2 = not argument (exact counting)."""
    if not 1 <= r <= k:
        raise ValueError("need 1 <= r <= k")
    trans = [("s", 1, "n0"), ("s", 2, "n0")]
    for m in range(k):
        trans.append((f"n{m}", 2, f"n{m}"))
        trans.append((f"n{m}", 1, f"n{(m + 1) % k}"))
        if (m + 1) % k == r % k:
            trans.append((f"n{m}", 1, "acc"))
    return make_nfa(2, "s", trans, ["acc"])


def modulo_counter_rewrite(k: int, ivl: Interval, arg: Formula,
                           drop_residue: Optional[int] = None) -> Formula:
    """Count(k, I, arg) as a conjunction of k automata modalities, one per
    residue class of the argument-event index.  ``drop_residue`` is a
    mutation hook for sensitivity testing."""
    if ivl.hi is None:
        raise RewriteError("mod-k expects a bounded interval")
    parts = [AutoMod(residue_nfa(k, r), ivl, (arg, neg(arg)))
             for r in range(1, k + 1) if r != drop_residue]
    return conj(*parts)


# -- rational-constant subdivision -------------------------------------------

def rational_rewrite(k: int, ivl: Interval, arg: Formula) -> Formula:
    """Count(k, I, arg) in MITL with rational constants (plus past).

    Assumes no two argument events share a timestamp: with simultaneous
    events the chained strict gaps below cannot see zero-width steps.
    """
    if ivl.hi is None:
        raise RewriteError("rational subdivision expects a bounded interval")
    if k == 2 and not ivl.lo_closed and not ivl.hi_closed \
            and ivl.hi - ivl.lo == 1:
        return _rational_k2_unit(ivl.lo, arg)
    return _count_in(k, ivl, arg)


def _rational_k2_unit(a: Fraction, arg: Formula) -> Formula:
    """The half-interval split for two witnesses in (a, a+1)."""
    half = Fraction(1, 2)
    lo, mid, hi = a, a + half, a + 1
    d1 = Eventually(open_(lo, mid), And(arg, Eventually(open_(0, half), arg)))
    d2 = Eventually(open_(mid, hi), And(arg, Once(open_(0, half), arg)))
    d3 = And(Eventually(open_(lo, mid), arg), Eventually(open_(mid, hi), arg))
    return disj(d1, d2, d3)


def _count_in(k: int, J: Interval, arg: Formula) -> Formula:
    """`at least k argument events in the window J` with rational-aligned
    subdivision: split at an internal cell boundary, or all witnesses sit in
    one width-|J|/(2k) cell and are reached by a forward or backward chain
    of sub-cell-width steps."""
    if k == 1:
        return Eventually(J, arg)
    lo, hi = J.lo, J.hi
    delta = (hi - lo) / (2 * k)
    parts: List[Formula] = []
    for c in range(1, 2 * k):
        beta = lo + c * delta
        left = Interval(lo, beta, J.lo_closed, True)
        right = Interval(beta, hi, False, J.hi_closed)
        for j in range(1, k):
            parts.append(And(_count_in(j, left, arg), _count_in(k - j, right, arg)))
    for c in range(1, 2 * k + 1):
        cell = Interval(lo + (c - 1) * delta, lo + c * delta,
                        J.lo_closed if c == 1 else False,
                        J.hi_closed if c == 2 * k else False)
        if c <= k + 1:
            chain = arg
            for _ in range(k - 1):
                chain = And(arg, Eventually(open_(0, delta), chain))
            parts.append(Eventually(cell, chain) if chain is not arg
                         else Eventually(cell, arg))
        else:
            chain = arg
            for _ in range(k - 1):
                chain = And(arg, Once(open_(0, delta), chain))
            parts.append(Eventually(cell, chain))
    return disj(*parts)


# -- unbounded counting ------------------------------------------------------

def _future_chain(arg: Formula, k: int) -> Formula:
    """S^k: arg now and k-1 further arg positions strictly later."""
    out = arg
    for _ in range(k - 1):
        out = And(arg, Next(FULL, WeakEventually(FULL, out)))
    return out


def eliminate_unbounded_counting(f: Formula) -> Formula:
    """Rewrite every Count over <a,inf) into F_<a,inf) of a chain."""
    def go(g: Formula) -> Formula:
        g = _rebuild(g, [go(c) for c in g.children()])
        if isinstance(g, Count) and g.ivl.hi is None and g.ivl.lo > 0:
            return Eventually(g.ivl, _future_chain(g.arg, g.k))
        return g
    return go(f)


def _rebuild(g: Formula, kids: List[Formula]) -> Formula:
    if not kids:
        return g
    if isinstance(g, Not):
        return Not(*kids)
    if isinstance(g, (And, Or)):
        return type(g)(*kids)
    if isinstance(g, Until):
        return Until(g.ivl, *kids)
    if isinstance(g, (Next, Eventually, WeakEventually, Globally, Once)):
        return type(g)(g.ivl, kids[0])
    if isinstance(g, Count):
        return Count(g.k, g.ivl, kids[0])
    if isinstance(g, Pnueli):
        return Pnueli(g.k, g.ivl, tuple(kids))
    if isinstance(g, AutoMod):
        return AutoMod(g.nfa, g.ivl, tuple(kids))
    raise TypeError(type(g).__name__)


# -- minimal segments of an automaton ----------------------------------------

def proper_infix_nfa(nfa: Nfa) -> Nfa:
    """Accepts every word that has a proper infix accepted by ``nfa``:
    either the infix starts after position one (skip branch) or it ends
    before the last position (trailing sink)."""
    trans: List[Tuple[str, int, str]] = []
    syms = range(1, nfa.arity + 1)
    for s in syms:
        trans.append(("P0", s, "SK"))
        trans.append(("SK", s, "SK"))
        trans.append(("T", s, "T"))
    for (src, sym, dst) in sorted(nfa.transitions):
        trans.append((f"A:{src}", sym, f"A:{dst}"))
        trans.append((f"B:{src}", sym, f"B:{dst}"))
        if src == nfa.initial:
            trans.append(("SK", sym, f"A:{dst}"))
            trans.append(("P0", sym, f"B:{dst}"))
    for fstate in sorted(nfa.finals):
        for s in syms:
            trans.append((f"A:{fstate}", s, "T"))
            trans.append((f"B:{fstate}", s, "T"))
    finals = ["T"] + [f"A:{fstate}" for fstate in sorted(nfa.finals)]
    return make_nfa(nfa.arity, "P0", trans, finals)


def minimal_segment_nfa(nfa: Nfa) -> Nfa:
    """Accepts exactly the accepted words none of whose proper infixes are
    accepted, i.e. the nesting-minimal witness segments."""
    return intersect(nfa, complement(proper_infix_nfa(nfa)))


def _embed(trans: List[Tuple[str, int, str]], finals: List[str],
           nfa: Nfa, entry: str, prefix: str) -> None:
    """Copy ``nfa`` (states renamed with ``prefix``) into a transition list,
    entering via its initial state's transitions from ``entry``."""
    for (src, sym, dst) in sorted(nfa.transitions):
        trans.append((f"{prefix}{src}", sym, f"{prefix}{dst}"))
        if src == nfa.initial:
            trans.append((entry, sym, f"{prefix}{dst}"))
    finals.extend(f"{prefix}fstate" for fstate in [])
    finals.extend(f"{prefix}{fstate}" for fstate in sorted(nfa.finals))


# -- binary Pnueli modality ---------------------------------------------------

def _pnueli2_pattern(P: Formula, Q: Formula) -> Formula:
    """A position where the two-event pattern starts: first argument now,
    neither argument strictly until the second argument occurs."""
    return And(P, Until(FULL, And(neg(P), neg(Q)), Q))


def pnueli2_rewrite(a: int, P: Formula, Q: Formula,
                    drop_exclusion: bool = False) -> Formula:
    """Pn{2}(a,a+1)(P, Q) into automata modalities over unilateral and
    unit intervals.  ``drop_exclusion`` omits the over-count exclusion
    (mutation hook)."""
    if a < 0:
        raise RewriteError("need a >= 0")
    W = _pnueli2_pattern(P, Q)
    nPQ = And(neg(P), neg(Q))

    # existence: some pattern start in (a,a+1) whose closing event also
    # lies in (a,a+1)
    a1 = make_nfa(4, "q0",
                  [("q0", 4, "s0"), ("s0", 4, "s0"), ("s0", 1, "s1"),
                   ("s1", 3, "s1"), ("s1", 2, "acc")],
                  ["acc"])
    wit = And(Eventually(open_(a, a + 1), W),
              AutoMod(a1, open_(a, a + 1), (P, Q, nPQ, TRUE)))
    if drop_exclusion:
        return wit

    # G: from a pattern start, the next pattern start closes >= 1 later
    a2 = make_nfa(4, "q0",
                  [("q0", 1, "s1"), ("s1", 2, "s1"), ("s1", 1, "s2"),
                   ("s2", 3, "s2"), ("s2", 4, "acc")],
                  ["acc"])
    G = AutoMod(a2, at_least(1), (W, neg(W), nPQ, Q))

    parts = []
    for c in range(1, 2 * a + 3):
        trans = [("b0", 1, "g0"), ("b0", 2, "g0")]
        for m in range(c):
            trans.append((f"g{m}", 2, f"g{m}"))
            nxt = f"g{m + 1}" if m + 1 < c else "s1"
            trans.append((f"g{m}", 1, nxt))
        trans += [("s1", 4, "s1"), ("s1", 3, "s2"),
                  ("s2", 5, "s2"), ("s2", 6, "acc")]
        bc = make_nfa(6, "b0", trans, ["acc"])
        parts.append(conj(Count(c, closed(0, a), G),
                          neg(Count(c + 1, closed(0, a), G)),
                          AutoMod(bc, at_least(a + 1),
                                  (G, neg(G), W, neg(W), nPQ, Q))))
    return And(wit, neg(disj(*parts)))


# -- generalized witness properties -------------------------------------------

def witness_rewrite(nfa: Nfa, args: Sequence[Formula], a: int, m: int,
                    drop_exclusion: bool = False) -> Formula:
    """`some minimal witness segment starts and ends in (a,a+1)` into
    automata modalities over unilateral and unit intervals.  ``m`` is the
    number of states of the minimized minimal-segment automaton (bounds the
    marker count); ``drop_exclusion`` is a mutation hook."""
    if a < 0:
        raise RewriteError("need a >= 0")
    psi1 = minimal_segment_nfa(nfa)
    wargs = tuple(args)
    if len(wargs) != nfa.arity:
        raise RewriteError("argument count must match automaton arity")
    n = nfa.arity
    WS = AutoMod(psi1, FULL, wargs)

    # existence: a window position is the 2nd-or-later letter of a minimal
    # segment run that ends at it... rather: some strictly-later start whose
    # segment's end is still in the window.  End automaton: skip >= 1
    # positions, then run the segment automaton to acceptance.
    etrans: List[Tuple[str, int, str]] = [("e0", n + 1, "e1"), ("e1", n + 1, "e1")]
    efinals: List[str] = []
    _embed(etrans, efinals, psi1, "e1", "w:")
    endnfa = make_nfa(n + 1, "e0", etrans, efinals)
    wit = And(Eventually(open_(a, a + 1), WS),
              AutoMod(endnfa, open_(a, a + 1), wargs + (TRUE,)))
    if drop_exclusion:
        return wit

    # G: from a segment start, the next segment start's end is >= 1 later
    gtrans: List[Tuple[str, int, str]] = [("q0", n + 1, "s1"), ("s1", n + 2, "s1")]
    gfinals: List[str] = []
    _embed(gtrans, gfinals, psi1, "s1", "w:")
    gnfa = make_nfa(n + 2, "q0", gtrans, gfinals)
    gargs = wargs + (WS, neg(WS))
    G = AutoMod(gnfa, at_least(1), gargs)

    bound = (m + 1) * (a + 1)
    parts = []
    for c in range(1, bound + 1):
        btrans: List[Tuple[str, int, str]] = [("b0", n + 3, "g0"), ("b0", n + 4, "g0")]
        for j in range(c):
            btrans.append((f"g{j}", n + 4, f"g{j}"))
            nxt = f"g{j + 1}" if j + 1 < c else "s1"
            btrans.append((f"g{j}", n + 3, nxt))
        btrans.append(("s1", n + 2, "s1"))
        bfinals: List[str] = []
        _embed(btrans, bfinals, psi1, "s1", "w:")
        bnfa = make_nfa(n + 4, "b0", btrans, bfinals)
        bargs = wargs + (WS, neg(WS), G, neg(G))
        parts.append(conj(Count(c, closed(0, a), G),
                          neg(Count(c + 1, closed(0, a), G)),
                          AutoMod(bnfa, at_least(a + 1), bargs)))
    return And(wit, neg(disj(*parts)))


# -- bounded Eventually into unilateral form ----------------------------------

def boundary_pattern(chi: Formula) -> Formula:
    """A position from which the next chi-position is exactly distance-1-ish:
    some strictly later position exists, the first chi-occurrence is within
    [0,1] and also at >= 1, i.e. lands on the unit boundary."""
    return conj(next_positive(),
                Until(closed(0, 1), neg(chi), chi),
                Until(at_least(1), neg(chi), chi))


def _last_of_timestamp() -> Formula:
    """No later position shares the current timestamp."""
    return neg(Next(AT0, TRUE))


def _g_unit(chi: Formula) -> Formula:
    """G_(0,1) chi in unilateral form: the [0,1) variant holds here or at
    some later position of the same timestamp (at the last one the two
    windows coincide; earlier ones only strengthen the claim)."""
    return Or(Globally(closed_open(0, 1), chi),
              Eventually(AT0, Globally(closed_open(0, 1), chi)))


def unit_pieces(ivl: Interval) -> List[Interval]:
    """Split a bounded interval with integer endpoints into unit-width
    pieces, preserving the outer closures."""
    if ivl.hi is None:
        raise RewriteError("bounded interval required")
    a, b = ivl.lo, ivl.hi
    if a.denominator != 1 or b.denominator != 1:
        raise RewriteError(f"integer endpoints required, got {ivl}")
    if b - a == 1:
        return [ivl]
    pieces = [Interval(a, a + 1, ivl.lo_closed, True)]
    c = a + 1
    while c + 1 < b:
        pieces.append(open_closed(c, c + 1))
        c += 1
    pieces.append(Interval(b - 1, b, False, ivl.hi_closed))
    return pieces


def _elim_F(ivl: Interval, chi: Formula, collected: List[Formula]) -> Formula:
    if ivl.is_unilateral():
        return Eventually(ivl, chi)
    return disj(*[_elim_F_unit(p, chi, collected) for p in unit_pieces(ivl)])


def _elim_F_unit(J: Interval, chi: Formula, collected: List[Formula]) -> Formula:
    l = J.lo
    if l == 0:
        # (0,1>: anchor at the last position of the current timestamp, where
        # the weak window [0,1> contains no distance-0 position and so
        # coincides with the strict window
        inner = And(_last_of_timestamp(),
                    Eventually(Interval(rat(0), J.hi, True, J.hi_closed), chi))
        return Or(inner, Eventually(AT0, inner))
    collected.append(chi)
    xi = boundary_pattern(chi)
    shifted = J.shift(-1)
    if shifted.lo == 0 and shifted.lo_closed:
        z1 = Or(xi, Eventually(shifted, xi))
    else:
        z1 = _elim_F(shifted, xi, collected)
    # interior witness: chi in the previous unit window, not explained by a
    # long chi-free stretch right after the window
    W2 = Interval(l - 1, l, False, not J.lo_closed)
    g_not = _g_unit(neg(chi))
    z2 = And(_elim_F(W2, chi, collected), neg(_elim_F(W2, g_not, collected)))
    return Or(z1, z2)


def _dedup(fs: Sequence[Formula]) -> Tuple[Formula, ...]:
    out: List[Formula] = []
    for f in fs:
        if not any(f == g for g in out):
            out.append(f)
    return tuple(out)


def eliminate_eventually(ivl: Interval, arg: Formula) -> Tuple[Formula, PassReport]:
    """F_ivl arg (bounded bilateral, integer endpoints) into unilateral form.
    Sound and complete only on words carrying the anchor events recorded in
    the C2 side condition."""
    if ivl.is_unilateral():
        raise RewriteError("interval is already unilateral")
    fin = Eventually(ivl, arg)
    collected: List[Formula] = []
    out = _elim_F(ivl, arg, collected)
    conds: List[ConditionSpec] = []
    members = _dedup(collected)
    if members:
        conds.append(C2Spec(members))
    return out, _report("elim-F", fin, out, conds)


def build_phi_family(phi: Formula, a: int) -> List[List[Formula]]:
    """Levels 0..a of the boundary/stretch closure of phi: the argument
    formulas whose anchors the unit-window recursion relies on."""
    levels: List[List[Formula]] = [[phi]]
    for _ in range(a):
        cands: List[Formula] = []
        for f in levels[-1]:
            cands.extend([f, neg(f)])
        cands = list(_dedup(cands))
        nxt = [boundary_pattern(c) for c in cands] + [_g_unit(c) for c in cands]
        levels.append(list(_dedup(nxt)))
    return levels


# -- unit-interval counting into unilateral form -------------------------------

def marker_formula(psi: Formula, k: int) -> Formula:
    """mu: a position from which the window (0,1] contains at least k psi
    events but [0,1) does not -- the k-th event sits exactly on the unit
    boundary.  The first conjunct anchors at the last position of the
    current timestamp."""
    return conj(Or(next_positive(), Next(AT0, psi)),
                Count(k, closed(0, 1), psi),
                neg(Count(k, closed_open(0, 1), psi)))


def _count_weak(k: int, ivl: Interval, arg: Formula) -> Formula:
    if k == 0:
        return TRUE
    return Count(k, ivl, arg)


def condition_formula_C(psi: Formula, k: int) -> Formula:
    """Holds at position 1 exactly when every k-th-event boundary has its
    anchor: no position sees the strict-window count flip across the unit
    boundary without a position exactly at distance 1."""
    bad1 = conj(Next(GT0, neg(psi)),
                neg(Count(k, closed(0, 1), psi)),
                Next(FULL, _count_weak(k, closed_open(0, 1), psi)))
    bad2 = conj(Next(GT0, psi),
                neg(Count(k, closed(0, 1), psi)),
                Next(FULL, _count_weak(k - 1, closed_open(0, 1), psi)))
    return neg(Or(WeakEventually(FULL, bad1), WeakEventually(FULL, bad2)))


def build_psi_family(psi: Formula, k: int, a: int) -> List[List[Formula]]:
    """Levels 1..a of the closure seeded by the boundary marker of psi."""
    levels: List[List[Formula]] = [[marker_formula(psi, k)]]
    for _ in range(a - 1):
        cands: List[Formula] = []
        for f in levels[-1]:
            cands.extend([f, neg(f)])
        cands = list(_dedup(cands))
        nxt = [boundary_pattern(c) for c in cands] + [_g_unit(c) for c in cands]
        levels.append(list(_dedup(nxt)))
    return levels


def eliminate_counting(k: int, ivl: Interval, psi: Formula,
                       flip_witness_bound: bool = False
                       ) -> Tuple[Formula, PassReport]:
    """Count(k, (a,a+1), psi) into unilateral form (open unit interval,
    integer a >= 1).  Needs the C1 anchor condition for psi and the C2
    anchors of the recursive unit-window elimination.
    ``flip_witness_bound`` closes the left end of the chain-head window
    (mutation hook)."""
    fin = Count(k, ivl, psi)
    if ivl.hi is None or ivl.lo_closed or ivl.hi_closed \
            or ivl.hi - ivl.lo != 1 or ivl.lo.denominator != 1 or ivl.lo < 1:
        raise RewriteError(f"need an open unit interval (a,a+1), a >= 1; got {ivl}")
    a = int(ivl.lo)
    if k == 1:
        out, rep = eliminate_eventually(ivl, psi)
        return out, _report("elim-C", fin, out, rep.side_conditions)

    collected: List[Formula] = []
    psi1 = _future_chain(psi, k)
    mu = marker_formula(psi, k)
    Gk = conj(psi, Count(k, FULL, psi), neg(Count(k, closed_open(0, 1), psi)))
    E = Or(Gk, mu)

    part1 = disj(*[And(Count(n, closed(0, a), Gk),
                       neg(Count(n, closed_open(0, a), Gk)))
                   for n in range(1, k * a + 2)])

    n_max = k * a + k * (a + 1) + 1
    part3_items = []
    for n in range(1, n_max + 1):
        # hop from one marker position to the next: every landing asserts the
        # marker disjunction itself, so the n-th landing is the n-th marker
        rest: Formula = And(Gk, neg(mu))
        for _ in range(n - 1):
            rest = And(E, Until(FULL, neg(E), rest))
        chain = Until(FULL, neg(E), rest)
        part3_items.append(conj(Count(n, closed_open(0, a), E),
                                neg(Count(n + 1, closed_open(0, a), E)),
                                chain))
    phi_out = Or(part1, disj(*part3_items))

    head = Interval(rat(a), rat(a + 1), flip_witness_bound, False)
    first = _elim_F(head, psi1, collected)
    b1 = And(_elim_F(open_(a - 1, a), mu, collected), neg(phi_out))
    g_arg = implies(psi, Count(k, closed_open(0, 1), psi))
    b2 = And(_elim_F(open_closed(a - 1, a), psi, collected),
             neg(_elim_F(open_closed(a - 1, a), neg(g_arg), collected)))
    out = And(first, Or(b1, b2))

    conds: List[ConditionSpec] = [C1Spec(psi, k)]
    members = _dedup(collected)
    if members:
        conds.append(C2Spec(members))
    return out, _report("elim-C", fin, out, conds)


# -- whole-formula driver ------------------------------------------------------

def rewrite_to_unilateral(f: Formula) -> Tuple[Formula, PassReport]:
    """Rewrite every bilateral interval in ``f`` into unilateral form,
    bottom-up.  Unsupported shapes (bilateral Until, counting over anything
    but <a,inf) / [0,b> / open unit intervals, any past or automata input)
    raise RewriteError."""
    conds: List[ConditionSpec] = []

    def go(g: Formula) -> Formula:
        g = _rebuild(g, [go(c) for c in g.children()])
        if isinstance(g, (Once, Pnueli, AutoMod)):
            raise RewriteError(f"{type(g).__name__} is not accepted as driver input")
        ivl = getattr(g, "ivl", None)
        if ivl is None or ivl.is_unilateral():
            if isinstance(g, Count) and ivl is not None \
                    and ivl.hi is None and ivl.lo > 0:
                return Eventually(ivl, _future_chain(g.arg, g.k))
            return g
        if isinstance(g, Eventually):
            out, rep = eliminate_eventually(ivl, g.arg)
            conds.extend(rep.side_conditions)
            return out
        if isinstance(g, WeakEventually):
            out, rep = eliminate_eventually(ivl, g.arg)
            conds.extend(rep.side_conditions)
            return Or(g.arg, out)
        if isinstance(g, Globally):
            out, rep = eliminate_eventually(ivl, neg(g.arg))
            conds.extend(rep.side_conditions)
            return neg(out)
        if isinstance(g, Next):
            return And(Next(Interval(rat(0), ivl.hi, True, ivl.hi_closed), g.arg),
                       Next(Interval(ivl.lo, None, ivl.lo_closed, False), TRUE))
        if isinstance(g, Count):
            if g.ivl.hi is None:
                return Eventually(g.ivl, _future_chain(g.arg, g.k))
            out, rep = eliminate_counting(g.k, g.ivl, g.arg)
            conds.extend(rep.side_conditions)
            return out
        if isinstance(g, Until):
            raise RewriteError("bilateral Until is out of scope for the driver")
        raise RewriteError(f"unsupported bilateral node {type(g).__name__}")

    out = go(f)
    return out, _report("unilateral", f, out, _dedup_conditions(conds))


def _dedup_conditions(conds: Sequence[ConditionSpec]) -> Tuple[ConditionSpec, ...]:
    out: List[ConditionSpec] = []
    for c in conds:
        if not any(c == d for d in out):
            out.append(c)
    return tuple(out)

"""Finite automata over small integer alphabets {1..arity}.

These drive the automata modalities: a run consumes one symbol per word
position (non-empty runs only), so acceptance of the empty word is never
consulted.  ``determinize_minimize`` returns a partial minimal DFA (the
dead state, if any, is dropped).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Sequence, Tuple

State = str
Transition = Tuple[State, int, State]


@dataclass(frozen=True)
class Nfa:
    arity: int
    states: FrozenSet[State]
    initial: State
    transitions: FrozenSet[Transition]
    finals: FrozenSet[State]

    def __post_init__(self) -> None:
        if self.arity < 1:
            raise ValueError("arity must be >= 1")
        if self.initial not in self.states:
            raise ValueError("initial state missing from state set")
        if not self.finals <= self.states:
            raise ValueError("final states must be a subset of states")
        for (src, sym, dst) in self.transitions:
            if src not in self.states or dst not in self.states:
                raise ValueError(f"dangling transition {(src, sym, dst)}")
            if not 1 <= sym <= self.arity:
                raise ValueError(f"symbol {sym} out of range 1..{self.arity}")
        object.__setattr__(self, "_hash", hash(
            (self.arity, self.states, self.initial, self.transitions, self.finals)))

    def __hash__(self) -> int:
        return self._hash  # type: ignore[attr-defined]

    def is_deterministic(self) -> bool:
        seen = set()
        for (src, sym, _dst) in self.transitions:
            if (src, sym) in seen:
                return False
            seen.add((src, sym))
        return True


def make_nfa(arity: int, initial: State, transitions: Iterable[Transition],
             finals: Iterable[State], extra_states: Iterable[State] = ()) -> Nfa:
    trans = frozenset(transitions)
    states = {initial, *extra_states, *(s for (s, _, _) in trans), *(d for (_, _, d) in trans)}
    return Nfa(arity, frozenset(states), initial, trans, frozenset(finals))


@functools.lru_cache(maxsize=None)
def step_map(nfa: Nfa) -> Dict[Tuple[State, int], Tuple[State, ...]]:
    out: Dict[Tuple[State, int], list] = {}
    for (src, sym, dst) in sorted(nfa.transitions):
        out.setdefault((src, sym), []).append(dst)
    return {k: tuple(v) for k, v in out.items()}


def accepts(nfa: Nfa, word: Sequence[int]) -> bool:
    """Non-empty word over 1..arity."""
    if not word:
        raise ValueError("automata run on non-empty words only")
    smap = step_map(nfa)
    frontier = {nfa.initial}
    for sym in word:
        frontier = {d for s in frontier for d in smap.get((s, sym), ())}
        if not frontier:
            return False
    return bool(frontier & nfa.finals)


def _complete(dfa_trans: Dict[Tuple[State, int], State], states: set, arity: int):
    """Add a dead sink so every (state, symbol) has a successor."""
    dead = "@dead"
    need = any((s, a) not in dfa_trans for s in states for a in range(1, arity + 1))
    if need:
        states.add(dead)
        for s in list(states):
            for a in range(1, arity + 1):
                dfa_trans.setdefault((s, a), dead)
    return dead if need else None


def determinize(nfa: Nfa) -> Nfa:
    """Subset construction; reachable part only, partial."""
    smap = step_map(nfa)
    start = frozenset({nfa.initial})
    names: Dict[FrozenSet[State], State] = {}
    order = []

    def name(ss: FrozenSet[State]) -> State:
        if ss not in names:
            names[ss] = f"d{len(names)}"
            order.append(ss)
        return names[ss]

    name(start)
    trans = set()
    idx = 0
    while idx < len(order):
        cur = order[idx]
        idx += 1
        for a in range(1, nfa.arity + 1):
            nxt = frozenset(d for s in cur for d in smap.get((s, a), ()))
            if nxt:
                trans.add((names[cur], a, name(nxt)))
    finals = frozenset(names[ss] for ss in order if ss & nfa.finals)
    states = frozenset(names[ss] for ss in order)
    return Nfa(nfa.arity, states, names[start], frozenset(trans), finals)


def minimize(dfa: Nfa) -> Nfa:
    """Moore partition refinement on the completed DFA; dead states dropped.

    States that cannot reach a final state are removed afterwards, so the
    result is a partial minimal DFA; its state count is the canonical
    "minimal size" used for the witness-count bounds.
    """
    if not dfa.is_deterministic():
        raise ValueError("minimize expects a DFA")
    arity = dfa.arity
    trans = {(s, a): d for (s, a, d) in dfa.transitions}
    states = set(dfa.states)
    dead = _complete(trans, states, arity)

    # initial partition: finals vs non-finals
    part = {s: (s in dfa.finals) for s in states}
    while True:
        sig = {s: (part[s], tuple(part[trans[(s, a)]] for a in range(1, arity + 1)))
               for s in states}
        blocks: Dict[object, int] = {}
        newpart = {}
        for s in sorted(states):
            key = sig[s]
            if key not in blocks:
                blocks[key] = len(blocks)
            newpart[s] = blocks[key]
        if len(set(newpart.values())) == len(set(part.values())):
            part = newpart
            break
        part = newpart

    block_of = part
    # keep blocks reachable from initial AND co-reachable to a final
    rep_trans = {}
    for (s, a), d in trans.items():
        rep_trans[(block_of[s], a)] = block_of[d]
    final_blocks = {block_of[s] for s in dfa.finals}
    # co-reachability over blocks
    co = set(final_blocks)
    changed = True
    while changed:
        changed = False
        for (b, _a), d in rep_trans.items():
            if d in co and b not in co:
                co.add(b)
                changed = True
    init_block = block_of[dfa.initial]
    # reachable blocks, skipping non-co-reachable ones
    keep = set()
    stack = [init_block]
    while stack:
        b = stack.pop()
        if b in keep:
            continue
        keep.add(b)
        for a in range(1, arity + 1):
            d = rep_trans.get((b, a))
            if d is not None and d in co and d not in keep:
                stack.append(d)
    if dead is not None:
        keep.discard(block_of[dead])

    # canonical naming by BFS order
    names: Dict[int, State] = {}
    bfs = [init_block]
    names[init_block] = "m0"
    qi = 0
    while qi < len(bfs):
        b = bfs[qi]
        qi += 1
        for a in range(1, arity + 1):
            d = rep_trans.get((b, a))
            if d is not None and d in keep and d not in names:
                names[d] = f"m{len(names)}"
                bfs.append(d)
    out_trans = frozenset((names[b], a, names[d]) for (b, a), d in rep_trans.items()
                          if b in names and d in names and d in keep)
    out_finals = frozenset(names[b] for b in final_blocks if b in names)
    return Nfa(arity, frozenset(names.values()), names[init_block], out_trans, out_finals)


def determinize_minimize(nfa: Nfa) -> Nfa:
    return minimize(determinize(nfa))


def complement(nfa: Nfa) -> Nfa:
    """Complement within non-empty words over the same alphabet."""
    dfa = determinize(nfa)
    trans = {(s, a): d for (s, a, d) in dfa.transitions}
    states = set(dfa.states)
    _complete(trans, states, dfa.arity)
    finals = frozenset(s for s in states if s not in dfa.finals)
    return Nfa(dfa.arity, frozenset(states), dfa.initial,
               frozenset((s, a, d) for (s, a), d in trans.items()), finals)


def intersect(a: Nfa, b: Nfa) -> Nfa:
    if a.arity != b.arity:
        raise ValueError("alphabet mismatch")
    amap, bmap = step_map(a), step_map(b)
    start = (a.initial, b.initial)
    names = {start: "p0"}
    order = [start]
    trans = set()
    qi = 0
    while qi < len(order):
        (sa, sb) = order[qi]
        qi += 1
        for sym in range(1, a.arity + 1):
            for da in amap.get((sa, sym), ()):
                for db in bmap.get((sb, sym), ()):
                    nxt = (da, db)
                    if nxt not in names:
                        names[nxt] = f"p{len(names)}"
                        order.append(nxt)
                    trans.add((names[(sa, sb)], sym, names[nxt]))
    finals = frozenset(names[p] for p in order if p[0] in a.finals and p[1] in b.finals)
    return Nfa(a.arity, frozenset(names.values()), "p0", frozenset(trans), finals)

"""Formula AST for the timed logics.

Primitive modalities: Until, Next, Eventually, WeakEventually, Globally,
Once (past), Count, Pnueli, AutoMod.  All nodes are immutable, structurally
comparable, and hash-cached so evaluation tables can key on them cheaply.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from typing import Iterator, List, Tuple

from .automata import Nfa
from .intervals import AT0, FULL, GT0, Interval


class Formula:
    def __eq__(self, other):
        if self is other:
            return True
        if type(self) is not type(other):
            return NotImplemented
        return all(getattr(self, f.name) == getattr(other, f.name)
                   for f in fields(self))  # type: ignore[arg-type]

    def __hash__(self):
        return self._hash  # type: ignore[attr-defined]

    def __post_init__(self):
        self._validate()
        vals = tuple(getattr(self, f.name) for f in fields(self))  # type: ignore[arg-type]
        object.__setattr__(self, "_hash", hash((type(self).__name__, vals)))

    def _validate(self) -> None:
        pass

    def children(self) -> Tuple["Formula", ...]:
        out = []
        for f in fields(self):  # type: ignore[arg-type]
            v = getattr(self, f.name)
            if isinstance(v, Formula):
                out.append(v)
            elif isinstance(v, tuple):
                out.extend(x for x in v if isinstance(x, Formula))
        return tuple(out)


def _node(cls):
    return dataclass(frozen=True, eq=False)(cls)


@_node
class TT(Formula):
    pass


@_node
class Atom(Formula):
    name: str

    def _validate(self):
        if not self.name or not self.name[0].isalpha():
            raise ValueError(f"bad atom name {self.name!r}")


@_node
class Not(Formula):
    arg: Formula


@_node
class And(Formula):
    left: Formula
    right: Formula


@_node
class Or(Formula):
    left: Formula
    right: Formula


@_node
class Until(Formula):
    ivl: Interval
    left: Formula
    right: Formula


@_node
class Next(Formula):
    ivl: Interval
    arg: Formula


@_node
class Eventually(Formula):
    ivl: Interval
    arg: Formula


@_node
class WeakEventually(Formula):
    """arg or Eventually(ivl, arg)."""
    ivl: Interval
    arg: Formula


@_node
class Globally(Formula):
    ivl: Interval
    arg: Formula


@_node
class Once(Formula):
    """Past mirror of Eventually: some j <= i with tau_i - tau_j in ivl."""
    ivl: Interval
    arg: Formula


@_node
class Count(Formula):
    """k strictly-future positions satisfying arg, first and last inside ivl."""
    k: int
    ivl: Interval
    arg: Formula

    def _validate(self):
        if self.k < 1:
            raise ValueError("Count needs k >= 1")


@_node
class Pnueli(Formula):
    """Strictly increasing positions x_1..x_k, args[m] at x_m, ends in ivl."""
    k: int
    ivl: Interval
    args: Tuple[Formula, ...]

    def _validate(self):
        if self.k < 1 or len(self.args) != self.k:
            raise ValueError("Pnueli needs k >= 1 argument formulas")


@_node
class AutoMod(Formula):
    """Automaton modality: an accepting run over positions i..j with
    tau_j - tau_i in ivl; symbol s may be read at a position iff args[s-1]
    holds there."""
    nfa: Nfa
    ivl: Interval
    args: Tuple[Formula, ...]

    def _validate(self):
        if len(self.args) != self.nfa.arity:
            raise ValueError(f"automaton arity {self.nfa.arity} != {len(self.args)} args")


# -- helpers ---------------------------------------------------------------

TRUE = TT()
FALSE = Not(TRUE)


def false_() -> Formula:
    return FALSE


def neg(f: Formula) -> Formula:
    """Negation with double-negation collapse (keeps families small)."""
    return f.arg if isinstance(f, Not) else Not(f)


def conj(*fs: Formula) -> Formula:
    if not fs:
        return TRUE
    out = fs[0]
    for f in fs[1:]:
        out = And(out, f)
    return out


def disj(*fs: Formula) -> Formula:
    if not fs:
        return false_()
    out = fs[0]
    for f in fs[1:]:
        out = Or(out, f)
    return out


def implies(f: Formula, g: Formula) -> Formula:
    return Or(neg(f), g)


def next_positive() -> Formula:
    """X_{>0} true: a next position exists, strictly later in time."""
    return Next(GT0, TRUE)


def ev(ivl: Interval, f: Formula) -> Formula:
    return Eventually(ivl, f)


def always(ivl: Interval, f: Formula) -> Formula:
    return Globally(ivl, f)


def subformulas(f: Formula) -> Iterator[Formula]:
    """Post-order walk (children before parents), each node once."""
    seen = set()

    def walk(g: Formula):
        if g in seen:
            return
        for c in g.children():
            yield from walk(c)
        seen.add(g)
        yield g

    yield from walk(f)


def node_count(f: Formula) -> int:
    return sum(1 for _ in subformulas(f))


def intervals_of(f: Formula) -> Iterator[Tuple[Formula, Interval]]:
    for g in subformulas(f):
        ivl = getattr(g, "ivl", None)
        if ivl is not None:
            yield g, ivl


# -- validation ------------------------------------------------------------

@dataclass(frozen=True)
class ValidationPolicy:
    allow_singular_intervals: bool = False
    allow_past: bool = False


STRICT = ValidationPolicy()
PERMISSIVE = ValidationPolicy(allow_singular_intervals=True, allow_past=True)


def validate_formula(f: Formula, policy: ValidationPolicy = STRICT) -> List[str]:
    """Return human-readable violations; empty list means the formula is
    well-formed under the policy.

    Singular intervals [a,a] with a > 0 are punctual and rejected under the
    strict policy; [0,0] is the unilateral "<= 0" bound and always allowed.
    """
    problems = []
    for g in subformulas(f):
        ivl = getattr(g, "ivl", None)
        if ivl is not None and ivl.is_singular() and ivl.lo > 0 \
                and not policy.allow_singular_intervals:
            problems.append(f"singular interval {ivl} on {type(g).__name__}")
        if isinstance(g, Once) and not policy.allow_past:
            problems.append(f"past modality Once{g.ivl} not allowed")
    return problems

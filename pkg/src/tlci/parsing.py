"""Concrete syntax: formula grammar, canonical printer, automata sidecar.

Grammar sketch::

    expr    := or ('->' expr)?          # sugar for !a | b
    or      := and ('|' and)*
    and     := until ('&' until)*
    until   := unary ('U' ivl? until)?
    unary   := '!' unary | ('X'|'F'|'G'|'O'|'Fw') ivl? unary
             | 'C' '{' k '}' ivl? unary
             | 'Pn' '{' k '}' ivl? '(' expr, ... ')'
             | 'A' '{' name '}' ivl? '(' expr, ... ')'
             | 'true' | 'false' | atom | '(' expr ')'
    ivl     := ('['|'(') num ',' (num|'inf') (']'|')')

Omitted intervals default to [0, inf).  Automaton references resolve
against a sidecar mapping (see ``parse_automata`` / ``render_automata``).
"""

from __future__ import annotations

import re
from typing import Dict, List, Optional, Tuple

from .automata import Nfa, make_nfa
from .formulas import (And, Atom, AutoMod, Count, Eventually, Formula, Globally,
                       Next, Not, Once, Or, Pnueli, TRUE, TT, Until,
                       WeakEventually, neg, implies)
from .intervals import FULL, Interval, parse_interval, _fmt


class ParseError(ValueError):
    pass


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:\.\d+)?(?:/\d+)?)
  | (?P<name>[A-Za-z][A-Za-z0-9_]*)
  | (?P<arrow>->)
  | (?P<punct>[()\[\]{},&|!])
""", re.VERBOSE)

_UNARY = {"X": Next, "F": Eventually, "G": Globally, "O": Once, "Fw": WeakEventually}
_KEYWORDS = {"true", "false", "inf", "U", "C", "Pn", "A"} | set(_UNARY)


def _tokenize(text: str) -> List[Tuple[str, str]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"bad character {text[pos]!r} at offset {pos}")
        pos = m.end()
        kind = m.lastgroup
        if kind != "ws":
            out.append((kind, m.group()))
    out.append(("eof", ""))
    return out


class _Parser:
    def __init__(self, tokens: List[Tuple[str, str]], automata: Dict[str, Nfa]):
        self.toks = tokens
        self.i = 0
        self.automata = automata

    def peek(self) -> Tuple[str, str]:
        return self.toks[self.i]

    def take(self, kind: Optional[str] = None, text: Optional[str] = None) -> str:
        k, t = self.toks[self.i]
        if (kind and k != kind) or (text is not None and t != text):
            raise ParseError(f"expected {text or kind}, got {t!r}")
        self.i += 1
        return t

    def expr(self) -> Formula:
        left = self.or_()
        if self.peek()[0] == "arrow":
            self.take()
            return implies(left, self.expr())
        return left

    def or_(self) -> Formula:
        left = self.and_()
        while self.peek() == ("punct", "|"):
            self.take()
            left = Or(left, self.and_())
        return left

    def and_(self) -> Formula:
        left = self.until()
        while self.peek() == ("punct", "&"):
            self.take()
            left = And(left, self.until())
        return left

    def until(self) -> Formula:
        left = self.unary()
        if self.peek() == ("name", "U"):
            self.take()
            ivl = self.opt_interval()
            return Until(ivl, left, self.until())
        return left

    def opt_interval(self) -> Interval:
        if self.peek()[1] in ("[", "("):
            return self.interval()
        return FULL

    def interval(self) -> Interval:
        left = self.take("punct")
        lo = self.take("num")
        self.take("punct", ",")
        k, t = self.peek()
        if (k, t) == ("name", "inf"):
            self.take()
            hi = "inf"
        else:
            hi = self.take("num")
        right = self.take("punct")
        if left not in "([" or right not in ")]":
            raise ParseError(f"bad interval brackets {left}{right}")
        return parse_interval(f"{left}{lo},{hi}{right}")

    def braced(self) -> str:
        self.take("punct", "{")
        k, t = self.peek()
        if k not in ("num", "name"):
            raise ParseError(f"expected name or number in braces, got {t!r}")
        self.take()
        self.take("punct", "}")
        return t

    def arglist(self) -> List[Formula]:
        self.take("punct", "(")
        args = [self.expr()]
        while self.peek() == ("punct", ","):
            self.take()
            args.append(self.expr())
        self.take("punct", ")")
        return args

    def unary(self) -> Formula:
        k, t = self.peek()
        if (k, t) == ("punct", "!"):
            self.take()
            return Not(self.unary())
        if (k, t) == ("punct", "("):
            self.take()
            f = self.expr()
            self.take("punct", ")")
            return f
        if k == "name":
            if t in _UNARY:
                self.take()
                return _UNARY[t](self.opt_interval(), self.unary())
            if t == "C":
                self.take()
                count = int(self.braced())
                return Count(count, self.opt_interval(), self.unary())
            if t == "Pn":
                self.take()
                count = int(self.braced())
                ivl = self.opt_interval()
                args = self.arglist()
                return Pnueli(count, ivl, tuple(args))
            if t == "A":
                self.take()
                name = self.braced()
                if name not in self.automata:
                    raise ParseError(f"unknown automaton {name!r} (missing sidecar?)")
                ivl = self.opt_interval()
                args = self.arglist()
                return AutoMod(self.automata[name], ivl, tuple(args))
            if t == "true":
                self.take()
                return TRUE
            if t == "false":
                self.take()
                return neg(TRUE)
            self.take()
            return Atom(t)
        raise ParseError(f"unexpected token {t!r}")


def parse_formula(text: str, automata: Optional[Dict[str, Nfa]] = None) -> Formula:
    p = _Parser(_tokenize(text), automata or {})
    try:
        f = p.expr()
    except ParseError:
        raise
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    if p.peek()[0] != "eof":
        raise ParseError(f"trailing input at token {p.peek()[1]!r}")
    return f


# -- printing ----------------------------------------------------------------

def _ivl_text(ivl: Interval) -> str:
    return str(ivl)


def render_formula(f: Formula) -> Tuple[str, Dict[str, Nfa]]:
    """Canonical text plus the automata referenced (named A1, A2, ... in
    first-use order).  Output re-parses to a structurally equal formula."""
    names: Dict[Nfa, str] = {}

    def name_of(nfa: Nfa) -> str:
        if nfa not in names:
            names[nfa] = f"A{len(names) + 1}"
        return names[nfa]

    def go(g: Formula) -> str:
        if isinstance(g, TT):
            return "true"
        if isinstance(g, Atom):
            return g.name
        if isinstance(g, Not):
            return "false" if g.arg == TRUE else f"!{go(g.arg)}"
        if isinstance(g, And):
            return f"({go(g.left)} & {go(g.right)})"
        if isinstance(g, Or):
            return f"({go(g.left)} | {go(g.right)})"
        if isinstance(g, Until):
            return f"({go(g.left)} U{_ivl_text(g.ivl)} {go(g.right)})"
        for key, cls in _UNARY.items():
            if type(g) is cls:
                return f"{key}{_ivl_text(g.ivl)} {go(g.arg)}"
        if isinstance(g, Count):
            return f"C{{{g.k}}}{_ivl_text(g.ivl)} {go(g.arg)}"
        if isinstance(g, Pnueli):
            return f"Pn{{{g.k}}}{_ivl_text(g.ivl)}({', '.join(go(a) for a in g.args)})"
        if isinstance(g, AutoMod):
            return (f"A{{{name_of(g.nfa)}}}{_ivl_text(g.ivl)}"
                    f"({', '.join(go(a) for a in g.args)})")
        raise TypeError(type(g).__name__)

    text = go(f)
    return text, {name: nfa for nfa, name in names.items()}


# -- automata sidecar --------------------------------------------------------

def render_automata(named: Dict[str, Nfa]) -> str:
    blocks = []
    for name, nfa in named.items():
        lines = [f"automaton {name} arity {nfa.arity}",
                 f"initial {nfa.initial}",
                 "finals " + " ".join(sorted(nfa.finals))]
        for (src, sym, dst) in sorted(nfa.transitions):
            lines.append(f"{src} {sym} {dst}")
        # states with no transitions still need declaring
        used = {s for (s, _, _) in nfa.transitions} | {d for (_, _, d) in nfa.transitions}
        isolated = sorted(nfa.states - used - {nfa.initial} - nfa.finals)
        if isolated:
            lines.append("states " + " ".join(isolated))
        lines.append("end")
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + ("\n" if blocks else "")


def parse_automata(text: str) -> Dict[str, Nfa]:
    out: Dict[str, Nfa] = {}
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    i = 0
    while i < len(lines):
        if not lines[i]:
            i += 1
            continue
        head = lines[i].split()
        if len(head) != 4 or head[0] != "automaton" or head[2] != "arity":
            raise ParseError(f"bad automaton header: {lines[i]!r}")
        name, arity = head[1], int(head[3])
        i += 1
        initial = None
        finals: List[str] = []
        extra: List[str] = []
        trans = []
        while i < len(lines) and lines[i] != "end":
            if not lines[i]:
                i += 1
                continue
            parts = lines[i].split()
            if parts[0] == "initial":
                initial = parts[1]
            elif parts[0] == "finals":
                finals = parts[1:]
            elif parts[0] == "states":
                extra = parts[1:]
            elif len(parts) == 3:
                trans.append((parts[0], int(parts[1]), parts[2]))
            else:
                raise ParseError(f"bad automaton line: {lines[i]!r}")
            i += 1
        if i >= len(lines):
            raise ParseError(f"automaton {name}: missing 'end'")
        i += 1
        if initial is None:
            raise ParseError(f"automaton {name}: missing initial state")
        out[name] = make_nfa(arity, initial, trans, finals, extra_states=extra + finals)
    return out

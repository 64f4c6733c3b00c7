"""Finite timed words and seeded word generation.

A timed word is a non-empty sequence of (label set, timestamp) events with
non-decreasing rational timestamps.  Positions are 1-based throughout.

Word files: one event per line, ``<timestamp> <label>``, where the label is
a comma-separated proposition list or ``-`` for the empty label; ``#``
starts a comment.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import FrozenSet, Iterable, List, Sequence, Tuple, Union

from .intervals import Rat, rat

Event = Tuple[FrozenSet[str], Fraction]


@dataclass(frozen=True)
class TimedWord:
    events: Tuple[Event, ...]

    def __post_init__(self) -> None:
        if not self.events:
            raise ValueError("timed words are non-empty")
        prev = None
        for (label, ts) in self.events:
            if not isinstance(ts, Fraction):
                raise TypeError("timestamps must be Fractions")
            if prev is not None and ts < prev:
                raise ValueError("timestamps must be non-decreasing")
            prev = ts

    def __len__(self) -> int:
        return len(self.events)

    def label(self, i: int) -> FrozenSet[str]:
        return self.events[i - 1][0]

    def ts(self, i: int) -> Fraction:
        return self.events[i - 1][1]

    @property
    def timestamps(self) -> Tuple[Fraction, ...]:
        return tuple(ts for (_lbl, ts) in self.events)


def word(*pairs: Tuple[Union[str, Iterable[str]], Rat]) -> TimedWord:
    """Build a word from (label, timestamp) pairs; a string label is split
    on whitespace."""
    events = []
    for lbl, ts in pairs:
        names = lbl.split() if isinstance(lbl, str) else lbl
        events.append((frozenset(names), rat(ts)))
    return TimedWord(tuple(events))


def parse_word(text: str) -> TimedWord:
    events = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split(None, 1)
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected '<timestamp> <label>'")
        ts = rat(parts[0])
        label_text = parts[1].strip()
        label = frozenset() if label_text == "-" else \
            frozenset(p.strip() for p in label_text.split(",") if p.strip())
        events.append((label, ts))
    if not events:
        raise ValueError("empty word file")
    return TimedWord(tuple(events))


def render_word(w: TimedWord) -> str:
    lines = []
    for (label, ts) in w.events:
        text = ",".join(sorted(label)) if label else "-"
        num = str(ts.numerator) if ts.denominator == 1 else f"{ts.numerator}/{ts.denominator}"
        lines.append(f"{num} {text}")
    return "\n".join(lines) + "\n"


def insert_empty_event(w: TimedWord, ts: Rat) -> TimedWord:
    """Insert an empty-label event at ``ts`` (after any events already
    carrying that timestamp).  No-op if an event at ``ts`` already exists."""
    t = rat(ts)
    if any(e[1] == t for e in w.events):
        return w
    events = list(w.events)
    at = len([e for e in events if e[1] <= t])
    events.insert(at, (frozenset(), t))
    return TimedWord(tuple(events))


# -- generation --------------------------------------------------------------

@dataclass(frozen=True)
class GenConfig:
    """Random-word shape: ``event_count`` labelled events drawn on a 1/10
    grid inside [0, active_window], then empty padding events at unit
    spacing out to ``pad_to``."""

    event_count: int = 12
    active_window: Fraction = Fraction(4)
    pad_to: Fraction = Fraction(10)
    props: Tuple[str, ...] = ("P",)
    density: Fraction = Fraction(1, 2)
    allow_simultaneous: bool = False
    grid: int = 10

    def __post_init__(self) -> None:
        object.__setattr__(self, "active_window", rat(self.active_window))
        object.__setattr__(self, "pad_to", rat(self.pad_to))
        object.__setattr__(self, "density", rat(self.density))
        if self.pad_to < self.active_window:
            raise ValueError("pad_to must be >= active_window")
        if not (0 <= self.density <= 1):
            raise ValueError("density must be in [0,1]")


def generate_word(cfg: GenConfig, seed: int) -> TimedWord:
    """Deterministic in (cfg, seed)."""
    rng = random.Random(seed)
    slots = int(cfg.active_window * cfg.grid)
    ticks: List[int] = []
    if cfg.event_count:
        if cfg.allow_simultaneous:
            ticks = sorted(rng.randrange(0, slots + 1) for _ in range(cfg.event_count))
        else:
            if cfg.event_count > slots + 1:
                raise ValueError("grid too small for distinct timestamps")
            ticks = sorted(rng.sample(range(slots + 1), cfg.event_count))
    den = cfg.density
    events: List[Event] = []
    for tick in ticks:
        label = frozenset(p for p in cfg.props
                          if Fraction(rng.randrange(10 ** 6), 10 ** 6) < den)
        events.append((label, Fraction(tick, cfg.grid)))
    t = cfg.active_window + 1
    while t <= cfg.pad_to:
        events.append((frozenset(), t))
        t += 1
    if not events:
        events.append((frozenset(), cfg.pad_to))
    return TimedWord(tuple(events))

from fractions import Fraction

import pytest

from tlci.words import (GenConfig, TimedWord, generate_word,
                        insert_empty_event, parse_word, render_word, word)


def test_word_validation():
    with pytest.raises(ValueError):
        TimedWord(())
    with pytest.raises(ValueError):
        word(("P", 1), ("Q", Fraction(1, 2)))  # decreasing timestamps
    w = word(("P", 0), ("", Fraction(1, 2)), ("P Q", Fraction(1, 2)))
    assert w.label(3) == frozenset({"P", "Q"})
    assert w.ts(2) == Fraction(1, 2)


def test_parse_render_round_trip():
    text = "0 -\n1/2 P\n1/2 P Q\n3 Q\n"
    w = parse_word(text)
    assert render_word(w) == text
    assert parse_word(render_word(w)) == w


def test_parse_decimal_and_comments():
    w = parse_word("# header\n0.5 P\n\n1.25 -\n")
    assert w.ts(1) == Fraction(1, 2) and w.ts(2) == Fraction(5, 4)


def test_insert_empty_event():
    w = word(("P", 0), ("Q", 2))
    w2 = insert_empty_event(w, Fraction(1))
    assert len(w2) == 3 and w2.label(2) == frozenset() and w2.ts(2) == 1
    # no-op when the timestamp already exists
    assert insert_empty_event(w2, Fraction(1)) == w2


def test_generation_deterministic():
    cfg = GenConfig(props=("P", "Q"))
    assert generate_word(cfg, 42) == generate_word(cfg, 42)
    assert generate_word(cfg, 42) != generate_word(cfg, 43)


def test_generation_shape():
    cfg = GenConfig(event_count=12, active_window=4, pad_to=10)
    for seed in range(30):
        w = generate_word(cfg, seed)
        ts = w.timestamps
        assert all(a <= b for a, b in zip(ts, ts[1:]))
        assert ts[-1] - ts[0] <= 10
        # padding reaches past the active window
        assert ts[-1] - ts[0] >= 4


def test_generation_density():
    cfg = GenConfig(props=("P",))
    total = hits = 0
    for seed in range(250):
        w = generate_word(cfg, seed)
        active = [i for i in range(1, len(w) + 1)
                  if w.ts(i) - w.ts(1) <= cfg.active_window]
        total += len(active)
        hits += sum(1 for i in active if "P" in w.label(i))
    assert 0.45 <= hits / total <= 0.55


def test_no_simultaneous_by_default():
    cfg = GenConfig()
    for seed in range(30):
        ts = generate_word(cfg, seed).timestamps
        assert len(set(ts)) == len(ts)


def test_simultaneous_allowed_when_requested():
    cfg = GenConfig(allow_simultaneous=True, event_count=30, active_window=2)
    assert any(len(set(generate_word(cfg, s).timestamps))
               < len(generate_word(cfg, s).timestamps) for s in range(50))

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tlci.intervals import (AT0, FULL, GT0, Interval, at_least, closed,
                            closed_open, open_, open_closed, parse_interval,
                            rat, up_to)


def test_contains_all_closures():
    assert closed(1, 2).contains(rat(1))
    assert closed(1, 2).contains(rat(2))
    assert not open_(1, 2).contains(rat(1))
    assert not open_(1, 2).contains(rat(2))
    assert open_(1, 2).contains(Fraction(3, 2))
    assert closed_open(1, 2).contains(rat(1))
    assert not closed_open(1, 2).contains(rat(2))
    assert open_closed(1, 2).contains(rat(2))
    assert not open_closed(1, 2).contains(rat(1))


def test_unbounded():
    assert at_least(3).contains(rat(100))
    assert not at_least(3).contains(Fraction(29, 10))
    assert FULL.contains(rat(0))
    assert not GT0.contains(rat(0))
    assert AT0.contains(rat(0)) and not AT0.contains(Fraction(1, 10))


def test_empty_intervals_rejected():
    with pytest.raises(ValueError):
        Interval(rat(2), rat(1), True, True)
    with pytest.raises(ValueError):
        open_(1, 1)
    with pytest.raises(ValueError):
        closed_open(1, 1)
    # [1,1] is non-empty (singular) and constructible
    assert closed(1, 1).is_singular()


def test_negative_and_float_rejected():
    with pytest.raises(ValueError):
        closed(-1, 2)
    with pytest.raises(TypeError):
        Interval(0.5, rat(1), True, True)  # type: ignore[arg-type]


def test_singular_and_unilateral():
    assert closed(2, 2).is_singular()
    assert not closed(0, 0).is_singular()  # degenerate at zero: allowed
    assert up_to(rat(3), True).is_unilateral()
    assert at_least(2).is_unilateral()
    assert FULL.is_unilateral()
    assert not open_(1, 2).is_unilateral()


def test_width_and_shift():
    assert open_(1, 2).width() == 1
    assert at_least(1).width() is None
    s = open_(1, 2).shift(-1)
    assert s == open_(0, 1)
    with pytest.raises(ValueError):
        open_(0, 1).shift(-1)


def test_parse_and_render_round_trip_fixed():
    for text in ["[0,1)", "(1,2)", "[1/2,3/2]", "(0,inf)", "[2,inf)", "[0,0]"]:
        assert str(parse_interval(text)) == text


_bounds = st.fractions(min_value=0, max_value=10)


@given(_bounds, _bounds, st.booleans(), st.booleans(), st.booleans())
def test_parse_render_round_trip(lo, hi, lc, hc, unbounded):
    if unbounded:
        ivl = Interval(lo, None, lc, False)
    else:
        if lo > hi:
            lo, hi = hi, lo
        if lo == hi and not (lc and hc):
            return
        ivl = Interval(lo, hi, lc, hc)
    assert parse_interval(str(ivl)) == ivl


@given(_bounds, _bounds, _bounds)
def test_contains_respects_order(lo, hi, x):
    if lo >= hi:
        return
    assert open_(lo, hi).contains(x) == (lo < x < hi)
    assert closed(lo, hi).contains(x) == (lo <= x <= hi)

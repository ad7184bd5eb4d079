import math
import random
from fractions import Fraction

import pytest

from polyapprox.intervals import RationalInterval
from polyapprox.logs import ln_factorial_interval, ln_interval, ln_interval_of


def test_known_values():
    one = ln_interval(1)
    assert one.lo <= 0 <= one.hi
    two = ln_interval(2, bits=80)
    assert float(two) == pytest.approx(math.log(2), abs=1e-18)
    assert two.width <= Fraction(1, 2**70)


def test_containment_random_rationals():
    rng = random.Random(3111)
    for _ in range(80):
        x = Fraction(rng.randint(1, 10**6), rng.randint(1, 10**6))
        iv = ln_interval(x, bits=64)
        assert iv.lo <= Fraction(math.log(x)) + Fraction(1, 10**12)
        assert iv.hi >= Fraction(math.log(x)) - Fraction(1, 10**12)
        assert iv.width <= Fraction(1, 2**60)


def test_additivity():
    rng = random.Random(7)
    for _ in range(40):
        a = Fraction(rng.randint(1, 999), rng.randint(1, 999))
        b = Fraction(rng.randint(1, 999), rng.randint(1, 999))
        lhs = ln_interval(a * b, bits=64)
        rhs = ln_interval(a, bits=64) + ln_interval(b, bits=64)
        assert lhs.intersects(rhs)


def test_monotone_in_argument():
    xs = [Fraction(1, 10), Fraction(1, 2), Fraction(3, 2), Fraction(17)]
    ivs = [ln_interval(x, bits=64) for x in xs]
    for small, large in zip(ivs, ivs[1:]):
        assert small.strictly_below(large)


def test_width_shrinks_with_bits():
    wide = ln_interval(Fraction(7, 3), bits=24)
    narrow = ln_interval(Fraction(7, 3), bits=96)
    assert narrow.width < wide.width
    assert narrow.lo >= wide.lo and narrow.hi <= wide.hi


def test_interval_argument():
    x = RationalInterval(Fraction(2), Fraction(3))
    iv = ln_interval_of(x, bits=64)
    eps = Fraction(1, 10**12)
    assert iv.lo <= Fraction(math.log(2)) + eps
    assert iv.hi >= Fraction(math.log(3)) - eps
    assert iv.width <= Fraction(math.log(3) - math.log(2)) + eps


def test_interval_argument_requires_positive():
    with pytest.raises((ValueError, ZeroDivisionError)):
        ln_interval(0)
    with pytest.raises((ValueError, ZeroDivisionError)):
        ln_interval_of(RationalInterval(Fraction(-1), Fraction(2)))


def test_ln_factorial():
    five = ln_factorial_interval(5, bits=64)
    assert float(five) == pytest.approx(math.log(120), abs=1e-12)
    direct = ln_interval(120, bits=64)
    assert five.intersects(direct)
    zero = ln_factorial_interval(0, bits=64)
    assert zero.lo <= 0 <= zero.hi

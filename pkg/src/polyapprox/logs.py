"""Certified natural logarithms over exact rationals.

ln is computed by range reduction x = m * 2**e with m in [1, 2), a dyadic
rounding of m, and the atanh series ln(m) = 2*atanh((m-1)/(m+1)) with an
explicit geometric tail bound. Everything stays in Fraction arithmetic, so
the returned interval is a true enclosure.
"""
from __future__ import annotations

import math
from fractions import Fraction

from .intervals import RationalInterval

_LN2_CACHE: dict[int, RationalInterval] = {}


def _atanh_series(z: Fraction, tail_bits: int) -> RationalInterval:
    """Enclosure of 2*atanh(z) for 0 <= z <= 1/3 with tail below 2**-tail_bits."""
    if z == 0:
        return RationalInterval.point(0)
    if not (0 < z <= Fraction(1, 3)):
        raise ValueError("series argument out of range")
    z2 = z * z
    term = z
    total = Fraction(0)
    j = 0
    bound = Fraction(1, 2**tail_bits)
    while True:
        total += term / (2 * j + 1)
        # Remaining sum < z^(2j+3)/(2j+3) * 1/(1 - z^2) <= next_term * 9/8 / (2j+3)
        term *= z2
        tail = 2 * term * Fraction(9, 8) / (2 * j + 3)
        if tail <= bound:
            return RationalInterval(2 * total, 2 * total + tail)
        j += 1


def _ln2_interval(bits: int) -> RationalInterval:
    bucket = ((bits + 63) // 64) * 64
    cached = _LN2_CACHE.get(bucket)
    if cached is None:
        cached = _atanh_series(Fraction(1, 3), bucket + 2)
        _LN2_CACHE[bucket] = cached
    return cached


def ln_interval(x, bits: int = 64) -> RationalInterval:
    """Interval containing ln(x) with width <= 2**-bits, x a positive rational."""
    x = Fraction(x)
    if x <= 0:
        raise ValueError("ln requires a positive argument")
    # x = m * 2**e with m in [1, 2)
    e = x.numerator.bit_length() - x.denominator.bit_length()
    m = x / Fraction(2) ** e
    if m < 1:
        m *= 2
        e -= 1
    assert 1 <= m < 2
    p = bits + 8
    md_num = (m.numerator << p) // m.denominator
    md = Fraction(md_num, 1 << p)
    # m in [md, md + 2**-p], md >= 1, so ln(m) - ln(md) in [0, 2**-p]
    rounding = RationalInterval(Fraction(0), Fraction(1, 1 << p))
    z = (md - 1) / (md + 1)
    series = _atanh_series(z, bits + 4) if z else RationalInterval.point(0)
    ln2 = _ln2_interval(bits + 8 + abs(e).bit_length())
    result = ln2 * e + series + rounding
    if result.width > Fraction(1, 1 << bits):
        # The individual bounds guarantee this never triggers; guard anyway.
        return ln_interval(x, bits + 16)
    return result


def ln_interval_of(iv: RationalInterval, bits: int = 64) -> RationalInterval:
    """Enclosure of {ln t : t in iv}; requires iv strictly positive."""
    if not iv.strictly_positive():
        raise ValueError("ln enclosure requires a strictly positive interval")
    lo = ln_interval(iv.lo, bits).lo
    hi = ln_interval(iv.hi, bits).hi
    return RationalInterval(lo, hi)


def ln_factorial_interval(n: int, bits: int = 64) -> RationalInterval:
    return ln_interval(math.factorial(n), bits)

import random
from fractions import Fraction

import pytest

from polyapprox.intervals import RationalInterval
from polyapprox.polynomials import (
    IntegerPolynomial,
    PolyFamily,
    coprime_shift_rank,
    gelfond_scan,
    poly_gcd,
    rank_of_family,
    shift_family,
)

P = IntegerPolynomial


def test_basic_attributes():
    p = P((-49, 64))
    assert p.degree == 1
    assert p.height == 64
    assert str(p) == "64T - 49"
    assert p.coeff_vector(4) == [-49, 64, 0, 0]
    assert not p.is_zero()
    assert P(()).is_zero() and P((0, 0)).is_zero()


def test_canonical_sign():
    p = P((1, -2))
    assert p.canonical().coeffs == (-1, 2)
    assert p.canonical().height == p.height
    assert P((0, 3)).canonical().coeffs == (0, 3)


def test_shift_multiplies_by_powers():
    p = P((1, 1))
    assert p.shift(2).coeffs == (0, 0, 1, 1)
    assert p.shift(0) == p
    # heights are shift invariant
    for j in range(5):
        assert p.shift(j).height == p.height


def test_eval_abs_interval_encloses_exact_value():
    rng = random.Random(99)
    for _ in range(100):
        coeffs = tuple(rng.randint(-9, 9) for _ in range(4))
        p = P(coeffs)
        if p.is_zero():
            continue
        x = Fraction(rng.randint(-30, 30), rng.randint(1, 30))
        box = RationalInterval(x - Fraction(1, 1000), x + Fraction(1, 1000))
        assert abs(p.eval_fraction(x)) in p.eval_abs_interval(box)


def test_poly_gcd_examples():
    g = poly_gcd(P((-1, 0, 1)), P((1, 2, 1)))
    assert g.coeffs == (1, 1)
    assert poly_gcd(P((-2, 0, 1)), P((-3, 0, 1))).degree == 0
    # gcd of P with 0 is P made primitive and canonical
    assert poly_gcd(P((0, -4, -8)), P(())).coeffs == (0, 1, 2)


def test_rank_examples():
    fam = PolyFamily((P((1,)), P((0, 1)), P((0, 0, 1))), 2)
    assert rank_of_family(fam) == 3
    p = P((3, -1, 2))
    assert rank_of_family(PolyFamily((p, p * P((2,))), 4)) == 1


def test_rank_with_planted_deficiency():
    rng = random.Random(5150)
    for _ in range(20):
        base = [
            P(tuple(rng.randint(-5, 5) for _ in range(6))) for _ in range(4)
        ]
        if rank_of_family(PolyFamily(tuple(base), 5)) != 4:
            continue
        mixed = []
        for _ in range(2):
            a, b = rng.randint(-3, 3), rng.randint(-3, 3)
            mixed.append(base[0] * P((a,)) + base[1] * P((b,)))
        fam = PolyFamily(tuple(base + mixed), 5)
        assert rank_of_family(fam) == 4


def test_rank_invariances():
    rng = random.Random(77)
    polys = [P(tuple(rng.randint(-4, 4) for _ in range(5))) for _ in range(4)]
    fam = PolyFamily(tuple(polys), 4)
    base = rank_of_family(fam)
    scaled = PolyFamily(tuple(p * P((3,)) for p in polys), 4)
    assert rank_of_family(scaled) == base
    shuffled = list(polys)
    rng.shuffle(shuffled)
    assert rank_of_family(PolyFamily(tuple(shuffled), 4)) == base


def test_shift_family_contents():
    fam = shift_family(P((1, 1)), 3)
    assert [q.coeffs for q in fam.polys] == [
        (1, 1), (0, 1, 1), (0, 0, 1, 1)
    ]
    with pytest.raises(ValueError):
        shift_family(P(()), 3)
    with pytest.raises(ValueError):
        shift_family(P((0, 0, 0, 0, 1)), 3)


def test_coprime_shift_rank_examples():
    assert coprime_shift_rank(P((-2, 0, 1)), P((-3, 0, 1)))["full"]
    shared = coprime_shift_rank(P((0, -1, 1)), P((-1, 0, 1)))
    assert not shared["full"]
    assert shared["rank"] == 3  # a+b-deg gcd = 2+2-1
    small = coprime_shift_rank(P((1, 1)), P((-1, 1)))
    assert small["full"] and small["rank"] == 2


def test_coprime_shift_rank_matches_gcd_oracle():
    rng = random.Random(1234)
    for _ in range(60):
        p = P(tuple(rng.randint(-4, 4) for _ in range(rng.randint(2, 4))))
        q = P(tuple(rng.randint(-4, 4) for _ in range(rng.randint(2, 4))))
        if p.degree < 1 or q.degree < 1:
            continue
        res = coprime_shift_rank(p, q)
        expected = p.degree + q.degree - poly_gcd(p, q).degree
        assert res["rank"] == expected


def test_gelfond_hand_pairs():
    p = P((1, 1))
    assert Fraction((p * p).height, p.height * p.height) == 2
    q = P((-1, 1))
    assert Fraction((q * q).height, q.height * q.height) == 2


def test_gelfond_exhaustive_tiny():
    scan = gelfond_scan(1, 1, sample_count=None)
    assert scan.min_ratio == 1
    assert scan.max_ratio == 2
    assert scan.count > 0


def test_gelfond_envelope_no_drift():
    small = gelfond_scan(2, 5, sample_count=2000, rng_seed=0)
    large = gelfond_scan(2, 12, sample_count=2000, rng_seed=0)
    for scan in (small, large):
        assert Fraction(1, 16) <= scan.min_ratio <= scan.max_ratio <= 16
        lo_p, lo_q = scan.min_witness
        ratio = Fraction((lo_p * lo_q).height, lo_p.height * lo_q.height)
        assert ratio == scan.min_ratio

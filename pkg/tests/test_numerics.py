from fractions import Fraction
import math

import pytest
from hypothesis import given, settings, strategies as st

from normality_lab.numerics import BoundedReal, const_pi, exp_real, lcm_int, mod_pow
from oracles import machin_pi, taylor_exp


@pytest.mark.parametrize("args, expected", [((2, 10, 1000), 24), ((7, 0, 13), 1), ((5, 1, 1), 0)])
def test_mod_pow_examples(args, expected):
    assert mod_pow(*args) == expected


def test_mod_pow_exhaustive_against_repeated_multiplication():
    for a in range(13):
        for e in range(13):
            direct = 1
            for _ in range(e):
                direct *= a
            for m in range(1, 51):
                assert mod_pow(a, e, m) == direct % m


def test_mod_pow_large_exponent():
    assert mod_pow(3, 10**18, 10**9 + 7) == pow(3, 10**18, 10**9 + 7)


def test_mod_pow_rejects_bad_modulus():
    with pytest.raises(ValueError):
        mod_pow(2, 3, 0)


def test_lcm_examples():
    assert lcm_int([1, 2, 3, 4]) == 12
    assert lcm_int([6, -4]) == 12
    acc = 1
    for k in range(1, 21):
        acc = acc * k // math.gcd(acc, k)
    assert lcm_int(range(1, 21)) == acc == 232792560


def test_lcm_errors():
    with pytest.raises(ValueError, match="empty lcm"):
        lcm_int([])
    with pytest.raises(ValueError):
        lcm_int([3, 0])


def test_const_pi_contains_machin_value():
    pi20 = const_pi(20)
    assert pi20.contains(Fraction(314159265, 10**8)) or abs(pi20.mid - Fraction(314159265, 10**8)) < Fraction(1, 10**6)
    assert pi20.rad <= Fraction(1, 2**20)
    ref = machin_pi(200)
    for bits in (20, 64, 150):
        enc = const_pi(bits)
        assert enc.rad <= Fraction(1, 2**bits)
        assert abs(enc.mid - ref) <= enc.rad + Fraction(1, 2**190)


def test_const_pi_nested():
    a, b = const_pi(20), const_pi(40)
    assert a.lo <= b.lo and b.hi <= a.hi


def test_const_pi_precision_floor():
    with pytest.raises(ValueError):
        const_pi(4)


def test_exp_zero_is_one():
    e = exp_real(0, 30)
    assert e.contains(1) and e.rad <= Fraction(1, 2**30)


@pytest.mark.parametrize("x, text", [(1, "2.718281"), (-1, "0.367879")])
def test_exp_against_taylor(x, text):
    enc = exp_real(x, 20)
    s, err = taylor_exp(Fraction(x))
    assert enc.rad <= Fraction(1, 2**20)
    assert abs(enc.mid - s) <= enc.rad + err
    assert f"{float(enc.mid):.7f}".startswith(text)


def test_exp_of_enclosure_argument():
    x = BoundedReal(Fraction(1, 2), Fraction(1, 10**6))
    enc = exp_real(x, 40)
    for v in (x.lo, x.mid, x.hi):
        s, err = taylor_exp(v)
        assert enc.lo - err <= s <= enc.hi + err


fracs = st.fractions(min_value=-100, max_value=100, max_denominator=1000)
radii = st.fractions(min_value=0, max_value=10, max_denominator=1000)
weights = st.fractions(min_value=0, max_value=1, max_denominator=50)


@settings(max_examples=200, deadline=None)
@given(fracs, radii, fracs, radii, weights, weights)
def test_enclosure_arithmetic_contains_images(m1, r1, m2, r2, w1, w2):
    A, B = BoundedReal(m1, r1), BoundedReal(m2, r2)
    a = A.lo + (A.hi - A.lo) * w1
    b = B.lo + (B.hi - B.lo) * w2
    assert (A + B).contains(a + b)
    assert (A - B).contains(a - b)
    assert (A * B).contains(a * b)
    if B.lo > 0 or B.hi < 0:
        assert (A / B).contains(a / b)


@settings(max_examples=100, deadline=None)
@given(fracs, radii, st.integers(min_value=1, max_value=80))
def test_round_outward_keeps_containment(m, r, bits):
    A = BoundedReal(m, r)
    R = A.round_outward(bits)
    assert R.lo <= A.lo and A.hi <= R.hi
    assert (2 ** (bits + 1)) % R.mid.denominator == 0


def test_division_by_zero_reported():
    with pytest.raises(ZeroDivisionError):
        BoundedReal.exact(1) / BoundedReal(Fraction(0), Fraction(1))


def test_rationals_stay_reduced():
    x = BoundedReal(Fraction(6, 4), Fraction(2, 8))
    assert x.mid == Fraction(3, 2) and x.mid.denominator == 2

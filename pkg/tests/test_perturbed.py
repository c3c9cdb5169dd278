from fractions import Fraction
import math

import pytest
from hypothesis import given, settings, strategies as st

from normality_lab.bbp import PRESETS, SpecError, make_spec, validate_spec
from normality_lab.perturbed import (
    dichotomy_probe,
    expansion_defect,
    perturbed_orbit,
    tail,
    verify_correlation,
)
from normality_lab.radix import b_orbit, toroidal_distance
from normality_lab.stats import cluster_limit_points

LOG2 = PRESETS["log2-base2"]


def reference_orbit(base, p, q, start, y0, steps):
    """Straight re-implementation of y_{n+1} = b y_n + eps_{n+1} (mod 1)."""

    def eps(m):
        # start 1: eps_m = R(m); start 0: theta = sum_{n>=0} R(n) b^-n = sum_{m>=1} b R(m-1) b^-m
        k = m if start == 1 else m - 1
        num = sum(c * k**i for i, c in enumerate(p))
        den = sum(c * k**i for i, c in enumerate(q))
        w = Fraction(num, den)
        return w if start == 1 else base * w

    ys, ds, y = [], [], Fraction(y0)
    for m in range(1, steps + 1):
        v = base * y + eps(m)
        d = math.floor(v)
        y = v - d
        ys.append(y)
        ds.append(d)
    return ys, ds


def test_hand_iteration_example():
    o = perturbed_orbit(LOG2, 0, 3)
    assert list(o.remainders) == [0, Fraction(1, 2), Fraction(1, 3)]


def test_zero_perturbation_reduces_to_radix():
    spec = make_spec(3, [], [1, 1], start=0)
    y0 = Fraction(5, 17)
    o = perturbed_orbit(spec, y0, 60)
    r = b_orbit(y0, 3, 60)
    assert o.remainders == r.remainders and o.digits == r.digits


def test_identity_log2_100_steps():
    o = perturbed_orbit(LOG2, 0, 100)
    for n in range(1, 100):
        assert expansion_defect(o, n) == 0


def test_identity_direct_formula():
    # sum_{j<=n} d_j b^-j = sum eps_j b^-j + y0 - b^-n y_n
    spec = PRESETS["log2-base9"]
    y0 = Fraction(2, 7)
    o = perturbed_orbit(spec, y0, 50)
    for n in range(1, 51):
        lhs = sum(Fraction(o.digit(j), 9**j) for j in range(1, n + 1))
        rhs = sum(o.perturbations[j - 1] / 9**j for j in range(1, n + 1)) + y0 - o.remainder(n) / 9**n
        assert lhs == rhs


polys = st.lists(st.integers(-9, 9), min_size=1, max_size=4)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 10), polys, polys, st.sampled_from([0, 1]), st.integers(1, 300), st.fractions(0, 1, max_denominator=50))
def test_random_specs_identity_and_reference(base, p, q, start, steps, y0):
    if y0 >= 1:
        y0 = Fraction(0)
    try:
        spec = validate_spec(make_spec(base, p, q, start))
    except SpecError:
        return
    o = perturbed_orbit(spec, y0, steps)
    ys, ds = reference_orbit(base, spec.r.p, spec.r.q, start, y0, steps)
    assert list(o.remainders) == ys and list(o.digits) == ds
    for n in range(1, steps):
        assert expansion_defect(o, n) == 0
    for n in range(steps):
        if all(abs(e) < 1 for e in o.perturbations[n:]):
            assert -1 <= o.digits[n] <= base


def test_tail_zero():
    t = tail(make_spec(2, [], [1]), 5, 64)
    assert t.enclosure.mid == 0 and t.enclosure.rad == 0


def test_tail_at_zero_is_theta():
    import mpmath

    t = tail(LOG2, 0, 80).enclosure
    with mpmath.workprec(200):
        ref = Fraction(int(mpmath.nint(mpmath.log(2) * 2**150)), 2**150)
    assert abs(t.mid - ref) <= t.rad + Fraction(1, 2**140)


def test_tail_against_direct_sum():
    for n in (1, 5, 30):
        t = tail(LOG2, n, 90).enclosure
        direct = sum(Fraction(1, (n + j) * 2**j) for j in range(1, 200))
        assert abs(t.mid - direct) <= t.rad + Fraction(1, 2**180)


def test_tail_monotone_bound():
    bounds = []
    for n in range(51):
        e = tail(LOG2, n, 64).enclosure
        bounds.append(abs(e.mid) + e.rad)
    assert all(a > b for a, b in zip(bounds, bounds[1:]))


def test_tail_requires_vanishing():
    with pytest.raises(ValueError, match="does not vanish"):
        tail(make_spec(2, [0, 1], [1], start=0), 3, 32)


def test_correlation_log2_200():
    rep = verify_correlation(LOG2, 200, 64)
    assert rep.verdict and rep.max_toroidal_defect.contains(0)
    assert len(rep.tail_magnitudes) == 200


def test_correlation_zero_perturbation():
    rep = verify_correlation(make_spec(2, [], [1]), 50, 64)
    assert rep.verdict and all(t == 0 for t in rep.tail_magnitudes)


def test_correlation_base9():
    assert verify_correlation(PRESETS["log2-base9"], 100, 64).verdict


def test_correlation_random_polynomial():
    spec = validate_spec(make_spec(5, [3, -1], [2, 7, 3], start=0))
    assert verify_correlation(spec, 120, 64).verdict


def test_correlation_cap():
    with pytest.raises(ValueError, match="insufficient precision for requested steps"):
        verify_correlation(LOG2, 6000, 64)


def test_digit_agreement_reported():
    rep = verify_correlation(LOG2, 300, 64)
    assert rep.digit_agreement_rate is not None and 0 <= rep.digit_agreement_rate <= 1


def test_dichotomy_rational_one():
    res = dichotomy_probe(PRESETS["one-base2"], 2000)
    assert res.classification == "finite-limit-points"
    assert len(res.clusters) == 1
    c = res.clusters[0]
    assert c.near(0, Fraction(1, 64))
    assert res.diameters_shrinking


def test_dichotomy_log2_dense():
    res = dichotomy_probe(LOG2, 10_000)
    assert res.classification == "apparently-dense"
    assert "empirical" in res.note


def test_dichotomy_zero_perturbation():
    res = dichotomy_probe(make_spec(2, [], [1]), 64)
    assert res.classification == "finite-limit-points"
    assert len(res.clusters) == 1 and res.clusters[0].center == 0


def test_dichotomy_too_few_steps():
    with pytest.raises(ValueError, match="too few steps"):
        dichotomy_probe(LOG2, 10)


def test_limit_points_agree_with_x_n():
    # for theta = 1 the b-expansion remainders x_n are all 0; the late y_n* cluster there too
    spec = PRESETS["one-base2"]
    o = perturbed_orbit(spec, 0, 1000)
    ys = cluster_limit_points(o.remainders[500:], Fraction(1, 64))
    xs = cluster_limit_points([Fraction(0)] * 500, Fraction(1, 64))
    assert len(ys) == len(xs) == 1
    assert toroidal_distance(ys[0].center, xs[0].center) <= Fraction(1, 64)

"""Perturbed b-transformation y_{n+1} = b*y_n + eps_{n+1} (mod 1) driven by
the terms of a BBP spec, and the comparison of its remainders with the
ordinary b-expansion of theta.

The driving sequence eps_m (m >= 1) satisfies theta = sum_{m>=1} eps_m b^-m.
For a spec starting at n = 1 this is eps_m = R(m); a spec starting at n = 0
is shifted, eps_m = b * R(m - 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .bbp import BbpSpec, _fixed_point_sum, eval_theta, validate_spec
from .numerics import BoundedReal, GUARD_BITS, _refine, as_rational
from .radix import digits_of_real
from .stats import cluster_limit_points

DEFAULT_STEP_CAP = 5000


def perturbation(spec: BbpSpec, m: int) -> Fraction:
    """eps_m for m >= 1."""
    if m < 1:
        raise ValueError("perturbation index starts at 1")
    if spec.start == 1:
        return spec.r(m)
    return spec.base * spec.r(m - 1)


@dataclass(frozen=True)
class PerturbedOrbit:
    base: int
    y0: Fraction
    remainders: tuple  # y_1 .. y_steps
    digits: tuple  # d_1 .. d_steps
    perturbations: tuple  # eps_1 .. eps_steps

    def remainder(self, n: int) -> Fraction:
        return self.y0 if n == 0 else self.remainders[n - 1]

    def digit(self, n: int) -> int:
        return self.digits[n - 1]


def perturbed_orbit(spec: BbpSpec, y0, steps: int) -> PerturbedOrbit:
    """Exact orbit of the perturbed map; y0 = 0 gives the canonical remainders y_n*."""
    validate_spec(spec)
    y = as_rational(y0)
    if not 0 <= y < 1:
        raise ValueError("initial point must lie in [0, 1)")
    if steps < 0:
        raise ValueError("steps must be >= 0")
    b = spec.base
    rems, digs, eps = [], [], []
    for m in range(1, steps + 1):
        e = perturbation(spec, m)
        v = b * y + e
        d = math.floor(v)
        y = v - d
        rems.append(y)
        digs.append(d)
        eps.append(e)
    return PerturbedOrbit(b, as_rational(y0), tuple(rems), tuple(digs), tuple(eps))


def expansion_defect(orbit: PerturbedOrbit, n: int) -> Fraction:
    """sum_{j<=n} d_j b^-j - sum_{j<=n} eps_j b^-j - y0 + b^-n y_n; identically zero.

    This is the n-step telescoped form of y_j = b*y_{j-1} + eps_j - d_j.
    """
    b = Fraction(orbit.base)
    s = Fraction(0)
    for j in range(1, n + 1):
        s += (orbit.digits[j - 1] - orbit.perturbations[j - 1]) / b**j
    return s - orbit.y0 + orbit.remainder(n) / b**n


@dataclass(frozen=True)
class TailBound:
    index: int
    enclosure: BoundedReal


def tail(spec: BbpSpec, n: int, precision_bits: int) -> TailBound:
    """Enclosure of t_n = sum_{j>=1} eps_{n+j} b^-j."""
    validate_spec(spec)
    if n < 0:
        raise ValueError("n must be >= 0")
    if not spec.vanishing:
        raise ValueError("perturbation does not vanish")
    if spec.r.is_zero:
        return TailBound(n, BoundedReal.exact(0))
    # start 1: b^n sum_{m>n} R(m) b^-m ; start 0: b^n sum_{m>=n} R(m) b^-m
    first = n + 1 if spec.start == 1 else n

    def compute(work):
        return _fixed_point_sum(spec.r, spec.base, first, n, work).round_outward(work)

    return TailBound(n, _refine(compute, precision_bits))


@dataclass(frozen=True)
class CorrelationReport:
    checked_range: int
    max_toroidal_defect: BoundedReal
    tail_magnitudes: tuple
    verdict: bool
    failures: tuple = ()
    digit_agreement_rate: float | None = None

    @property
    def passed(self) -> bool:
        return self.verdict


def _defect_enclosure(diff: BoundedReal) -> BoundedReal:
    """Enclosure of the distance from ``diff`` to the nearest integer."""
    k = round(diff.mid)
    centre = abs(diff.mid - k)
    lo = max(Fraction(0), centre - diff.rad)
    return BoundedReal.from_bounds(lo, min(Fraction(1, 2), centre + diff.rad))


def verify_correlation(
    spec: BbpSpec, steps: int, precision_bits: int = 64, step_cap: int = DEFAULT_STEP_CAP
) -> CorrelationReport:
    """Check x_n(theta) = y_n* + t_n (mod 1) for n = 1..steps.

    x_n is the fractional part of b^n * theta taken from one enclosure of
    theta at steps*log2(b) + precision_bits bits; the perturbed remainders
    come from the exact recurrence and t_n from its own tail sum, so no
    path reuses the identity being checked.
    """
    validate_spec(spec)
    if not spec.vanishing:
        raise ValueError("perturbation does not vanish")
    if steps < 1:
        raise ValueError("steps must be >= 1")
    if steps > step_cap:
        raise ValueError("insufficient precision for requested steps")
    b = spec.base
    theta_bits = math.ceil(steps * math.log2(b)) + precision_bits + GUARD_BITS
    theta = eval_theta(spec, theta_bits)
    orbit = perturbed_orbit(spec, 0, steps)
    defects = []
    tails = []
    failures = []
    scaled = theta
    for n in range(1, steps + 1):
        scaled = BoundedReal(scaled.mid * b, scaled.rad * b).frac()
        t = tail(spec, n, precision_bits).enclosure
        tails.append(abs(t.mid) + t.rad)
        diff = scaled - orbit.remainder(n) - t
        defect = _defect_enclosure(diff)
        defects.append(defect)
        if defect.lo > 0:
            failures.append(n)
    worst = BoundedReal.from_bounds(max(d.lo for d in defects), max(d.hi for d in defects))
    agreement = _digit_agreement(theta, b, orbit)
    return CorrelationReport(steps, worst, tuple(tails), not failures, tuple(failures), agreement)


def _digit_agreement(theta: BoundedReal, base: int, orbit: PerturbedOrbit) -> float | None:
    """Share of confident b-expansion digits equal to the perturbed digits (empirical only)."""
    reading = digits_of_real(theta, base, len(orbit.digits))
    pairs = [(a, c) for a, c, ok in zip(reading.digits, orbit.digits, reading.confident) if ok]
    if not pairs:
        return None
    return sum(a == c for a, c in pairs) / len(pairs)


@dataclass(frozen=True)
class DichotomyResult:
    classification: str  # finite-limit-points | apparently-dense | inconclusive
    clusters: tuple
    coverage: Fraction
    diameters_shrinking: bool
    note: str = field(default="empirical: finite orbits cannot certify density or finiteness")


def dichotomy_probe(
    spec: BbpSpec,
    steps: int,
    cluster_radius=Fraction(1, 64),
    max_clusters: int = 64,
    y0=0,
) -> DichotomyResult:
    """Sort the late perturbed remainders into finitely many shrinking clusters,
    an apparently dense cloud, or neither."""
    validate_spec(spec)
    if not spec.vanishing:
        raise ValueError("perturbation does not vanish")
    if steps < 16:
        raise ValueError("too few steps")
    radius = as_rational(cluster_radius)
    orbit = perturbed_orbit(spec, y0, steps)
    late = orbit.remainders[steps // 2:]
    clusters = cluster_limit_points(late, radius)
    cells = math.ceil(1 / radius)
    hit = {y.numerator * cells // y.denominator for y in late}
    coverage = Fraction(len(hit), cells)
    if coverage == 1:
        return DichotomyResult("apparently-dense", tuple(clusters), coverage, False)
    if len(clusters) <= max_clusters:
        # each cluster's spread over the fourth quarter of the orbit must not
        # exceed its spread over the third quarter
        half = len(late) // 2
        early, recent = late[:half], late[half:]
        shrinking = True
        for c in clusters:
            a = [y for y in early if c.contains(y)]
            z = [y for y in recent if c.contains(y)]
            if a and z and c.spread(z) > c.spread(a):
                shrinking = False
        if shrinking:
            return DichotomyResult("finite-limit-points", tuple(clusters), coverage, True)
    return DichotomyResult("inconclusive", tuple(clusters), coverage, False)

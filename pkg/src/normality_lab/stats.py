"""Equidistribution diagnostics on finite samples of [0, 1).

Nothing here returns an "is uniform" boolean: the functions report
discrepancies, chi-square values and cluster structure, and thresholds
are left to the caller.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .numerics import BoundedReal, as_rational


KEY_BITS = 64


def _floor_scaled(x: Fraction, bits: int = KEY_BITS) -> int:
    return (x.numerator << bits) // x.denominator


def sort_key(x: Fraction) -> tuple:
    """Order-preserving key: a 64-bit dyadic floor first, exact value on ties."""
    return (_floor_scaled(x), x)


def star_discrepancy(samples: Sequence) -> Fraction:
    """Exact D_N* = max_i max(i/N - u_(i), u_(i) - (i-1)/N) over the sorted sample.

    Dyadic floors of N*u_(i) bound every candidate to within one unit, so
    only indices whose upper bound reaches the best lower bound are
    evaluated in exact arithmetic.
    """
    if not samples:
        raise ValueError("star discrepancy of an empty sample")
    u = sorted((as_rational(s) for s in samples), key=sort_key)
    n = len(u)
    one = 1 << KEY_BITS
    bounds = []
    for i, x in enumerate(u, start=1):
        f = (x.numerator * n << KEY_BITS) // x.denominator
        # both candidates, scaled by n * 2**KEY_BITS, lie in (upper - 1, upper]
        bounds.append(max(i * one - f, f + 1 - (i - 1) * one))
    best_lower = max(bounds) - 1
    best = Fraction(0)
    for i, (x, up) in enumerate(zip(u, bounds), start=1):
        if up >= best_lower:
            best = max(best, Fraction(i, n) - x, x - Fraction(i - 1, n))
    return best


@dataclass(frozen=True)
class DiscrepancyReport:
    sample_size: int
    star_discrepancy: Fraction
    uniform_verdict_note: str = "empirical statistic; no uniformity claim is made"


def discrepancy_report(samples: Sequence) -> DiscrepancyReport:
    return DiscrepancyReport(len(samples), star_discrepancy(samples))


def block_key(block: Sequence[int], base: int) -> str:
    if base <= 36:
        return "".join("0123456789abcdefghijklmnopqrstuvwxyz"[d] for d in block)
    return ",".join(str(d) for d in block)


@dataclass(frozen=True)
class BlockCensus:
    base: int
    block_length: int
    counts: dict
    total_windows: int
    chi_square: BoundedReal
    all_blocks_present: bool


def block_census(digits: Sequence[int], base: int, m: int) -> BlockCensus:
    """Sliding-window counts of length-m blocks and their chi-square statistic."""
    if m < 1:
        raise ValueError("block length must be >= 1")
    if len(digits) < m:
        raise ValueError("digit sequence shorter than block length")
    counts: dict[tuple, int] = {}
    for i in range(len(digits) - m + 1):
        key = tuple(digits[i:i + m])
        counts[key] = counts.get(key, 0) + 1
    total = len(digits) - m + 1
    cells = base**m
    expected = Fraction(total, cells)
    observed_sq = sum(Fraction(c) ** 2 for c in counts.values())
    # sum over all cells of (c - E)^2 / E, absent cells contributing E each
    chi = observed_sq / expected - 2 * total + expected * cells
    present = len(counts) == cells and all(0 <= d < base for k in counts for d in k)
    keyed = {block_key(k, base): v for k, v in sorted(counts.items())}
    return BlockCensus(base, m, keyed, total, BoundedReal.exact(chi), present)


@dataclass(frozen=True)
class Cluster:
    """A toroidal arc [start, start + diameter] holding ``count`` samples."""

    center: Fraction
    count: int
    diameter: Fraction
    start: Fraction

    def contains(self, y) -> bool:
        return (as_rational(y) - self.start) % 1 <= self.diameter

    def near(self, y, tol) -> bool:
        """Whether y is within toroidal distance ``tol`` of the arc (limit points
        of a cluster need not be samples, so they sit up to one linkage radius out)."""
        off = (as_rational(y) - self.start) % 1
        return off <= self.diameter + as_rational(tol) or 1 - off <= as_rational(tol)

    def spread(self, points: Sequence) -> Fraction:
        offs = [(as_rational(y) - self.start) % 1 for y in points]
        return max(offs) - min(offs) if offs else Fraction(0)


def _gap_exceeds(a: Fraction, b: Fraction, ka: int, kb: int, radius: Fraction, rk: int) -> bool:
    """Whether b - a > radius, deciding from dyadic floors when they are conclusive."""
    # (b - a) * 2**KEY_BITS lies in (kb - ka - 1, kb - ka + 1); radius in [rk, rk + 1)
    d = kb - ka
    if d - 1 >= rk + 1:
        return True
    if d + 1 <= rk:
        return False
    return b - a > radius


def cluster_limit_points(samples: Sequence, radius) -> list[Cluster]:
    """Single-linkage clustering on R/Z: neighbours within ``radius`` join."""
    if not samples:
        raise ValueError("cannot cluster an empty sample")
    radius = as_rational(radius)
    pts = sorted((as_rational(s) % 1 for s in samples), key=sort_key)
    keys = [_floor_scaled(p) for p in pts]
    rk = _floor_scaled(radius)
    n = len(pts)
    one = 1 << KEY_BITS
    cuts = [i for i in range(n - 1) if _gap_exceeds(pts[i], pts[i + 1], keys[i], keys[i + 1], radius, rk)]
    if _gap_exceeds(pts[-1], pts[0] + 1, keys[-1], keys[0] + one, radius, rk):
        cuts.append(n - 1)
    if not cuts:
        # everything is chained around the whole circle
        return [Cluster(Fraction(1, 2), n, Fraction(1), Fraction(0))]
    clusters = []
    for a, b in zip(cuts, cuts[1:] + [cuts[0] + n]):
        first, last = pts[(a + 1) % n], pts[b % n]
        diameter = (last - first) % 1
        clusters.append(Cluster((first + diameter / 2) % 1, b - a, diameter, first))
    clusters.sort(key=lambda c: c.start)
    return clusters


def _ecdf_distance(a: Sequence[tuple], b: Sequence[tuple]) -> Fraction:
    """sup |F_a - F_b| for two samples given as sorted :func:`sort_key` lists."""
    na, nb = len(a), len(b)
    i = j = 0
    best = Fraction(0)
    while i < na or j < nb:
        x = a[i] if j >= nb or (i < na and a[i] <= b[j]) else b[j]
        while i < na and a[i] == x:
            i += 1
        while j < nb and b[j] == x:
            j += 1
        best = max(best, abs(Fraction(i, na) - Fraction(j, nb)))
    return best


@dataclass(frozen=True)
class StabilityReport:
    distances: tuple  # (N, Kolmogorov distance between mu_N and mu_ceil(N/2))


def measure_stability(samples: Sequence) -> StabilityReport:
    """Kolmogorov distances between nested empirical measures at N = 4, 8, 16, ..."""
    if len(samples) < 4:
        raise ValueError("need at least 4 samples")
    pts = [sort_key(as_rational(s)) for s in samples]
    out = []
    N = 4
    while N <= len(pts):
        half = math.ceil(N / 2)
        out.append((N, _ecdf_distance(sorted(pts[:N]), sorted(pts[:half]))))
        N *= 2
    return StabilityReport(tuple(out))


def perfect_power_root(n: int) -> tuple[int, int]:
    """(r, k) with n = r**k and k maximal."""
    if n < 2:
        raise ValueError("need n >= 2")
    for k in range(n.bit_length(), 1, -1):
        r = round(n ** (1.0 / k))
        for c in (r - 1, r, r + 1):
            if c >= 2 and c**k == n:
                return c, k
    return n, 1


def multiplicatively_independent(a: int, b: int) -> bool:
    """a, b >= 2 are dependent iff both are powers of one integer c >= 2."""
    return perfect_power_root(a)[0] != perfect_power_root(b)[0]


@dataclass(frozen=True)
class JointBaseReport:
    thetas: tuple  # two enclosures
    discrepancies: tuple  # two DiscrepancyReports
    censuses: tuple  # two BlockCensus objects
    note: str = "empirical; joint-base behaviour is conjectural"


def joint_base_report(spec_a, spec_b, n: int = 1000, precision_bits: int = 128, block_length: int = 2):
    """Check that two specs in independent bases name the same theta, then
    report discrepancy of each perturbed orbit and digit censuses of theta
    in both bases."""
    from .bbp import eval_theta, theta_digits
    from .perturbed import perturbed_orbit

    if not multiplicatively_independent(spec_a.base, spec_b.base):
        raise ValueError("bases multiplicatively dependent")
    ta = eval_theta(spec_a, precision_bits)
    tb = eval_theta(spec_b, precision_bits)
    if not ta.intersects(tb):
        raise ValueError("specs disagree")
    reports, censuses = [], []
    for spec in (spec_a, spec_b):
        orbit = perturbed_orbit(spec, 0, n)
        reports.append(discrepancy_report(orbit.remainders))
        reading = theta_digits(spec, n)
        censuses.append(block_census(reading.digits, spec.base, block_length))
    return JointBaseReport((ta, tb), tuple(reports), tuple(censuses))

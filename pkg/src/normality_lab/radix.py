"""The b-transformation x -> b*x (mod 1) on exact rationals.

Orbits keep the remainders x_1, x_2, ... and digits d_1, d_2, ... with
x_{n+1} = b*x_n - d_{n+1} and d_{n+1} = floor(b*x_n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .numerics import BoundedReal, as_rational


def _check_base(base: int) -> None:
    if not isinstance(base, int) or base < 2:
        raise ValueError("invalid base")


def toroidal_distance(u, v) -> Fraction:
    """Distance on R/Z: min(|u - v| mod 1, 1 - |u - v| mod 1)."""
    d = (as_rational(u) - as_rational(v)) % 1
    return min(d, 1 - d)


@dataclass(frozen=True)
class RadixOrbit:
    base: int
    initial: Fraction
    remainders: tuple
    digits: tuple

    def remainder(self, n: int) -> Fraction:
        return self.initial if n == 0 else self.remainders[n - 1]

    def digit(self, n: int) -> int:
        return self.digits[n - 1]

    def reconstruct(self, n: int) -> Fraction:
        """sum_{j<=n} d_j b^-j + b^-n x_n, which must equal the initial point."""
        b = Fraction(self.base)
        s = sum((Fraction(self.digits[j - 1]) / b**j for j in range(1, n + 1)), Fraction(0))
        return s + self.remainder(n) / b**n


@dataclass(frozen=True)
class PeriodReport:
    preperiod_length: int
    period_length: int
    cycle: tuple


def b_orbit(x0, base: int, steps: int) -> RadixOrbit:
    _check_base(base)
    x = as_rational(x0)
    if not 0 <= x < 1:
        raise ValueError("initial point must lie in [0, 1)")
    if steps < 0:
        raise ValueError("steps must be >= 0")
    rems, digs = [], []
    for _ in range(steps):
        y = base * x
        d = math.floor(y)
        x = y - d
        rems.append(x)
        digs.append(d)
    return RadixOrbit(base, as_rational(x0), tuple(rems), tuple(digs))


def detect_period(x0, base: int) -> PeriodReport:
    """Minimal preperiod and period of the orbit of a rational point.

    At most ``denominator`` distinct remainders can occur, so the loop ends.
    """
    _check_base(base)
    x = as_rational(x0)
    if not 0 <= x < 1:
        raise ValueError("initial point must lie in [0, 1)")
    # work on numerators over the fixed denominator: r -> b*r mod D
    den = x.denominator
    r = x.numerator
    seen: dict[int, int] = {}
    orbit = []
    n = 0
    while r not in seen:
        seen[r] = n
        orbit.append(r)
        r = base * r % den
        n += 1
    start = seen[r]
    orbit = [Fraction(v, den) for v in orbit]
    return PeriodReport(start, n - start, tuple(orbit[start:]))


@dataclass(frozen=True)
class DigitReading:
    digits: tuple
    confident: tuple

    @property
    def all_confident(self) -> bool:
        return all(self.confident)


def digits_of_real(theta: BoundedReal, base: int, count: int) -> DigitReading:
    """First ``count`` base-b digits of the fractional part of an enclosed real.

    A digit is confident when the whole scaled enclosure stays inside one
    open digit cell; any enclosure touching a cell boundary is flagged
    indeterminate and its digit is read from the midpoint. A point
    enclosure (radius 0) is always confident.
    """
    _check_base(base)
    if count < 1:
        raise ValueError("count must be >= 1")
    if 2 * theta.rad * base >= 1:
        raise ValueError("insufficient precision")
    lo, hi, mid = theta.lo, theta.hi, theta.mid
    digits, flags = [], []
    scale = 1
    for _ in range(count):
        scale *= base
        m = math.floor(mid * scale)
        digits.append(m % base)
        if theta.rad == 0:
            flags.append(True)
            continue
        a, b = lo * scale, hi * scale
        fa = math.floor(a)
        flags.append(fa == math.floor(b) and a != fa)
    return DigitReading(tuple(digits), tuple(flags))

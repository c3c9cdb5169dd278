"""Exact integers and rationals, midpoint-radius enclosures, and the two
constants the rest of the package needs (pi and exp).

Rationals are :class:`fractions.Fraction`; an enclosure keeps an exact
rational midpoint and radius so every containment claim is decidable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

Rational = Fraction
Number = Union[int, Fraction]

GUARD_BITS = 32


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"num/den"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def mod_pow(base: int, exponent: int, modulus: int) -> int:
    """Square-and-multiply modular exponentiation, O(log exponent) products."""
    if modulus < 1:
        raise ValueError("modulus must be >= 1")
    if exponent < 0:
        raise ValueError("exponent must be >= 0")
    if modulus == 1:
        return 0
    result = 1
    b = base % modulus
    e = exponent
    while e:
        if e & 1:
            result = result * b % modulus
        b = b * b % modulus
        e >>= 1
    return result


def lcm_int(values: Iterable[int]) -> int:
    """Least common multiple of the absolute values of nonzero integers."""
    acc = None
    for v in values:
        if v == 0:
            raise ValueError("lcm of zero is undefined")
        v = abs(v)
        acc = v if acc is None else acc // math.gcd(acc, v) * v
    if acc is None:
        raise ValueError("empty lcm")
    return acc


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


@dataclass(frozen=True)
class BoundedReal:
    """Closed interval ``[mid - rad, mid + rad]`` with exact rational ends."""

    mid: Fraction
    rad: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "mid", as_rational(self.mid))
        object.__setattr__(self, "rad", as_rational(self.rad))
        if self.rad < 0:
            raise ValueError("radius must be nonnegative")

    @classmethod
    def exact(cls, value: Number) -> "BoundedReal":
        return cls(as_rational(value), Fraction(0))

    @classmethod
    def from_bounds(cls, lo: Number, hi: Number) -> "BoundedReal":
        lo, hi = as_rational(lo), as_rational(hi)
        if lo > hi:
            raise ValueError("empty interval")
        return cls((lo + hi) / 2, (hi - lo) / 2)

    @property
    def lo(self) -> Fraction:
        return self.mid - self.rad

    @property
    def hi(self) -> Fraction:
        return self.mid + self.rad

    def contains(self, value) -> bool:
        if isinstance(value, BoundedReal):
            return self.lo <= value.lo and value.hi <= self.hi
        return self.lo <= as_rational(value) <= self.hi

    def intersects(self, other: "BoundedReal") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def hull(self, other: "BoundedReal") -> "BoundedReal":
        return BoundedReal.from_bounds(min(self.lo, other.lo), max(self.hi, other.hi))

    def contains_integer(self) -> bool:
        return math.floor(self.hi) >= math.ceil(self.lo)

    def _coerce(self, other) -> "BoundedReal":
        if isinstance(other, BoundedReal):
            return other
        return BoundedReal.exact(other)

    def __add__(self, other):
        o = self._coerce(other)
        return BoundedReal(self.mid + o.mid, self.rad + o.rad)

    __radd__ = __add__

    def __neg__(self):
        return BoundedReal(-self.mid, self.rad)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return BoundedReal(
            self.mid * o.mid,
            abs(self.mid) * o.rad + abs(o.mid) * self.rad + self.rad * o.rad,
        )

    __rmul__ = __mul__

    def reciprocal(self) -> "BoundedReal":
        # [1/(m+r), 1/(m-r)] has exact midpoint m/(m^2-r^2) and radius r/(m^2-r^2)
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("enclosure contains zero")
        den = self.mid * self.mid - self.rad * self.rad
        return BoundedReal(self.mid / den, self.rad / den)

    def __truediv__(self, other):
        return self * self._coerce(other).reciprocal()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.reciprocal()

    def __abs__(self):
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return BoundedReal.from_bounds(0, max(-self.lo, self.hi))

    def scale_pow2(self, k: int) -> "BoundedReal":
        f = Fraction(2) ** k
        return BoundedReal(self.mid * f, self.rad * f)

    def round_outward(self, bits: int) -> "BoundedReal":
        """Snap to a dyadic grid of spacing ``2**-bits`` without losing any point."""
        scale = 1 << bits
        lo = Fraction(math.floor(self.lo * scale), scale)
        hi = Fraction(math.ceil(self.hi * scale), scale)
        return BoundedReal.from_bounds(lo, hi)

    def frac(self) -> "BoundedReal":
        """Shift by the integer part of the midpoint (reduction mod 1)."""
        return BoundedReal(self.mid - math.floor(self.mid), self.rad)

    def __float__(self):
        return float(self.mid)

    def __repr__(self):
        return f"BoundedReal({float(self.mid)!r} +/- {float(self.rad):.3g})"


def _refine(compute, precision_bits: int, start_extra: int = GUARD_BITS, max_rounds: int = 8):
    """Raise working precision until the result radius meets ``2**-precision_bits``."""
    target = Fraction(1, 1 << precision_bits)
    extra = start_extra
    for _ in range(max_rounds):
        out = compute(precision_bits + extra)
        if out.rad <= target:
            return out
        extra *= 2
    raise ArithmeticError("enclosure did not reach the requested precision")


def const_pi(precision_bits: int) -> BoundedReal:
    """Enclosure of pi, produced by summing the built-in base-16 BBP preset."""
    if precision_bits < 8:
        raise ValueError("precision_bits must be >= 8")
    from .bbp import PRESETS, eval_theta

    return eval_theta(PRESETS["pi-base16"], precision_bits)


def _exp_small(y: Fraction, work_bits: int) -> BoundedReal:
    # Taylor series for |y| <= 1/2; remainder < 2|y|^(K+1)/(K+1)!
    scale = 1 << work_bits
    total = Fraction(0)
    term = Fraction(1)
    k = 0
    while True:
        total += term
        k += 1
        term = term * y / k
        if abs(term) * 2 * scale < 1:
            break
    tail = 2 * abs(term)
    return BoundedReal(total, tail).round_outward(work_bits)


def exp_real(x, precision_bits: int) -> BoundedReal:
    """Enclosure of ``e**x`` with radius at most ``2**-precision_bits``.

    ``x`` may be a rational or a :class:`BoundedReal`; for the latter the
    result is the hull of the images of both endpoints.
    """
    if isinstance(x, BoundedReal):
        if x.rad == 0:
            return exp_real(x.mid, precision_bits)
        return exp_real(x.lo, precision_bits + 2).hull(exp_real(x.hi, precision_bits + 2))
    x = as_rational(x)
    if x == 0:
        return BoundedReal.exact(1)
    # halve until |x| <= 1/2, then square back up
    s = 0
    while abs(x) / (1 << s) > Fraction(1, 2):
        s += 1
    y = x / (1 << s)
    mag = max(0, math.ceil(x * Fraction(3, 2))) if x > 0 else 0

    def compute(work):
        w = work + 2 * s + mag + 4
        v = _exp_small(y, w)
        for _ in range(s):
            v = (v * v).round_outward(w)
        return v.round_outward(work)

    return _refine(compute, precision_bits)

"""BBP specifications, series evaluation with rigorous tails, and spigot
digit extraction.

A spec is a base b >= 2, a rational function R = p/q with integer
coefficients, and a start index s in {0, 1}; it names the real number
``theta = sum_{n >= s} R(n) * b**-n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import polynomials as P
from .numerics import BoundedReal, GUARD_BITS, _refine, mod_pow
from .radix import digits_of_real


class SpecError(ValueError):
    """Raised when a spec fails validation; ``errors`` lists every problem."""

    def __init__(self, errors: Sequence[str]):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


@dataclass(frozen=True)
class RationalFunction:
    p: tuple
    q: tuple

    def __post_init__(self):
        object.__setattr__(self, "p", tuple(int(c) for c in P.trim(self.p)))
        object.__setattr__(self, "q", tuple(int(c) for c in P.trim(self.q)))
        if not self.q:
            raise SpecError(["denominator is the zero polynomial"])

    @property
    def deg_p(self) -> int:
        return P.degree(self.p)

    @property
    def deg_q(self) -> int:
        return P.degree(self.q)

    @property
    def is_zero(self) -> bool:
        return not self.p

    def __call__(self, n) -> Fraction:
        return Fraction(P.evaluate(self.p, n)) / P.evaluate(self.q, n)

    def __str__(self):
        return f"({P.to_string(self.p)})/({P.to_string(self.q)})"


@dataclass(frozen=True)
class BbpSpec:
    base: int
    r: RationalFunction
    start: int = 1
    name: str | None = field(default=None, compare=False)

    @property
    def vanishing(self) -> bool:
        """True when deg q > deg p, so the terms tend to zero."""
        return self.r.is_zero or self.r.deg_q > self.r.deg_p

    def to_dict(self) -> dict:
        return {"base": self.base, "p": list(self.r.p), "q": list(self.r.q), "start": self.start}

    @classmethod
    def from_dict(cls, data: dict) -> "BbpSpec":
        errors = [f"missing key {k!r}" for k in ("base", "p", "q") if k not in data]
        if errors:
            raise SpecError(errors)
        try:
            return cls(
                int(data["base"]),
                RationalFunction(tuple(data["p"]), tuple(data["q"])),
                int(data.get("start", 1)),
            )
        except (TypeError, ValueError) as exc:
            if isinstance(exc, SpecError):
                raise
            raise SpecError([f"malformed spec: {exc}"]) from exc


def make_spec(base: int, p: Sequence[int], q: Sequence[int], start: int = 1, name=None) -> BbpSpec:
    return BbpSpec(base, RationalFunction(tuple(p), tuple(q)), start, name)


@dataclass(frozen=True)
class BoundarySum:
    """sum_{n >= start} R(n) z**n at z = +1 or -1."""

    r: RationalFunction
    z: int
    start: int
    name: str | None = None


PRESETS: dict[str, BbpSpec] = {
    "log2-base2": make_spec(2, [1], [0, 1], 1, "log2-base2"),
    "log2-base9": make_spec(9, [6], [-1, 2], 1, "log2-base9"),
    # 4/(8n+1) - 2/(8n+4) - 1/(8n+5) - 1/(8n+6) over a common, reduced denominator
    "pi-base16": make_spec(16, [47, 151, 120], [15, 194, 712, 1024, 512], 0, "pi-base16"),
    # (n+2)/(n(n+1)) = 2/n - 1/(n+1); sums to exactly 1 at z = 1/2
    "one-base2": make_spec(2, [2, 1], [0, 1, 1], 1, "one-base2"),
    "li2-half": make_spec(2, [1], [0, 0, 1], 1, "li2-half"),
}

BOUNDARY_PRESETS: dict[str, BoundarySum] = {
    "lehmer": BoundarySum(RationalFunction((1,), (1, 7, 14, 8)), 1, 0, "lehmer"),
    "alternating-n2p1": BoundarySum(RationalFunction((1,), (1, 0, 1)), -1, 1, "alternating-n2p1"),
    "bombieri-h1": BoundarySum(RationalFunction((1,), (0, 1, 0, 1)), 1, 1, "bombieri-h1"),
}


def validate_spec(spec: BbpSpec) -> BbpSpec:
    """Return the spec unchanged, or raise :class:`SpecError` listing every defect."""
    errors = []
    if not isinstance(spec.base, int) or spec.base < 2:
        errors.append("base < 2")
    if spec.start not in (0, 1):
        errors.append("start index must be 0 or 1")
    r = spec.r
    if not r.is_zero:
        if P.degree(P.gcd(r.p, r.q)) > 0:
            errors.append("p,q not coprime")
    for root in P.rational_roots(r.q):
        if root.denominator == 1 and root >= max(spec.start, 0):
            errors.append(f"q has nonnegative integer root n={int(root)}")
    if errors:
        raise SpecError(errors)
    return spec


def epsilon(spec: BbpSpec, n: int) -> Fraction:
    """The exact term p(n)/q(n)."""
    if n < spec.start:
        raise ValueError("index below the series start")
    return spec.r(n)


def magnitude_bound(r: RationalFunction, n0: int) -> tuple[Fraction, int] | None:
    """(C, e) with |R(m)| <= C * m**e for every integer m >= n0, or None.

    With l = deg p and d = deg q, for m >= n0:
    |p(m)| <= m^l * sum_i |p_i| n0^(i-l) and
    |q(m)| >= m^d * (|q_d| - sum_{i<d} |q_i| n0^(i-d)).
    None means n0 is too small for the second factor to be positive.
    """
    if n0 < 1:
        return None
    if r.is_zero:
        return Fraction(0), 0
    l, d = r.deg_p, r.deg_q
    n0 = Fraction(n0)
    A = sum(abs(c) * n0 ** (i - l) for i, c in enumerate(r.p))
    kappa = abs(r.q[-1]) - sum(abs(c) * n0 ** (i - d) for i, c in enumerate(r.q[:-1]))
    if kappa <= 0:
        return None
    return A / kappa, l - d


def normalized_tail_bound(r: RationalFunction, n0: int, z: Fraction) -> Fraction | None:
    """Upper bound on sum_{k >= 0} |R(n0 + k)| |z|**k for |z| < 1."""
    z = abs(Fraction(z))
    mb = magnitude_bound(r, n0)
    if mb is None:
        return None
    C, e = mb
    if e <= 0:
        # m**e <= n0**e for m >= n0
        return C * Fraction(n0) ** e / (1 - z)
    rho = Fraction(n0 + 1, n0) ** e * z
    if rho >= 1:
        return None
    return C * Fraction(n0) ** e / (1 - rho)


def _fixed_point_sum(r: RationalFunction, base: int, first: int, offset: int, work: int) -> BoundedReal:
    """Enclose sum_{m >= first} R(m) * base**(offset - m) at 2**-work resolution."""
    if r.is_zero:
        return BoundedReal.exact(0)
    z = Fraction(1, base)
    scale = 1 << work
    n = max(first, 1)
    # cutoff: tail weight base**(offset - N) times the normalized bound must be tiny
    step = max(8, work // max(1, base.bit_length() - 1) + 8)
    N = n + step
    while True:
        tb = normalized_tail_bound(r, N, z)
        if tb is not None and tb * scale < Fraction(base) ** (N - offset):
            break
        N += step
    acc = 0
    count = 0
    for m in range(first, N):
        num = P.evaluate(r.p, m) << work
        den = P.evaluate(r.q, m)
        e = m - offset
        if e >= 0:
            den *= base**e
        else:
            num *= base ** (-e)
        acc += num // den
        count += 1
    tail = tb / Fraction(base) ** (N - offset)
    return BoundedReal(Fraction(2 * acc + count, 2 * scale), Fraction(count, 2 * scale) + tail)


def eval_theta(spec: BbpSpec, precision_bits: int) -> BoundedReal:
    """Enclosure of theta with radius at most ``2**-precision_bits``."""
    validate_spec(spec)
    if spec.r.is_zero:
        return BoundedReal.exact(0)

    def compute(work):
        return _fixed_point_sum(spec.r, spec.base, spec.start, 0, work).round_outward(work)

    return _refine(compute, precision_bits)


# -- boundary sums at z = +-1 ---------------------------------------------


def _compose_affine(p: Sequence[int], a: int, c: int) -> tuple:
    """p(a + c*x)."""
    out: tuple = ()
    for coef in reversed(P.trim(p)):
        out = P.add(P.mul(out, (a, c)), (coef,))
    return out


def _rising(k: int) -> tuple:
    """x (x+1) ... (x+k-1)."""
    out: tuple = (1,)
    for i in range(k):
        out = P.mul(out, (i, 1))
    return out


def _clear(p: Sequence, q: Sequence) -> RationalFunction:
    """Scale rational coefficients to integers and drop common factors."""
    g = P.gcd(p, q)
    if P.degree(g) > 0:
        p = P.divmod_poly(p, g)[0]
        q = P.divmod_poly(q, g)[0]
    cp, pp = P.primitive(p) if P.trim(p) else (Fraction(0), ())
    cq, qq = P.primitive(q)
    ratio = cp / cq
    return RationalFunction(P.scale(pp, ratio.numerator), P.scale(qq, ratio.denominator))


_MAX_BOUNDARY_TERMS = 1 << 22


def _sum_at_one(r: RationalFunction, first: int, work: int, order: int = 10) -> BoundedReal:
    """Enclose sum_{m >= first} R(m) for deg q >= deg p + 2.

    The tail past the cutoff N is split into a factorial series
    sum_k a_k / (m (m+1) ... (m+k-1)), whose tails telescope in closed form,
    plus a remainder decaying like m**-(order+1) bounded by integral comparison.
    """
    if r.is_zero:
        return BoundedReal.exact(0)
    coeffs = []
    rem_p, rem_q = r.p, r.q
    for k in range(r.deg_q - r.deg_p, order + 1):
        if not P.trim(rem_p):
            break
        if P.degree(rem_q) - P.degree(rem_p) == k:
            a = Fraction(P.leading(rem_p)) / P.leading(rem_q)
            coeffs.append((k, a))
            fk = _rising(k)
            rem_p = P.sub(P.mul(rem_p, fk), P.scale(rem_q, a))
            rem_q = P.mul(rem_q, fk)
            red = _clear(rem_p, rem_q)
            rem_p, rem_q = red.p, red.q
    remainder = RationalFunction(rem_p, rem_q) if P.trim(rem_p) else None
    scale = 1 << work
    target = Fraction(1, scale)
    N = max(first + 1, 2, 64)
    while True:
        if N > _MAX_BOUNDARY_TERMS:
            raise ArithmeticError("boundary tail bound did not converge")
        if remainder is None:
            rem_bound = Fraction(0)
            break
        mb = magnitude_bound(remainder, N)
        if mb is not None:
            C, e = mb
            E = -e
            rem_bound = C * (Fraction(1, N**E) + Fraction(1, (E - 1) * N ** (E - 1)))
            if rem_bound <= target:
                break
        N *= 2
    acc = 0
    count = 0
    for m in range(first, N):
        acc += (P.evaluate(r.p, m) << work) // P.evaluate(r.q, m)
        count += 1
    closed = sum(
        (a / ((k - 1) * P.evaluate(_rising(k - 1), N)) for k, a in coeffs), Fraction(0)
    )
    return BoundedReal(Fraction(2 * acc + count, 2 * scale) + closed, Fraction(count, 2 * scale) + rem_bound)


def eval_boundary(r: RationalFunction, z: int, start: int, precision_bits: int) -> BoundedReal:
    """Enclosure of sum_{n >= start} R(n) z**n for z = +1 or -1."""
    if z not in (1, -1):
        raise ValueError("boundary evaluation needs z = +1 or z = -1")
    if r.is_zero:
        return BoundedReal.exact(0)
    if r.deg_q < r.deg_p + 2:
        raise ValueError("boundary evaluation not absolutely convergent")
    bad = [x for x in P.rational_roots(r.q) if x.denominator == 1 and x >= start]
    if bad:
        raise ValueError(f"q has nonnegative integer root n={int(bad[0])}")
    if z == 1:
        summand = r
    else:
        # pair consecutive terms: (-1)^s [R(s + 2j) - R(s + 2j + 1)], j >= 0
        p1, q1 = _compose_affine(r.p, start, 2), _compose_affine(r.q, start, 2)
        p2, q2 = _compose_affine(r.p, start + 1, 2), _compose_affine(r.q, start + 1, 2)
        num = P.sub(P.mul(p1, q2), P.mul(p2, q1))
        if start % 2:
            num = P.neg(num)
        summand = _clear(num, P.mul(q1, q2))
    first = start if z == 1 else 0

    def compute(work):
        return _sum_at_one(summand, first, work).round_outward(work)

    return _refine(compute, precision_bits)


def eval_boundary_preset(name: str, precision_bits: int) -> BoundedReal:
    b = BOUNDARY_PRESETS[name]
    return eval_boundary(b.r, b.z, b.start, precision_bits)


# -- spigot extraction ----------------------------------------------------


@dataclass(frozen=True)
class DigitExtraction:
    position: int
    digits: tuple
    flags: tuple
    error_radius: Fraction
    peak_bits: int = 0

    @property
    def as_string(self) -> str:
        return "".join("0123456789abcdefghijklmnopqrstuvwxyz"[d] if d < 36 else f"[{d}]" for d in self.digits)


def extract_digits(spec: BbpSpec, position: int, count: int, guard_bits: int = 64) -> DigitExtraction:
    """Base-b digits of theta starting right after ``position`` digits.

    Reads frac(b**d * theta). Head terms n <= d are reduced exactly modulo
    their denominator via modular exponentiation, so only a
    ``guard_bits + count*log2(b)``-bit fractional accumulator is kept.
    """
    validate_spec(spec)
    if not spec.vanishing:
        raise ValueError("digit extraction needs deg q > deg p")
    if position < 0 or count < 1:
        raise ValueError("position must be >= 0 and count >= 1")
    b, d, r = spec.base, position, spec.r
    work = guard_bits + math.ceil(count * math.log2(b))
    scale = 1 << work
    mask = scale - 1
    acc = 0
    n_terms = 0
    peak = 0
    if not r.is_zero:
        for n in range(spec.start, d + 1):
            val = r(n)
            num, den = val.numerator, val.denominator
            # frac(b^(d-n) num/den) = ((b^(d-n) mod den) * (num mod den) mod den) / den
            t = mod_pow(b, d - n, den) * (num % den) % den
            shifted = t << work
            acc = (acc + shifted // den) & mask
            n_terms += 1
            peak = max(peak, shifted.bit_length(), den.bit_length())
        tail = _fixed_point_sum(r, b, max(d + 1, spec.start), d, work)
    else:
        tail = BoundedReal.exact(0)
    head = BoundedReal(Fraction(2 * acc + n_terms, 2 * scale), Fraction(n_terms, 2 * scale))
    enclosure = (head + tail).frac()
    peak = max(peak, work + 1)
    err = enclosure.rad
    if 2 * err * b**count >= 1:
        raise ValueError("insufficient guard bits")
    reading = digits_of_real(enclosure, b, count)
    return DigitExtraction(position, reading.digits, reading.confident, err, peak)


def theta_digits(spec: BbpSpec, count: int, guard_bits: int = 64):
    """First ``count`` digits of frac(theta) read from a single eval_theta enclosure."""
    bits = math.ceil(count * math.log2(spec.base)) + guard_bits
    return digits_of_real(eval_theta(spec, bits), spec.base, count)

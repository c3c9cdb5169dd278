"""Power series f(z) = sum p(n)/q(n) z^n: G-series test, lcm growth,
annihilating operator, partial fractions and closed forms.

Closed forms express sum_{n>=s} R(n) z^n for rational 0 < z < 1 as an exact
rational number plus logarithms log(1 - zeta*w) (zeta a root of unity,
w a real radical of z) with coefficients kept exactly in Q(zeta_M), plus
polylogarithms Li_k(z) for repeated integer roots.
"""

from __future__ import annotations

import math
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from mpmath import iv

from . import polynomials as P
from .bbp import BbpSpec, RationalFunction, eval_boundary, validate_spec
from .numerics import BoundedReal, GUARD_BITS, _refine, as_rational, lcm_int

# -- factorization ---------------------------------------------------------


@dataclass(frozen=True)
class Factorization:
    constant: Fraction
    linear_factors: tuple  # (l, m, multiplicity) for (l*x + m)
    nonlinear_remainder: tuple  # primitive integer polynomial, (1,) if none

    def expand(self) -> tuple:
        out: tuple = (self.constant,)
        for l, m, k in self.linear_factors:
            out = P.mul(out, P.power((m, l), k))
        return P.mul(out, self.nonlinear_remainder)

    @property
    def splits(self) -> bool:
        return P.degree(self.nonlinear_remainder) == 0


def factor_denominator(q: Sequence[int]) -> Factorization:
    """Pull out every rational root of q with multiplicity; the rest stays unfactored."""
    q = P.trim(q)
    if not q:
        raise ValueError("cannot factor the zero polynomial")
    const, rest = P.primitive(q)
    factors = []
    for root in P.rational_roots(rest):
        l, m = root.denominator, -root.numerator
        k = 0
        while True:
            quot, r = P.divmod_poly(rest, (m, l))
            if r:
                break
            rest = tuple(int(c) for c in quot)
            k += 1
        factors.append((l, m, k))
    if P.degree(rest) == 0:
        const *= rest[0]
        rest = (1,)
    return Factorization(Fraction(const), tuple(factors), tuple(rest))


# -- lcm growth ----------------------------------------------------------------


def _primes_upto(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i in range(n + 1) if sieve[i]]


@contextmanager
def _iv_precision(bits: int):
    saved = iv.prec
    iv.prec = bits
    try:
        yield
    finally:
        iv.prec = saved


def _iv_to_bounded(x) -> BoundedReal:
    lo, hi = (_raw_to_fraction(e) for e in x._mpi_)
    return BoundedReal.from_bounds(lo, hi)


def _raw_to_fraction(raw) -> Fraction:
    sign, man, exp, _ = raw
    if not man and exp:
        raise ArithmeticError("non-finite interval endpoint")
    value = Fraction(int(man)) * Fraction(2) ** int(exp)
    return -value if sign else value


def log_int(n: int, precision_bits: int = 64) -> BoundedReal:
    """Enclosure of the natural log of a positive integer."""
    if n < 1:
        raise ValueError("log of a non-positive integer")
    if n == 1:
        return BoundedReal.exact(0)
    with _iv_precision(precision_bits + n.bit_length() + GUARD_BITS):
        return _iv_to_bounded(iv.log(iv.mpf(n)))


@dataclass(frozen=True)
class LcmGrowth:
    m: int
    lcm: int
    log: BoundedReal


def lcm_growth_integers(m: int, precision_bits: int = 64) -> LcmGrowth:
    """lcm(1..m) as the product of the largest prime powers p^k <= m."""
    if m < 1:
        raise ValueError("m must be >= 1")
    value = 1
    for p in _primes_upto(m):
        pk = p
        while pk * p <= m:
            pk *= p
        value *= pk
    return LcmGrowth(m, value, log_int(value, precision_bits))


def coefficient_denominator_lcms(r: RationalFunction, n_max: int, start: int = 1) -> list[int]:
    """g_n = lcm of the reduced denominators of R(start), ..., R(n), for n = 1..n_max.

    Reducing each R(j) first is what removes gcd(p(j), q(j)) from the count.
    """
    out = []
    g = 1
    for n in range(start, n_max + 1):
        g = lcm_int([g, r(n).denominator])
        if n >= 1:
            out.append(g)
    return out


def cancellation_product(r: RationalFunction, n: int) -> float:
    """(prod_{j<=n} gcd(p(j), q(j)))^(1/n); bounded for coprime p, q."""
    total = 0.0
    for j in range(1, n + 1):
        g = math.gcd(P.evaluate(r.p, j), P.evaluate(r.q, j))
        total += math.log(g) if g else 0.0
    return math.exp(total / n)


@dataclass(frozen=True)
class ClassificationReport:
    is_g_series: bool
    reason: str
    lcm_profile: tuple  # (n, log g_n)
    growth_fit: dict
    factorization: Factorization


def classify_g(r, n_max: int = 500) -> ClassificationReport:
    """G-series verdict from the splitting of q over Q, with lcm evidence."""
    if isinstance(r, BbpSpec):
        start = r.start
        r = r.r
    else:
        start = 1 if P.evaluate(r.q, 0) == 0 else 0
    fac = factor_denominator(r.q)
    if fac.splits:
        reason = "q splits into linear factors over Q"
    else:
        reason = f"q has a factor without rational roots: {P.to_string(fac.nonlinear_remainder)}"
    lcms = coefficient_denominator_lcms(r, n_max, start)
    profile = tuple((n, math.log(g)) for n, g in enumerate(lcms, start=1))
    logN = profile[-1][1]
    fit = {
        "n": n_max,
        "linear_slope": logN / n_max,
        "superlinear_ratio": logN / (n_max * math.log(n_max)) if n_max > 1 else 0.0,
    }
    return ClassificationReport(fac.splits, reason, profile, fit, fac)


# -- annihilating operator ---------------------------------------------------


def _stirling2(n: int, k: int) -> int:
    row = [1]
    for i in range(1, n + 1):
        new = [0] * (i + 1)
        for j in range(1, i + 1):
            new[j] = j * (row[j] if j < len(row) else 0) + row[j - 1]
        row = new
    return row[k] if k < len(row) else 0


@dataclass(frozen=True)
class AnnihilatorOperator:
    """sum_i c_i(z) (d/dz)^i, normal-ordered, with polynomial coefficients."""

    terms: tuple  # (coefficient polynomial in z, derivative order)
    derivative_order: int  # exponent of the outer d/dz
    binomial_coeffs: tuple  # a'_j with p(x) = sum a'_j C(x, j)
    deg_p: int
    deg_q: int

    @property
    def order(self) -> int:
        return max((i for c, i in self.terms if P.trim(c)), default=0)

    def apply(self, series: Sequence) -> tuple:
        """Apply to a truncated power series given by its coefficient list."""
        f = P.trim([Fraction(c) for c in series])
        out: tuple = ()
        for coef, i in self.terms:
            g = f
            for _ in range(i):
                g = P.derivative(g)
            out = P.add(out, P.mul(coef, g))
        return out

    def exact_through(self, truncation: int) -> int:
        """Highest coefficient index of D(f_trunc) unaffected by truncation."""
        return truncation - self.derivative_order


def build_annihilator(r: RationalFunction, start: int = 0) -> AnnihilatorOperator:
    """D = (d/dz)^L (1 - z)^(l+1) q(z d/dz) with l = deg p; D f = 0.

    L = l + 1 for series starting at n = 0. A series starting at n = 1 lacks
    the p(0) term, which leaves a degree l+1 polynomial, so L = l + 2.
    """
    l = max(r.deg_p, 0)
    m = r.deg_q
    # q(theta) = sum_i (sum_j q_j S(j, i)) z^i d^i
    ops: dict[int, tuple] = {}
    for i in range(m + 1):
        c = sum(qj * _stirling2(j, i) for j, qj in enumerate(r.q))
        if c:
            ops[i] = P.add(ops.get(i, ()), tuple([0] * i + [c]))
    shift = P.power((1, -1), l + 1)
    ops = {i: P.mul(shift, c) for i, c in ops.items()}
    L = l + 1 if start == 0 else l + 2
    # d^L o (c d^i) = sum_t C(L, t) c^(t) d^(i + L - t)
    out: dict[int, tuple] = {}
    for i, c in ops.items():
        deriv = c
        for t in range(L + 1):
            out[i + L - t] = P.add(out.get(i + L - t, ()), P.scale(deriv, math.comb(L, t)))
            deriv = P.derivative(deriv)
    terms = tuple((tuple(Fraction(x) for x in c), i) for i, c in sorted(out.items()) if P.trim(c))
    return AnnihilatorOperator(terms, L, tuple(P.to_binomial_basis(r.p)), r.deg_p, m)


# -- partial fractions ---------------------------------------------------------


@dataclass(frozen=True)
class PartialFractions:
    poly_part: tuple
    terms: tuple  # (coefficient, root, multiplicity) for coefficient / (x - root)^multiplicity

    def evaluate(self, x) -> Fraction:
        x = as_rational(x)
        total = Fraction(P.evaluate(self.poly_part, x))
        for c, root, k in self.terms:
            total += c / (x - root) ** k
        return total

    def recombine(self) -> tuple[tuple, tuple]:
        """Numerator and denominator polynomials of the sum over a common denominator."""
        den: tuple = (Fraction(1),)
        roots: dict[Fraction, int] = {}
        for _, root, k in self.terms:
            roots[root] = max(roots.get(root, 0), k)
        for root, k in roots.items():
            den = P.mul(den, P.power((-root, 1), k))
        num = P.mul(self.poly_part, den)
        for c, root, k in self.terms:
            cof = P.divmod_poly(den, P.power((-root, 1), k))[0]
            num = P.add(num, P.scale(cof, c))
        return num, den


def _taylor_shift(p: Sequence, a) -> tuple:
    """Coefficients of p(a + t) in t."""
    out: tuple = ()
    for coef in reversed(P.trim(p)):
        out = P.add(P.mul(out, (a, 1)), (coef,))
    return out


def _series_div(a: Sequence, b: Sequence, n: int) -> list[Fraction]:
    a = [Fraction(x) for x in a] + [Fraction(0)] * n
    b = [Fraction(x) for x in b] + [Fraction(0)] * n
    out = []
    for i in range(n):
        c = (a[i] - sum(out[j] * b[i - j] for j in range(i))) / b[0]
        out.append(c)
    return out


class NonlinearFactorError(ValueError):
    pass


def partial_fractions(r: RationalFunction) -> PartialFractions:
    if r.is_zero:
        return PartialFractions((), ())
    fac = factor_denominator(r.q)
    if not fac.splits:
        raise NonlinearFactorError("nonlinear denominator factor")
    poly_part, rem = P.divmod_poly(r.p, r.q)
    terms = []
    for l, m, k in fac.linear_factors:
        root = Fraction(-m, l)
        cof = P.divmod_poly(r.q, P.power((-root, 1), k))[0]
        coeffs = _series_div(_taylor_shift(rem, root), _taylor_shift(cof, root), k)
        # coeffs[i] multiplies (x - root)^(i - k)
        for i, c in enumerate(coeffs):
            if c:
                terms.append((c, root, k - i))
    terms.sort(key=lambda t: (t[1], t[2]))
    return PartialFractions(tuple(Fraction(c) for c in poly_part), tuple(terms))


# -- cyclotomic coordinates ------------------------------------------------------


class Cyclotomic:
    """Q(zeta_M) with the power basis 1, zeta, ..., zeta^(phi(M)-1)."""

    def __init__(self, M: int):
        self.M = M
        self.phi_poly = P.cyclotomic(M)
        self.dim = len(self.phi_poly) - 1
        self._powers = []
        for j in range(M):
            mono = tuple([0] * j + [1])
            self._powers.append(P.divmod_poly(mono, self.phi_poly)[1] if j >= self.dim else mono)

    def zeta_power(self, j: int, scale=Fraction(1)) -> tuple:
        v = self._powers[j % self.M]
        out = [Fraction(0)] * self.dim
        for i, c in enumerate(v):
            out[i] = Fraction(c) * scale
        return tuple(out)

    @staticmethod
    def add(a: Sequence, b: Sequence) -> tuple:
        return tuple(x + y for x, y in zip(a, b))

    @staticmethod
    def is_zero(a: Sequence) -> bool:
        return all(x == 0 for x in a)


# -- radicals ---------------------------------------------------------------------


def _int_root(n: int, k: int) -> int | None:
    if n < 0:
        return None
    if n in (0, 1):
        return n
    r = round(n ** (1.0 / k)) if n.bit_length() < 1000 else int(math.exp(math.log(n) / k))
    for c in range(max(r - 2, 0), r + 3):
        if c**k == n:
            return c
    lo, hi = 0, 1 << (n.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**k < n:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo**k == n else None


def _rational_power_base(z: Fraction) -> tuple[Fraction, int]:
    """(z0, t) with z = z0**t and t maximal."""
    if z == 1:
        return Fraction(1), 1
    top = max(z.numerator.bit_length(), z.denominator.bit_length())
    for t in range(top, 1, -1):
        a, b = _int_root(z.numerator, t), _int_root(z.denominator, t)
        if a is not None and b is not None:
            return Fraction(a, b), t
    return z, 1


@dataclass(frozen=True)
class Radical:
    """rational * base**exponent with 0 <= exponent < 1 and base not a perfect power."""

    rational: Fraction
    base: Fraction = Fraction(1)
    exponent: Fraction = Fraction(0)

    @classmethod
    def power_of(cls, z: Fraction, e: Fraction) -> "Radical":
        """Canonical form of z**e for rational z > 0."""
        z0, t = _rational_power_base(z)
        E = Fraction(t) * e
        whole = math.floor(E)
        frac_part = E - whole
        if frac_part == 0:
            return cls(z0**whole)
        return cls(z0**whole, z0, frac_part)

    @property
    def is_rational(self) -> bool:
        return self.exponent == 0

    @property
    def surd(self) -> tuple:
        return (self.base, self.exponent) if self.exponent else (Fraction(1), Fraction(0))

    def interval(self):
        v = iv.mpf(self.rational.numerator) / self.rational.denominator
        if self.exponent:
            b = iv.mpf(self.base.numerator) / self.base.denominator
            v = v * iv.exp(iv.log(b) * self.exponent.numerator / self.exponent.denominator)
        return v

    def to_str(self) -> str:
        s = f"{self.rational}"
        if self.exponent:
            s += f"*({self.base})^({self.exponent})"
        return s


# -- closed forms ------------------------------------------------------------------


@dataclass(frozen=True)
class LogTerm:
    """Re[ multiplier * coefficient * log(1 - zeta_M^k * w) ], coefficient in Q(zeta_M)."""

    coefficient: tuple
    M: int
    k: int
    w: Radical
    multiplier: tuple = (Fraction(1), Fraction(0))  # real surd base**exponent

    @property
    def vanishes(self) -> bool:
        return Cyclotomic.is_zero(self.coefficient)


@dataclass(frozen=True)
class PolylogTerm:
    coefficient: Fraction
    order: int
    argument: Fraction


@dataclass(frozen=True)
class ClosedForm:
    rational_part: Fraction
    log_terms: tuple
    polylog_terms: tuple
    numeric_value: BoundedReal
    z: Fraction = Fraction(1, 2)
    distinct_roots: bool = True
    log_value: BoundedReal | None = field(default=None, compare=False)

    @property
    def logs_vanish(self) -> bool:
        return all(t.vanishes for t in self.log_terms)


class UnsupportedRootError(ValueError):
    pass


def _poly_series_sum(poly: Sequence, z: Fraction, start: int) -> Fraction:
    """sum_{n>=start} poly(n) z^n in closed form via the binomial basis."""
    total = Fraction(0)
    for j, a in enumerate(P.to_binomial_basis(poly)):
        if a:
            total += a * z**j / (1 - z) ** (j + 1)
    for n in range(0, start):
        total -= Fraction(P.evaluate(poly, n)) * z**n
    return total


def _simple_root_terms(c: Fraction, root: Fraction, z: Fraction, start: int, field_: Cyclotomic):
    """sum_{n>=start} c z^n / (n - root) as (rational, [(key, coefficient)]).

    For 0 < z < 1 and z = 1 the logs are log(1 - zeta_M^k w) with w = z^(1/v);
    at z = 1 the divergent k = 0 logs are replaced by their finite parts,
    which relies on the residues summing to zero. At z = -1, w = 1 and the
    unit-circle arguments are odd powers of zeta_2v.
    """
    u, v = root.numerator, root.denominator
    rational = Fraction(0)
    n1 = max(start, math.floor(root) + 1)
    for n in range(start, n1):
        rational += c * z**n / (n - root)
    # sum_{n>=n1} z^n/(n - r) = v w^u * sum_{m >= m1, m = -u mod v} w^m / m, w = z^(1/v)
    # and the full filtered sum is -(1/v) sum_k zeta_v^(-k a) log(1 - zeta_v^k w)
    a = (-u) % v
    pieces = []
    if z == -1:
        # z^n = zeta_2v^(m + u); filter over zeta_v^k * zeta_2v = zeta_2v^(2k + 1)
        step = field_.M // (2 * v)
        one = Radical(Fraction(1))
        for k in range(v):
            coef = field_.zeta_power((u - 2 * k * a) * step, -c)
            pieces.append((((2 * k + 1) * step % field_.M, one, one.surd), coef))
    else:
        w = Radical.power_of(z, Fraction(1, v))
        wu = Radical.power_of(z, Fraction(u, v))
        step = field_.M // v
        for k in range(v):
            coef = field_.zeta_power(-k * a * step, -c * wu.rational)
            if z == 1 and k == 0:
                # -c log(1 - z^(1/v)) -> -c log(1 - z) + c log v; the log(1 - z)
                # parts cancel across roots, c log v = -c log(1 - (1 - 1/v))
                rest = Radical(1 - Fraction(1, v))
                pieces.append(((0, rest, rest.surd), coef))
                continue
            pieces.append((((k * step) % field_.M, w, wu.surd), coef))
    # terms with 1 <= m < m1 of the filtered sum were not in the original series
    m1 = v * n1 - u
    m = a if a > 0 else v
    while m < m1:
        n = (m + u) // v
        rational -= c * z**n / (n - root)
        m += v
    return rational, pieces


def polylog(order: int, z, precision_bits: int) -> BoundedReal:
    """Li_k(z) = sum_{n>=1} z^n / n^k for rational |z| < 1."""
    z = as_rational(z)
    if order < 1:
        raise ValueError("order must be >= 1")
    if abs(z) >= 1:
        raise ValueError("outside convergence domain")
    if z == 0:
        return BoundedReal.exact(0)
    az = abs(z)

    def compute(work):
        scale = 1 << work
        acc = 0
        n = 1
        pw = z
        while True:
            acc += (pw.numerator << work) // (pw.denominator * n**order)
            tail = az ** (n + 1) / (Fraction(n + 1) ** order * (1 - az))
            if tail * scale < 1:
                break
            n += 1
            pw *= z
        return BoundedReal(Fraction(2 * acc + n, 2 * scale), Fraction(n, 2 * scale) + tail).round_outward(work)

    return _refine(compute, precision_bits)


def _polylog_any(order: int, z: Fraction, precision_bits: int) -> BoundedReal:
    """Li_k(z), with the boundary values Li_k(1) = zeta(k) and Li_k(-1) summed directly."""
    if abs(z) == 1:
        return eval_boundary(RationalFunction((1,), tuple([0] * order + [1])), int(z), 1, precision_bits)
    return polylog(order, z, precision_bits)


def _log_terms_value(terms: Sequence[LogTerm], precision_bits: int) -> BoundedReal:
    live = [t for t in terms if not t.vanishes]
    if not live:
        return BoundedReal.exact(0)
    total_re = iv.mpf(0)
    total_im = iv.mpf(0)
    with _iv_precision(precision_bits + 2 * GUARD_BITS):
        for t in live:
            two_pi = 2 * iv.pi
            beta_re = iv.mpf(0)
            beta_im = iv.mpf(0)
            for j, c in enumerate(t.coefficient):
                if c:
                    cj = iv.mpf(c.numerator) / c.denominator
                    ang = two_pi * j / t.M
                    beta_re += cj * iv.cos(ang)
                    beta_im += cj * iv.sin(ang)
            ang = two_pi * t.k / t.M
            w = t.w.interval()
            re = 1 - w * iv.cos(ang) if t.k else 1 - w
            im = -w * iv.sin(ang) if t.k else iv.mpf(0)
            mod_log = iv.log(re * re + im * im) / 2
            arg = iv.atan2(im, re) if t.k else iv.mpf(0)
            base, e = t.multiplier
            mult = iv.mpf(1)
            if e:
                mult = iv.exp(iv.log(iv.mpf(base.numerator) / base.denominator) * e.numerator / e.denominator)
            total_re += mult * (beta_re * mod_log - beta_im * arg)
            total_im += mult * (beta_re * arg + beta_im * mod_log)
        if not (total_im.a <= 0 <= total_im.b):
            raise ArithmeticError("log combination has a nonzero imaginary part")
        return _iv_to_bounded(total_re)


def closed_form(r: RationalFunction, z, start: int = 1, precision_bits: int = 128) -> ClosedForm:
    """Exact closed form of sum_{n>=start} R(n) z^n for rational 0 < z < 1,
    or at the boundary z = +1, -1 when deg q >= deg p + 2."""
    z = as_rational(z)
    boundary = abs(z) == 1
    if not (0 < z < 1 or boundary):
        raise ValueError("closed forms are implemented for 0 < z < 1 and z = +1, -1")
    if boundary and not r.is_zero and r.deg_q < r.deg_p + 2:
        raise ValueError("boundary evaluation not absolutely convergent")
    pf = partial_fractions(r)
    rational = _poly_series_sum(pf.poly_part, z, start) if pf.poly_part else Fraction(0)
    simple = [(c, root) for c, root, k in pf.terms if k == 1]
    repeated = [(c, root, k) for c, root, k in pf.terms if k > 1]
    roots_mult: dict[Fraction, int] = {}
    for _, root, k in pf.terms:
        roots_mult[root] = max(roots_mult.get(root, 0), k)
    distinct = all(k == 1 for k in roots_mult.values())
    M = lcm_int([root.denominator for _, root in simple]) if simple else 1
    if z == -1:
        M = 2 * M  # every 2v divides 2 lcm(v)
    field_ = Cyclotomic(M)
    groups: dict[tuple, tuple] = {}
    for c, root in simple:
        rat, pieces = _simple_root_terms(c, root, z, start, field_)
        rational += rat
        for key, coef in pieces:
            groups[key] = Cyclotomic.add(groups[key], coef) if key in groups else coef
    polylogs = []
    for c, root, k in repeated:
        if root.denominator != 1:
            raise UnsupportedRootError("unsupported root pattern: repeated non-integer root")
        rr = int(root)
        n1 = max(start, rr + 1)
        for n in range(start, n1):
            rational += c * z**n / Fraction(n - rr) ** k
        # sum_{n>=n1} z^n/(n-r)^k = z^r (Li_k(z) - sum_{m=1}^{n1-r-1} z^m/m^k)
        for mm in range(1, n1 - rr):
            rational -= c * z**rr * z**mm / Fraction(mm) ** k
        polylogs.append(PolylogTerm(c * z**rr, k, z))
    log_terms = tuple(
        LogTerm(coef, M, key[0], key[1], key[2]) for key, coef in sorted(groups.items(), key=lambda kv: (kv[0][0], kv[0][1].rational))
    )

    def compute(work):
        v = _log_terms_value(log_terms, work)
        for t in polylogs:
            v = v + t.coefficient * _polylog_any(t.order, t.argument, work + abs(t.coefficient).numerator.bit_length())
        return (v + rational).round_outward(work)

    numeric = _refine(compute, precision_bits)
    logs = _refine(lambda work: _log_terms_value(log_terms, work).round_outward(work), precision_bits)
    return ClosedForm(rational, log_terms, tuple(polylogs), numeric, z, distinct, logs)


def closed_form_eval(spec: BbpSpec, precision_bits: int = 128) -> ClosedForm:
    validate_spec(spec)
    return closed_form(spec.r, Fraction(1, spec.base), spec.start, precision_bits)


@dataclass(frozen=True)
class ProbeResult:
    kind: str  # rational | transcendental_numeric | undecided
    value: Fraction | None = None
    log_magnitude: BoundedReal | None = None
    note: str = ""


def rationality_probe(spec: BbpSpec, precision_bits: int = 128) -> ProbeResult:
    """Exact rational verdict when every log coefficient cancels; otherwise a
    numeric size test on the surviving log combination (not a proof)."""
    cf = closed_form_eval(spec, precision_bits)
    if not cf.distinct_roots:
        raise ValueError("Theorem applies to distinct roots only")
    if cf.logs_vanish:
        return ProbeResult("rational", cf.rational_part, BoundedReal.exact(0), "exact cancellation of log coefficients")
    mag = abs(cf.log_value)
    threshold = Fraction(1, 1 << (precision_bits // 2))
    if mag.lo > threshold:
        return ProbeResult("transcendental_numeric", None, cf.log_value, "nonzero log combination (numeric evidence only)")
    return ProbeResult("undecided", None, cf.log_value, "log combination too small to separate from zero")

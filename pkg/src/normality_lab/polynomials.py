"""Dense univariate polynomials with exact coefficients.

A polynomial is a tuple of coefficients in ascending degree; the zero
polynomial is ``()``. Coefficients are ints or Fractions.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Sequence

Poly = tuple


def trim(coeffs: Sequence) -> Poly:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def degree(p: Sequence) -> int:
    """Degree, with -1 for the zero polynomial."""
    return len(trim(p)) - 1


def leading(p: Sequence):
    p = trim(p)
    return p[-1] if p else 0


def evaluate(p: Sequence, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def add(a: Sequence, b: Sequence) -> Poly:
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def neg(a: Sequence) -> Poly:
    return tuple(-c for c in a)


def sub(a: Sequence, b: Sequence) -> Poly:
    return add(a, neg(b))


def scale(a: Sequence, k) -> Poly:
    return trim([c * k for c in a])


def mul(a: Sequence, b: Sequence) -> Poly:
    a, b = trim(a), trim(b)
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return trim(out)


def power(a: Sequence, n: int) -> Poly:
    out: Poly = (1,)
    for _ in range(n):
        out = mul(out, a)
    return out


def derivative(a: Sequence) -> Poly:
    return trim([i * a[i] for i in range(1, len(a))])


def divmod_poly(a: Sequence, b: Sequence) -> tuple[Poly, Poly]:
    """Quotient and remainder over the rationals."""
    a = [Fraction(c) for c in trim(a)]
    b = trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db = len(b) - 1
    lb = Fraction(b[-1])
    if len(a) - 1 < db:
        return (), trim(a)
    quot = [Fraction(0)] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        coef = a[k + db] / lb
        quot[k] = coef
        if coef:
            for j, bj in enumerate(b):
                a[k + j] -= coef * bj
    return trim(quot), trim(a[:db])


def monic(a: Sequence) -> Poly:
    a = trim(a)
    if not a:
        return ()
    lc = Fraction(a[-1])
    return tuple(Fraction(c) / lc for c in a)


def gcd(a: Sequence, b: Sequence) -> Poly:
    """Monic gcd over the rationals (``()`` if both are zero)."""
    a, b = trim(a), trim(b)
    while b:
        a, b = b, divmod_poly(a, b)[1]
    return monic(a)


def content(a: Sequence) -> Fraction:
    """Positive rational c with a/c having coprime integer coefficients."""
    a = [Fraction(c) for c in trim(a)]
    if not a:
        return Fraction(0)
    den = reduce(lambda x, y: x * y // math.gcd(x, y), (c.denominator for c in a), 1)
    num = reduce(math.gcd, (abs(c.numerator * (den // c.denominator)) for c in a), 0)
    return Fraction(num, den)


def primitive(a: Sequence) -> tuple[Fraction, Poly]:
    """Split ``a`` into content times a primitive integer polynomial with positive lead."""
    a = trim(a)
    if not a:
        return Fraction(0), ()
    c = content(a)
    if Fraction(a[-1]) < 0:
        c = -c
    return c, tuple(int(Fraction(x) / c) for x in a)


def divisors(n: int) -> list[int]:
    n = abs(n)
    if n == 0:
        raise ValueError("0 has infinitely many divisors")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(p: Sequence) -> list[Fraction]:
    """Distinct rational roots of a nonzero polynomial, in increasing order.

    Candidates a/c come from the rational root theorem applied to the
    primitive integer form: a divides the lowest nonzero coefficient and
    c divides the leading one.
    """
    _, q = primitive(p)
    if not q:
        raise ValueError("zero polynomial has every root")
    roots = set()
    shift = 0
    while q[shift] == 0:
        shift += 1
    if shift:
        roots.add(Fraction(0))
    q = q[shift:]
    if len(q) > 1:
        for a in divisors(q[0]):
            for c in divisors(q[-1]):
                for cand in (Fraction(a, c), Fraction(-a, c)):
                    if evaluate(q, cand) == 0:
                        roots.add(cand)
    return sorted(roots)


def linear_divide(q: Sequence, l: int, m: int) -> Poly:
    """Exact quotient of q by (l*x + m); raises if it does not divide."""
    quot, rem = divmod_poly(q, (m, l))
    if rem:
        raise ArithmeticError("linear factor does not divide")
    if all(Fraction(c).denominator == 1 for c in quot):
        return tuple(int(c) for c in quot)
    return quot


def to_binomial_basis(p: Sequence) -> list[Fraction]:
    """Coefficients a'_j with p(x) = sum_j a'_j * C(x, j) (forward differences at 0)."""
    p = trim(p)
    if not p:
        return []
    values = [Fraction(evaluate(p, k)) for k in range(len(p))]
    out = []
    while values:
        out.append(values[0])
        values = [values[i + 1] - values[i] for i in range(len(values) - 1)]
    return out


def binomial_poly(j: int) -> Poly:
    """C(x, j) as a polynomial with rational coefficients."""
    out: Poly = (Fraction(1),)
    for i in range(j):
        out = mul(out, (Fraction(-i), Fraction(1)))
    return scale(out, Fraction(1, math.factorial(j)))


def cyclotomic(n: int) -> Poly:
    """Integer coefficients of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("n must be >= 1")
    num = [-1] + [0] * (n - 1) + [1]
    out = tuple(num)
    for d in divisors(n):
        if d < n:
            out = exact_divide(out, cyclotomic(d))
    return out


def exact_divide(a: Sequence, b: Sequence) -> Poly:
    quot, rem = divmod_poly(a, b)
    if rem:
        raise ArithmeticError("inexact polynomial division")
    return tuple(int(c) for c in quot)


def to_string(p: Sequence, var: str = "x") -> str:
    p = trim(p)
    if not p:
        return "0"
    terms = []
    for i in range(len(p) - 1, -1, -1):
        c = p[i]
        if c == 0:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if mono and c == 1:
            s = mono
        elif mono and c == -1:
            s = "-" + mono
        else:
            s = f"{c}*{mono}" if mono else f"{c}"
        terms.append(s)
    return " + ".join(terms).replace("+ -", "- ")

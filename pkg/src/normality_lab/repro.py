"""Deterministic re-run of the worked constants and identities, one row per check."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bbp import PRESETS, BOUNDARY_PRESETS, eval_boundary, eval_theta, extract_digits, make_spec, theta_digits
from .gfunction import classify_g, closed_form_eval, lcm_growth_integers, polylog, rationality_probe
from .numerics import const_pi, exp_real
from .perturbed import dichotomy_probe, perturbed_orbit, verify_correlation
from .radix import digits_of_real
from .stats import block_census, star_discrepancy


@dataclass(frozen=True)
class CheckResult:
    check: str
    passed: bool
    detail: str


def _close(a, b, bits):
    tol = Fraction(1, 1 << bits)
    return a.intersects(b) and abs(a.mid - b.mid) <= tol


def _spigot():
    spec = PRESETS["log2-base2"]
    oracle = digits_of_real(eval_theta(spec, 1100), 2, 1010)
    bad = 0
    for d in (0, 1000):
        ex = extract_digits(spec, d, 10)
        for i, (digit, ok) in enumerate(zip(ex.digits, ex.flags)):
            if ok and digit != oracle.digits[d + i]:
                bad += 1
    return bad == 0, f"mismatches={bad}"


def _correlation():
    out = []
    for name in ("log2-base2", "log2-base9", "pi-base16"):
        rep = verify_correlation(PRESETS[name], 500, 64)
        out.append((name, rep.verdict))
    return all(v for _, v in out), ", ".join(f"{n}={'pass' if v else 'fail'}" for n, v in out)


def _rational_dichotomy():
    spec = PRESETS["one-base2"]
    theta = eval_theta(spec, 100)
    probe = rationality_probe(spec)
    dich = dichotomy_probe(spec, 2000)
    ok = (
        theta.contains(1)
        and probe.kind == "rational"
        and probe.value == 1
        and dich.classification == "finite-limit-points"
        and len(dich.clusters) == 1
        and dich.diameters_shrinking
    )
    return ok, f"probe={probe.kind}({probe.value}) clusters={len(dich.clusters)}"


def _g_series():
    split = [(0, 1), (0, 1, 1), (0, 1, 6, 8)]
    nonsplit = [(1, 0, 1), (0, 1, 0, 1)]
    from .bbp import RationalFunction

    verdicts = [classify_g(RationalFunction((1,), q)).is_g_series for q in split]
    verdicts += [not classify_g(RationalFunction((1,), q)).is_g_series for q in nonsplit]
    return all(verdicts), f"verdicts={verdicts}"


def _lcm():
    g = lcm_growth_integers(1000)
    ratio = g.log / 1000
    return Fraction(85, 100) <= ratio.lo and ratio.hi <= Fraction(115, 100), f"log lcm(1..1000)/1000={float(ratio.mid):.6f}"


def _closed_forms():
    a = closed_form_eval(PRESETS["log2-base2"], 128)
    ok1 = _close(a.numeric_value, eval_theta(PRESETS["log2-base2"], 128), 100)
    b = closed_form_eval(make_spec(2, [1], [0, 0, 1]), 128)
    ok2 = _close(b.numeric_value, polylog(2, Fraction(1, 2), 128), 100)
    ok3 = _close(eval_theta(PRESETS["log2-base2"], 128), eval_theta(PRESETS["log2-base9"], 128), 100)
    return ok1 and ok2 and ok3, f"log2={ok1} li2={ok2} two-base={ok3}"


def _lehmer():
    pi = const_pi(64)
    b = BOUNDARY_PRESETS["lehmer"]
    v = eval_boundary(b.r, b.z, b.start, 64)
    return _close(v, pi / 3, 40), f"value={float(v.mid):.12f}"


def _sinh_target(bits):
    pi = const_pi(bits + 16)
    e_pi = exp_real(pi, bits + 16)
    return 2 * pi / (e_pi - e_pi.reciprocal())


def _alternating_as_printed():
    b = BOUNDARY_PRESETS["alternating-n2p1"]
    v = eval_boundary(b.r, b.z, b.start, 64)
    target = _sinh_target(64) - 1
    return _close(v, target, 40), f"sum={float(v.mid):.9f} printed-rhs={float(target.mid):.9f}"


def _alternating_halved():
    b = BOUNDARY_PRESETS["alternating-n2p1"]
    v = eval_boundary(b.r, b.z, b.start, 64)
    target = (_sinh_target(64) - 1) / 2
    return _close(v, target, 40), f"sum={float(v.mid):.9f} half-rhs={float(target.mid):.9f}"


def _equidistribution():
    orbit = perturbed_orbit(PRESETS["log2-base2"], 0, 10_000)
    disc = star_discrepancy(orbit.remainders)
    census = block_census(theta_digits(PRESETS["log2-base2"], 4096).digits, 2, 4)
    return disc < Fraction(1, 20) and census.all_blocks_present, f"D*={float(disc):.5f} blocks={len(census.counts)}"


CHECKS = [
    ("spigot log2 positions 0 and 1000", _spigot),
    ("orbit correlation, three presets, 500 steps", _correlation),
    ("rational theta=1: value, probe, single cluster", _rational_dichotomy),
    ("G-series verdicts", _g_series),
    ("lcm(1..1000) growth", _lcm),
    ("closed forms and two-base log 2", _closed_forms),
    ("Lehmer sum = pi/3", _lehmer),
    ("alternating sum = 2pi/(e^pi - e^-pi) - 1 (as printed)", _alternating_as_printed),
    ("alternating sum = half of printed right side", _alternating_halved),
    ("discrepancy and 4-block census of log 2", _equidistribution),
]


def run_all() -> list[CheckResult]:
    results = []
    for name, fn in CHECKS:
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is reported as a failed row
            ok, detail = False, f"error: {exc}"
        results.append(CheckResult(name, bool(ok), detail))
    return results


def format_table(results) -> str:
    width = max(len(r.check) for r in results)
    lines = [f"{'check':<{width}}  result  detail"]
    for r in results:
        lines.append(f"{r.check:<{width}}  {'PASS' if r.passed else 'FAIL':<6}  {r.detail}")
    return "\n".join(lines) + "\n"

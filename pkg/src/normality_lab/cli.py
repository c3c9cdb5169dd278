"""Command-line entry point: ``normality-lab <subcommand> ...``.

Exit codes: 0 success, 1 domain error (invalid spec, failed precondition,
failed repro check), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import bbp, gfunction, perturbed, radix, repro, stats
from .bbp import BOUNDARY_PRESETS, PRESETS, BbpSpec, RationalFunction, SpecError
from .serialize import dumps, rows_to_csv

ENV_PRECISION = "NORMALITY_LAB_PRECISION"


@dataclass(frozen=True)
class RunConfig:
    precision_bits: int = 128
    steps: int = 1000
    output_format: str = "json"
    seed: int = 0
    preset: str | None = None

    def __post_init__(self):
        if self.precision_bits < 8:
            raise ValueError("precision_bits must be >= 8")
        if self.steps < 1:
            raise ValueError("steps must be >= 1")


class UsageError(Exception):
    pass


def _default_precision() -> int:
    raw = os.environ.get(ENV_PRECISION)
    if raw is None:
        return 128
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{ENV_PRECISION} must be an integer, got {raw!r}")


def _add_common(p: argparse.ArgumentParser, default_precision: int) -> None:
    p.add_argument("--precision-bits", type=int, default=default_precision)
    p.add_argument("--format", dest="output_format", choices=["json", "csv"], default="json")
    p.add_argument("--output", help="write the payload to this file instead of stdout")


def _add_spec(p: argparse.ArgumentParser) -> None:
    p.add_argument("--preset", help="built-in spec name (see `presets`)")
    p.add_argument("--spec-file", help='JSON file {"base": b, "p": [...], "q": [...], "start": 0|1}')
    p.add_argument("--base", type=int)
    p.add_argument("--p", type=int, nargs="*", help="numerator coefficients, ascending degree")
    p.add_argument("--q", type=int, nargs="*", help="denominator coefficients, ascending degree")
    p.add_argument("--start", type=int, choices=[0, 1], default=None)


def _spec_from_args(args, need_base: bool = True) -> BbpSpec:
    if args.preset:
        if args.preset not in PRESETS:
            raise UsageError(f"unknown preset {args.preset!r}")
        return PRESETS[args.preset]
    if args.spec_file:
        try:
            with open(args.spec_file) as fh:
                data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SpecError([f"malformed spec JSON: {exc}"])
        return bbp.validate_spec(BbpSpec.from_dict(data))
    if args.q is None:
        raise UsageError("give --preset, --spec-file, or --p/--q")
    base = args.base
    if base is None:
        if need_base:
            raise UsageError("--base is required with inline coefficients")
        base = 2
    start = args.start
    if start is None:
        start = 1 if args.q and args.q[0] == 0 else 0
    spec = BbpSpec(base, RationalFunction(tuple(args.p or ()), tuple(args.q)), start)
    return bbp.validate_spec(spec)


def _rf_from_args(args) -> tuple[RationalFunction, int]:
    spec = _spec_from_args(args, need_base=False)
    return spec.r, spec.start


def build_parser(default_precision: int = 128) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="normality-lab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def cmd(name, help_, spec=True):
        p = sub.add_parser(name, help=help_)
        _add_common(p, default_precision)
        if spec:
            _add_spec(p)
        return p

    cmd("validate", "check a spec")
    cmd("eval", "enclose theta")
    p = cmd("eval-boundary", "sum R(n) z^n at z = +1 or -1", spec=False)
    p.add_argument("--preset", choices=sorted(BOUNDARY_PRESETS))
    p.add_argument("--p", type=int, nargs="*")
    p.add_argument("--q", type=int, nargs="*")
    p.add_argument("--z", type=int, choices=[1, -1], default=1)
    p.add_argument("--start", type=int, choices=[0, 1], default=1)
    p = cmd("digits", "spigot digit extraction")
    p.add_argument("--position", type=int, default=0)
    p.add_argument("--count", type=int, default=8)
    p.add_argument("--guard-bits", type=int, default=64)
    p = cmd("orbit", "b-transformation orbit of a rational point", spec=False)
    p.add_argument("--x0", required=True, help='rational in [0,1), e.g. "1/7"')
    p.add_argument("--base", type=int, required=True)
    p.add_argument("--steps", type=int, default=20)
    p.add_argument("--period", action="store_true", help="report preperiod and period instead")
    p = cmd("perturbed-orbit", "exact perturbed orbit")
    p.add_argument("--y0", default="0")
    p.add_argument("--steps", type=int, default=20)
    p = cmd("correlate", "check x_n = y_n* + t_n (mod 1)")
    p.add_argument("--steps", type=int, default=200)
    p = cmd("dichotomy", "cluster the late perturbed remainders")
    p.add_argument("--steps", type=int, default=1000)
    p.add_argument("--cluster-radius", default="1/64")
    p = cmd("classify", "G-series classification with lcm growth")
    p.add_argument("--n-max", type=int, default=500)
    cmd("pfd", "partial fractions of R")
    cmd("annihilator", "annihilating differential operator")
    p = cmd("closed-form", "closed form of theta (or of sum R(n) z^n with --z)")
    p.add_argument("--z", help="evaluate at this rational z instead of 1/base, e.g. 1 or -1")
    cmd("probe-rationality", "rational / transcendental_numeric / undecided")
    p = cmd("lcm-growth", "lcm(1..m)", spec=False)
    p.add_argument("--m", type=int, required=True)
    p = cmd("stats", "discrepancy, block census and stability of a perturbed orbit")
    p.add_argument("--steps", type=int, default=1000)
    p.add_argument("--block-length", type=int, default=2)
    p.add_argument("--synthetic", action="store_true", help="use seeded uniform samples instead of a spec")
    p.add_argument("--seed", type=int, default=0)
    p = cmd("joint", "two-base report for one constant", spec=False)
    p.add_argument("--preset-a", required=True)
    p.add_argument("--preset-b", required=True)
    p.add_argument("--steps", type=int, default=1000)
    p.add_argument("--block-length", type=int, default=2)
    cmd("presets", "list built-in specs", spec=False)
    p = sub.add_parser("repro", help="re-run the worked constants; prints a pass/fail table")
    p.add_argument("--format", dest="output_format", choices=["table", "json", "csv"], default="table")
    p.add_argument("--output")
    return parser


def _no_csv(args):
    if args.output_format == "csv":
        raise UsageError(f"csv output is not available for `{args.command}`")


def run(args) -> tuple[str, int]:
    """Execute a parsed command; returns (payload, exit code)."""
    c = args.command
    bits = getattr(args, "precision_bits", 128)
    if c == "presets":
        _no_csv(args)
        payload = {
            "series": {k: v.to_dict() for k, v in PRESETS.items()},
            "boundary": {k: {"p": list(v.r.p), "q": list(v.r.q), "z": v.z, "start": v.start} for k, v in BOUNDARY_PRESETS.items()},
        }
        return dumps(payload), 0
    if c == "repro":
        results = repro.run_all()
        code = 0 if all(r.passed for r in results) else 1
        if args.output_format == "json":
            return dumps(results), code
        if args.output_format == "csv":
            return rows_to_csv(["check", "passed", "detail"], [(r.check, r.passed, r.detail) for r in results]), code
        return repro.format_table(results), code
    if c == "lcm-growth":
        _no_csv(args)
        return dumps(gfunction.lcm_growth_integers(args.m, bits)), 0
    if c == "orbit":
        base = args.base
        x0 = Fraction(args.x0)
        if args.period:
            _no_csv(args)
            return dumps(radix.detect_period(x0, base)), 0
        orbit = radix.b_orbit(x0, base, args.steps)
        if args.output_format == "csv":
            rows = [(n, orbit.remainder(n), orbit.digit(n)) for n in range(1, args.steps + 1)]
            return rows_to_csv(["n", "remainder", "digit"], rows), 0
        return dumps(orbit), 0
    if c == "eval-boundary":
        _no_csv(args)
        if args.preset:
            b = BOUNDARY_PRESETS[args.preset]
            r, z, start = b.r, b.z, b.start
        elif args.q is not None:
            r, z, start = RationalFunction(tuple(args.p or ()), tuple(args.q)), args.z, args.start
        else:
            raise UsageError("give --preset or --p/--q")
        return dumps(bbp.eval_boundary(r, z, start, bits)), 0
    if c == "joint":
        _no_csv(args)
        for name in (args.preset_a, args.preset_b):
            if name not in PRESETS:
                raise UsageError(f"unknown preset {name!r}")
        rep = stats.joint_base_report(PRESETS[args.preset_a], PRESETS[args.preset_b], args.steps, bits, args.block_length)
        return dumps(rep), 0
    if c == "stats" and args.synthetic:
        rng = np.random.default_rng(args.seed)
        samples = [Fraction(int(v), 1 << 53) for v in rng.integers(0, 1 << 53, size=args.steps)]
        digits = [int(v) for v in rng.integers(0, 2, size=args.steps)]
        return _stats_payload(args, samples, digits, 2)

    if c in ("classify", "pfd", "annihilator"):
        _no_csv(args) if c != "classify" else None
        r, start = _rf_from_args(args)
        if c == "classify":
            rep = gfunction.classify_g(BbpSpec(2, r, start), args.n_max)
            if args.output_format == "csv":
                return rows_to_csv(["n", "log_g_n"], rep.lcm_profile), 0
            return dumps(rep), 0
        if c == "pfd":
            return dumps(gfunction.partial_fractions(r)), 0
        return dumps(gfunction.build_annihilator(r, start)), 0

    spec = _spec_from_args(args, need_base=not (c == "closed-form" and args.z is not None))
    if c == "validate":
        _no_csv(args)
        return dumps({"valid": True, "spec": spec, "vanishing": spec.vanishing}), 0
    if c == "eval":
        _no_csv(args)
        return dumps(bbp.eval_theta(spec, bits)), 0
    if c == "digits":
        _no_csv(args)
        ex = bbp.extract_digits(spec, args.position, args.count, args.guard_bits)
        payload = {"position": ex.position, "digits": ex.as_string, "values": list(ex.digits),
                   "confident": list(ex.flags), "error_radius": ex.error_radius, "peak_bits": ex.peak_bits}
        return dumps(payload), 0
    if c == "perturbed-orbit":
        orbit = perturbed.perturbed_orbit(spec, Fraction(args.y0), args.steps)
        if args.output_format == "csv":
            rows = [(n, orbit.remainder(n), orbit.digit(n), orbit.perturbations[n - 1]) for n in range(1, args.steps + 1)]
            return rows_to_csv(["n", "remainder", "digit", "epsilon"], rows), 0
        return dumps(orbit), 0
    if c == "correlate":
        _no_csv(args)
        rep = perturbed.verify_correlation(spec, args.steps, min(bits, 256))
        return dumps(rep), 0 if rep.verdict else 1
    if c == "dichotomy":
        _no_csv(args)
        return dumps(perturbed.dichotomy_probe(spec, args.steps, Fraction(args.cluster_radius))), 0
    if c == "closed-form":
        _no_csv(args)
        if args.z is not None:
            return dumps(gfunction.closed_form(spec.r, Fraction(args.z), spec.start, bits)), 0
        return dumps(gfunction.closed_form_eval(spec, bits)), 0
    if c == "probe-rationality":
        _no_csv(args)
        return dumps(gfunction.rationality_probe(spec, bits)), 0
    if c == "stats":
        orbit = perturbed.perturbed_orbit(spec, 0, args.steps)
        digits = bbp.theta_digits(spec, args.steps).digits
        return _stats_payload(args, orbit.remainders, digits, spec.base)
    raise UsageError(f"unknown command {c!r}")


def _stats_payload(args, samples, digits, base):
    stab = stats.measure_stability(samples)
    if args.output_format == "csv":
        return rows_to_csv(["N", "kolmogorov_distance"], stab.distances), 0
    payload = {
        "discrepancy": stats.discrepancy_report(samples),
        "census": stats.block_census(digits, base, args.block_length),
        "stability": stab,
    }
    return dumps(payload), 0


def main(argv=None) -> int:
    try:
        parser = build_parser(_default_precision())
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        payload, code = run(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SpecError as exc:
        sys.stdout.write(dumps({"valid": False, "errors": exc.errors}))
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
    return code


if __name__ == "__main__":
    sys.exit(main())

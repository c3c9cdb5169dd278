"""Exact dynamics of radix and perturbed radix expansions, BBP digit
extraction, G-series classification and closed forms of BBP sums."""

from .bbp import (
    BOUNDARY_PRESETS,
    PRESETS,
    BbpSpec,
    DigitExtraction,
    RationalFunction,
    SpecError,
    epsilon,
    eval_boundary,
    eval_theta,
    extract_digits,
    make_spec,
    validate_spec,
)
from .gfunction import (
    build_annihilator,
    classify_g,
    closed_form_eval,
    factor_denominator,
    lcm_growth_integers,
    partial_fractions,
    polylog,
    rationality_probe,
)
from .numerics import BoundedReal, const_pi, exp_real, lcm_int, mod_pow
from .perturbed import dichotomy_probe, perturbed_orbit, tail, verify_correlation
from .radix import b_orbit, detect_period, digits_of_real
from .stats import (
    block_census,
    cluster_limit_points,
    joint_base_report,
    measure_stability,
    star_discrepancy,
)

__version__ = "0.1.0"

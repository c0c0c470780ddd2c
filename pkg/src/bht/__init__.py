"""Finite-n bounds on the optimal Type II error of binary hypothesis tests
under vanishing Type I error budgets, with exact and simulated oracles."""

from .bounds import (
    BoundsResult,
    ExponentTriple,
    bounds_at,
    bounds_at_abstract,
    bounds_for_epsilon,
    delta_n,
    exponent_triple,
    gap,
    inverse_normal_cdf,
    strassen_exponent,
)
from .css import CssQuery, CssResult, css_sweep, empirical_css, predicted_css
from .distributions import (
    DiscreteDistribution,
    HypothesisPair,
    make_pair,
    nakagawa_exponent,
    pair_from_masses,
    solve_tilt_rate,
    synthesize_pair,
    tilted,
    validate_distribution,
)
from .exact_np import NPResult, beta_bruteforce, beta_exact, enumerate_levels
from .kernels import BACKEND
from .logvalue import LogValue
from .montecarlo import McConfig, McEstimate, concentration_check, estimate_beta, sample_llr_sums
from .schedules import EpsilonSchedule, epsilon_at, is_subexponential
from .settings import DEFAULT_SETTINGS, Settings

__version__ = "0.1.0"

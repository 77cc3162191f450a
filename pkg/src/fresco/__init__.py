"""Exact Bernstein divisors for frescos of (n+2)-monomial polynomials."""

__version__ = "0.1.0"

from .abops import (
    ABElement,
    FactorSequence,
    HomogeneousOperator,
    MellinSymbol,
    bernstein_from_operator,
    expand_factors,
    left_mul_linear,
    mellin_symbol,
    multiply,
    roots_from_factors,
)
from .abmodule import (
    ABModulePresentation,
    BTruncSeries,
    ModuleElement,
    apply_a,
    apply_b,
    bernstein_simple_pole,
    commutation_check,
    is_simple_pole,
    parse_presentation,
)
from .core import (
    PATH_STRATEGIES,
    AnnihilatorResult,
    MonomialPoly,
    MonomialSetup,
    StepContext,
    analyze,
    annihilator,
    build_operator,
    pole_report,
    step,
)
from .polyparse import parse_form, parse_poly, render
from .qexact import QMatrix, QPoly, invert, minimal_polynomial, rank, solve_linear

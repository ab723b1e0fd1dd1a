"""Exact loop expansion of the unwheeled Kontsevich integral of torus knots.

Computes the loop degree <= 3 part for the torus knot ``K(p, q)`` as explicit
series and as rational colorings, checks the identities relating them, lifts
the rational forms along cyclic branched coverings and evaluates low-degree
LMO coefficients of Brieskorn spheres.
"""

from .cover import CoverParams, lift_edge, lift_part, lmo_theta2, lmo_theta3
from .diagrams import (
    BracketTerm,
    ChainPart,
    ClosedPart,
    DumbbellPart,
    LoopGradedInvariant,
    RationalColoring,
    WheelPart,
    canonicalize,
    loop_degree,
)
from .errors import (
    DivisionError,
    LiftDomainError,
    ParameterError,
    PolarOverflowError,
    SeriesDomainError,
    StructureError,
    TorusKontsevichError,
    VerificationError,
)
from .exact import FactoredRationalFn, LaurentPoly, alexander_torus, cyclotomic_multiplier, lp_arith
from .glue import (
    bracket_to_chain,
    glue_wheel_into_dumbbell,
    glue_wheels_one_point,
    omega_two_point,
    pair_wheels_theta2,
)
from .pipeline import (
    TorusParams,
    closed_theta2_z3,
    fractional_residual,
    rescale_legs,
    star_formula,
    step1_exponent,
    unwheel_assemble,
    verify_closed_normalization,
    z1_rational,
    z2_rational,
    z3_rational,
)
from .series import (
    TruncatedSeries,
    divided_difference,
    hair_expand,
    ts_arith,
    ts_derivative,
    ts_exp,
    ts_log,
    ts_polar_split,
    ts_scale_var,
    ts_symmetrize,
)
from .wheels import HyperbolicForm, c_series, f_series, fprime_forms, fsecond_forms

__version__ = "0.1.0"

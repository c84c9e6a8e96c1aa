"""Symmetry coefficients of Legendre reference functions for Bregman methods."""
from .catalog import (
    AffineImage,
    DimensionMismatch,
    PiecewiseQuadratic1D,
    PNormPower,
    PowerAbs,
    QuadraticForm,
    ReferenceFunction,
    ScaledSum,
    TwoNormPower,
    bregman,
    evaluate,
    gradient,
    homogeneity_degree,
)
from .descriptor import DescriptorError, parse_descriptor
from .oracle import (
    OracleEstimate,
    alpha_grid_1d,
    alpha_sample_nd,
    quasiconcavity_check,
    ratio,
)
from .palindromic import (
    IntegerPolynomial,
    closed_form_alpha,
    closed_form_root,
    factor_check,
    g_p_int,
    h1_int,
    h2_int,
    half_substitution,
    tetrahedral,
    triangular,
)
from .symmetry import (
    Interval,
    Method,
    NormKind,
    RuleNotApplicable,
    SymmetryCertificate,
    alpha_bounds,
    alpha_of,
    alpha_piecewise_quadratic,
    alpha_power,
    alpha_sum_mixed,
    bregman_ratio_1d,
    bregman_ratio_polar,
    conjugate_exponent,
    f_p_eval,
    F_p_eval,
    g_p_eval,
    stationarity_poly,
)
from .sweep import SweepRow, read_csv, sweep, write_csv

__version__ = "0.1.0"

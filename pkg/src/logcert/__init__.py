"""Exact-arithmetic certification of log-behavior for P-recursive sequences."""

from .kernel import DEFAULT_PRECISION, IntPolynomial, X, binomial, poly_gcd, to_mpf
from .sequences import (
    SequenceValues,
    a_direct,
    a_transformed,
    apery,
    b_direct,
    format_exact,
    read_sequence,
    s_sum,
    sequence_table,
    write_sequence,
)
from .recurrences import (
    CharPolyResult,
    PRecurrence,
    RootInfo,
    characteristic_poly,
    extend_by_recurrence,
    guess_recurrence,
    known_recurrence,
    ratio_limit,
    roots_real,
    verify_recurrence,
)
from .logbehavior import (
    L_operator,
    PuiseuxFit,
    classify_log_behavior,
    delta_op,
    find_monotone_start,
    monotone_ratio_certify,
    nth_root_limit_probe,
    nth_root_ratio_certify,
    puiseux_fit,
    r_order,
    ratio2_seq,
    ratio_seq,
)
from .asymptotics import (
    AsymptoticEval,
    a_bounds_audit,
    a_from_weights,
    apery_asymptotic,
    b_bounds_audit,
    b_from_weights,
    b_profile_extrema,
    decay_exponent_fit,
    weight_profile_eval,
)
from .report import AnalysisReport

__version__ = "0.1.0"

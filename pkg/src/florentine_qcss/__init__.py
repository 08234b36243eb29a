"""Florentine rectangles, complete complementary codes and quasi-complementary
sequence sets over Z_N."""
from .bounds import BoundsReport, asymptotic_rho, liu_bound, optimality_factor, welch_bound
from .correlation import (
    CorrelationReport,
    CorrelationValue,
    acf,
    cyclotomic_poly,
    delta_max,
    exact_is_zero,
    scan,
    set_correlation,
)
from .florentine import (
    Construction,
    FlorentineRect,
    PermutationFamily,
    best_florentine,
    florentine_even_a,
    florentine_even_b,
    florentine_mult_table,
    florentine_odd,
    is_florentine,
    is_latin,
    is_tuscan_k,
    is_vatican,
    max_florentine_search,
    strip_and_shift,
    vatican_from_prime,
)
from .seqgen import CCC, QCSS, SequenceSet, build_ccc, build_qcss, phase_row

__version__ = "0.1.0"

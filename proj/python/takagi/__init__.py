"""Exact Takagi-Van der Waerden evaluation, infinite-derivative criteria and fractal sets.

Points are given either as ``fractions.Fraction`` values or as strings in the
point grammar (``"p/q"``, ``"0.<pre>(<per>)_r"``, ``"sparse:b=..,on=..,off=.."``).
Exact results come back as ``Fraction``. Invalid input raises ``ValueError``;
hitting a computational cap raises ``CapExceeded``.
"""

from ._core import (
    CapExceeded,
    box_count_dim,
    canonical,
    classify,
    count_B,
    criterion,
    d_n,
    deriv_signs,
    dim_bounds,
    dtilde_series,
    enum_B,
    eval_exact,
    eval_partial,
    ifs_approx,
    point_class,
    quotient_probe,
    sample_null_measure,
)

__all__ = [
    "CapExceeded",
    "box_count_dim",
    "canonical",
    "classify",
    "count_B",
    "criterion",
    "d_n",
    "deriv_signs",
    "dim_bounds",
    "dtilde_series",
    "enum_B",
    "eval_exact",
    "eval_partial",
    "ifs_approx",
    "point_class",
    "quotient_probe",
    "sample_null_measure",
]

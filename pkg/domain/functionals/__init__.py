from .gaussian import (
    GaussianCoefficients,
    QuadraticPolynomial,
    apply_first_order,
    apply_second_order,
    evaluate,
    exponent,
    gradient_at,
    normal_ordering_trace,
    ratio,
    rescale,
)

__all__ = [
    "GaussianCoefficients",
    "QuadraticPolynomial",
    "apply_first_order",
    "apply_second_order",
    "evaluate",
    "exponent",
    "gradient_at",
    "normal_ordering_trace",
    "ratio",
    "rescale",
]

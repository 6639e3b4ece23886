from .kernel import (
    DEFAULT_CONVENTION,
    KernelConvention,
    QuadratureResult,
    feynman_kernel_closed,
    feynman_kernel_quadrature,
    refinement_study,
    richardson_extrapolate,
)

__all__ = [
    "DEFAULT_CONVENTION",
    "KernelConvention",
    "QuadratureResult",
    "feynman_kernel_closed",
    "feynman_kernel_quadrature",
    "refinement_study",
    "richardson_extrapolate",
]

from .drive import SampledDrive, kernel_against_drive, kernel_double_sum, trapezoid_weights
from .genfunc import (
    SourceSpec,
    ZExponent,
    add_smooth_drive,
    delta_pair_source,
    z_exponent,
    z_value,
)

__all__ = [
    "SampledDrive",
    "SourceSpec",
    "ZExponent",
    "add_smooth_drive",
    "delta_pair_source",
    "kernel_against_drive",
    "kernel_double_sum",
    "trapezoid_weights",
    "z_exponent",
    "z_value",
]

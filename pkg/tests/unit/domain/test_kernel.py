import cmath
import math

import numpy as np
import pytest

from domain.propagation import (
    KernelConvention,
    feynman_kernel_closed,
    feynman_kernel_quadrature,
    refinement_study,
    richardson_extrapolate,
)
from domain.shared.exceptions import ContractViolation, UnderResolvedGridError


@pytest.mark.unit
class TestClosedForm:

    def test_coincident_value(self):
        assert feynman_kernel_closed(1.0, 0.0) == -0.5j

    def test_phase_at_unit_time(self):
        expected = -0.5j * cmath.exp(-1j)
        assert abs(feynman_kernel_closed(1.0, 1.0) - expected) < 1e-15

    def test_even_in_tau(self):
        taus = np.linspace(-3, 3, 13)
        values = feynman_kernel_closed(2.0, taus)
        assert np.array_equal(values, values[::-1])

    def test_does_not_depend_on_transform_sign(self):
        flipped = KernelConvention().flipped()
        assert feynman_kernel_closed(0.5, 0.7, flipped) == feynman_kernel_closed(
            0.5, 0.7
        )

    def test_modulus_is_half_inverse_frequency(self):
        for omega in (0.5, 1.0, 2.0):
            assert abs(feynman_kernel_closed(omega, 2.3)) == pytest.approx(
                1 / (2 * omega), rel=1e-15
            )

    @pytest.mark.parametrize("omega", [0.0, -1.0])
    def test_non_positive_frequency_rejected(self, omega):
        with pytest.raises(ContractViolation):
            feynman_kernel_closed(omega, 0.0)

    def test_invalid_convention_sign(self):
        with pytest.raises(ContractViolation):
            KernelConvention(sigma=2)


@pytest.mark.unit
class TestQuadrature:
    """La cuadratura con ε finito es el oráculo de la forma cerrada"""

    @pytest.mark.parametrize("omega", [0.5, 1.0, 2.0])
    @pytest.mark.parametrize("tau", [0.0, 0.7, 2.0])
    def test_agrees_with_closed_form(self, omega, tau):
        exact = feynman_kernel_closed(omega, tau)

        result = feynman_kernel_quadrature(omega, tau, 1e-4, 1e3 * omega)

        assert abs(result.value - exact) / abs(exact) < 1e-3

    def test_tail_estimate_is_reported_and_added(self):
        result = feynman_kernel_quadrature(1.0, 0.0, 1e-3, 1e3)

        assert result.tail_estimate != 0
        assert result.value == result.truncated_value + result.tail_estimate

    def test_too_few_nodes_at_the_pole(self):
        with pytest.raises(UnderResolvedGridError) as excinfo:
            feynman_kernel_quadrature(1.0, 0.0, 1e-4, 1e3, n_points=4)

        assert excinfo.value.spacing > excinfo.value.limit

    def test_cut_must_exceed_pole_window(self):
        with pytest.raises(ContractViolation):
            feynman_kernel_quadrature(1.0, 0.0, 1e-3, 1.2)

    @pytest.mark.parametrize("omega", [0.5, 1.0, 2.0])
    @pytest.mark.parametrize("tau", [0.0, 0.7, 2.0])
    def test_richardson_reaches_tighter_tolerance(self, omega, tau):
        study = refinement_study(omega, tau)
        scale = abs(study["exact"])

        assert study["extrapolated_error"] / scale < 1e-5
        # El error decrece con ε
        assert study["errors"][-1] < study["errors"][0]


@pytest.mark.unit
class TestRichardson:

    def test_exact_for_linear_dependence(self):
        eps = [1e-2, 1e-3]
        estimates = [3.0 + 2.0 * e for e in eps]

        assert richardson_extrapolate(eps, estimates) == pytest.approx(3.0)

    def test_exact_for_quadratic_dependence(self):
        eps = [0.4, 0.2, 0.1]
        estimates = [1j + 0.5 * e - 2.0 * e**2 for e in eps]

        assert abs(richardson_extrapolate(eps, estimates) - 1j) < 1e-13

    def test_mismatched_lengths(self):
        with pytest.raises(ContractViolation):
            richardson_extrapolate([1e-2], [1.0, 2.0])

    def test_single_estimate_is_returned(self):
        assert richardson_extrapolate([0.1], [math.pi]) == math.pi

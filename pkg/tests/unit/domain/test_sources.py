import cmath

import numpy as np
import pytest

from domain.mode_lattice import ModeVector
from domain.oscillator import relation5_rhs
from domain.propagation import feynman_kernel_closed
from domain.shared.exceptions import ContractViolation, DimensionMismatchError
from domain.sources import (
    SampledDrive,
    add_smooth_drive,
    delta_pair_source,
    kernel_against_drive,
    kernel_double_sum,
    trapezoid_weights,
    z_exponent,
    z_value,
)
from tests.factories import ModeSpaceFactory


@pytest.mark.unit
class TestSampledDrive:

    def test_from_function_covers_interval_exactly(self):
        drive = SampledDrive.from_function(np.sin, 0.0, 2.0, 1e-3)

        assert drive.n_samples == 2001
        assert drive.covers(0.0, 2.0)
        assert drive.values[-1] == pytest.approx(np.sin(2.0))

    def test_single_sample_rejected(self):
        with pytest.raises(ContractViolation):
            SampledDrive(0.0, 0.1, [1.0])

    def test_non_positive_step_rejected(self):
        with pytest.raises(ContractViolation):
            SampledDrive(0.0, 0.0, [1.0, 2.0])

    def test_interpolation_at_midpoints(self):
        drive = SampledDrive(0.0, 1.0, [0.0, 2.0, 4.0])

        assert drive.at(0.5) == pytest.approx(1.0)
        assert drive.at(1.5) == pytest.approx(3.0)

    def test_trapezoid_weights(self):
        assert np.allclose(trapezoid_weights(4, 0.5), [0.25, 0.5, 0.5, 0.25])


@pytest.mark.unit
class TestKernelSums:
    """Sumas del trapecio contra el núcleo, frente a integrales cerradas"""

    def test_constant_drive_against_kernel(self):
        omega, T = 1.0, 2.0
        drive = SampledDrive.from_function(np.ones_like, 0.0, T, 1e-3)

        # ∫_0^T −(i/2ω) e^{−iω(T − t)} dt = −(1 − e^{−iωT})/(2ω²)
        expected = -(1 - cmath.exp(-1j * omega * T)) / (2 * omega**2)

        assert abs(kernel_against_drive(omega, T, drive) - expected) < 1e-6

    def test_double_sum_matches_direct_sum(self):
        omega = 1.3
        drive = SampledDrive.from_function(np.sin, 0.0, 1.0, 0.05)
        w = trapezoid_weights(drive.n_samples, drive.dt)
        t = drive.times
        kernel = feynman_kernel_closed(omega, t[:, None] - t[None, :])
        direct = np.sum(
            (w * drive.values)[:, None] * kernel * (w * drive.values)[None, :]
        )

        assert abs(kernel_double_sum(omega, drive) - direct) < 1e-13

    def test_double_sum_per_mode(self):
        omegas = np.array([1.0, 2.0])
        values = np.stack([np.sin(np.linspace(0, 1, 21)), np.ones(21)], axis=1)
        drive = SampledDrive(0.0, 0.05, values)

        per_mode = kernel_double_sum(omegas, drive)
        single = kernel_double_sum(2.0, SampledDrive(0.0, 0.05, values[:, 1]))

        assert per_mode.shape == (2,)
        assert abs(per_mode[1] - single) < 1e-14


@pytest.mark.unit
class TestZExponent:

    def test_coefficient_values(self):
        ms = ModeSpaceFactory(num_modes=8)
        zero = ModeVector.zeros(ms)
        source = delta_pair_source(ms, zero, zero, T=1.0)

        z = z_exponent(ms, source)

        assert np.allclose(z.uu, -1 / (4 * ms.frequencies), rtol=1e-15)
        assert np.array_equal(z.vv, z.uu)
        assert np.allclose(
            z.uv, np.exp(-1j * ms.frequencies) / (4 * ms.frequencies), rtol=1e-15
        )

    def test_uu_times_omega_is_mode_independent(self):
        ms = ModeSpaceFactory(num_modes=64, mass=0.5, hbar=2.0)
        zero = ModeVector.zeros(ms)

        z = z_exponent(ms, delta_pair_source(ms, zero, zero, T=3.0))

        product = z.uu * ms.frequencies
        assert np.allclose(product, -1 / (4 * ms.hbar), rtol=1e-15)

    def test_total_matches_source_double_sum(self):
        ms = ModeSpaceFactory(num_modes=4)
        u_hat = ModeVector.basis(ms, 1, 0.3)
        v_hat = ModeVector.basis(ms, 0, 0.2)
        source = delta_pair_source(ms, u_hat, v_hat, T=0.8)

        total = z_exponent(ms, source).total(u_hat, v_hat)

        # Modo k=1 solo aporta û_1 û_{−1} = 0 (−1 no tiene amplitud)
        omega0 = ms.frequencies[ms.position(0)]
        expected = (-0.5j) * 0.2**2 * feynman_kernel_closed(omega0, 0.0)
        assert abs(total - expected) < 1e-15

    def test_zero_source_gives_unit_value(self):
        ms = ModeSpaceFactory(num_modes=4)
        zero = ModeVector.zeros(ms)

        assert z_value(ms, delta_pair_source(ms, zero, zero, T=1.0)) == 1.0

    def test_functional_of_u_reproduces_total(self):
        ms = ModeSpaceFactory(num_modes=8)
        v_hat = ModeVector.random_real(ms, seed=3)
        u_hat = ModeVector.random_real(ms, seed=4)
        source = delta_pair_source(ms, u_hat, v_hat, T=1.5)
        z = z_exponent(ms, source)

        g = z.functional_of_u(v_hat)
        from_coefficients = u_hat.amplitudes @ g.A @ u_hat.amplitudes
        from_coefficients += g.b @ u_hat.amplitudes + g.c

        assert abs(from_coefficients - z.total(u_hat, v_hat)) < 1e-14

    def test_smooth_drive_adds_linear_and_constant_terms(self):
        ms = ModeSpaceFactory(num_modes=4)
        zero = ModeVector.zeros(ms)
        source = delta_pair_source(ms, zero, zero, T=1.0)
        samples = np.ones((11, 4))

        driven = z_exponent(ms, add_smooth_drive(source, samples, 0.1))

        assert np.all(driven.lin_u != 0)
        assert driven.const != 0

    def test_drive_must_cover_layers(self):
        ms = ModeSpaceFactory(num_modes=4)
        zero = ModeVector.zeros(ms)
        source = delta_pair_source(ms, zero, zero, T=1.0)

        with pytest.raises(ContractViolation):
            add_smooth_drive(source, np.ones((5, 4)), 0.1)

    def test_vectors_from_another_space_rejected(self):
        ms = ModeSpaceFactory(num_modes=4)
        other = ModeSpaceFactory(num_modes=8)

        with pytest.raises(DimensionMismatchError):
            delta_pair_source(ms, ModeVector.zeros(other), ModeVector.zeros(ms), 1.0)

    def test_layers_out_of_order_rejected(self):
        ms = ModeSpaceFactory(num_modes=4)
        zero = ModeVector.zeros(ms)

        with pytest.raises(ContractViolation):
            delta_pair_source(ms, zero, zero, T=0.0, T0=1.0)


@pytest.mark.unit
class TestSourceSymmetries:
    """Propiedades de Z como forma cuadrática en la fuente compuesta"""

    @pytest.fixture
    def driven_source(self):
        ms = ModeSpaceFactory(num_modes=8)
        u_hat = ModeVector.random_real(ms, seed=1)
        v_hat = ModeVector.random_real(ms, seed=2)
        drive = SampledDrive.from_function(np.cos, 0.0, 1.5, 1e-2)
        samples = np.outer(drive.values, np.linspace(0.2, 1.0, ms.num_modes))
        source = delta_pair_source(ms, u_hat, v_hat, T=1.5)
        return ms, add_smooth_drive(source, samples, drive.dt)

    @pytest.mark.parametrize("alpha", [0.5, -2.0, 3.0])
    def test_scaling_the_source_scales_every_term_quadratically(
        self, driven_source, alpha
    ):
        ms, source = driven_source
        scaled = source.scaled(alpha)

        base = z_exponent(ms, source)
        result = z_exponent(ms, scaled)

        assert result.total(scaled.u_hat, scaled.v_hat) == pytest.approx(
            alpha**2 * base.total(source.u_hat, source.v_hat), rel=1e-12
        )
        assert result.const == pytest.approx(alpha**2 * base.const, rel=1e-12)
        assert np.allclose(result.lin_u, alpha * base.lin_u, rtol=1e-12)

    def test_exchanging_layers_with_flipped_sign_leaves_z_unchanged(self):
        ms = ModeSpaceFactory(num_modes=16, mass=0.5)
        u_hat = ModeVector.random_real(ms, seed=7)
        v_hat = ModeVector.random_real(ms, seed=8)
        z = z_exponent(ms, delta_pair_source(ms, u_hat, v_hat, T=2.3, T0=0.4))

        direct = z.total(u_hat, v_hat)
        exchanged = z.total(v_hat.scaled(-1), u_hat.scaled(-1))

        assert exchanged == pytest.approx(direct, rel=1e-12, abs=1e-15)

    def test_single_mode_with_sin_drive_matches_oscillator(self):
        ms = ModeSpaceFactory(num_modes=2, mass=1.0)
        p, p0 = 0.7, -0.4
        drive = SampledDrive.from_function(np.sin, 0.0, 2.0, 1e-3)
        samples = np.zeros((drive.n_samples, ms.num_modes))
        samples[:, ms.position(0)] = drive.values.real
        source = delta_pair_source(
            ms, ModeVector.basis(ms, 0, p), ModeVector.basis(ms, 0, p0), T=2.0
        )

        field_z = z_value(ms, add_smooth_drive(source, samples, drive.dt))

        oscillator_z = relation5_rhs(p0, p, drive, 0.0, 2.0, omega=1.0)
        assert field_z == pytest.approx(oscillator_z, rel=1e-12)

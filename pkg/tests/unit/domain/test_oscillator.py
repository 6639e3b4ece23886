import numpy as np
import pytest

from domain.oscillator import (
    adiabatic_displacement,
    bridge_phase,
    compare_relation5,
    eigenphase_refinement,
    ground_state,
    propagate_driven,
    rayleigh_energy,
    relation5_lhs,
    relation5_rhs,
    relation5_rhs_matrix,
)
from domain.reporting import FAIL, INCONCLUSIVE, PASS
from domain.shared.exceptions import (
    BandLimitError,
    BoundaryLeakError,
    ContractViolation,
    DimensionMismatchError,
)
from domain.sources import SampledDrive
from tests.factories import QMGridFactory


@pytest.fixture
def small_grid():
    """Malla reducida: suficiente para ω = 1 y momentos |p| ≤ 1"""
    return QMGridFactory(q_min=-10.0, q_max=10.0, n_points=256)


@pytest.mark.unit
class TestQMGrid:

    def test_symmetric_grid_has_node_at_origin(self, small_grid):
        assert np.count_nonzero(small_grid.q == 0.0) == 1

    def test_small_grid_logs_warning(self, caplog):
        with caplog.at_level("WARNING"):
            QMGridFactory(n_points=64)

        assert "insuficiente" in caplog.text

    @pytest.mark.parametrize(
        "changes", [{"q_max": -20.0}, {"n_points": 5}, {"dt": 0.0}, {"omega": -1.0}]
    )
    def test_invalid_grid_rejected(self, changes):
        with pytest.raises(ContractViolation):
            QMGridFactory(**changes)

    def test_band_and_matrix_forms_agree(self):
        grid = QMGridFactory(n_points=16)
        dense = grid.hamiltonian_matrix(force=0.3).toarray()
        band = grid.hamiltonian_band(force=0.3)

        assert np.allclose(band[3], np.diag(dense))
        assert np.allclose(band[2, 1:], np.diag(dense, 1))


@pytest.mark.unit
class TestGroundState:

    def test_energy_is_half_omega(self, small_grid):
        psi = ground_state(small_grid)

        assert rayleigh_energy(small_grid, psi) == pytest.approx(0.5, abs=1e-7)
        assert small_grid.norm(psi) == pytest.approx(1.0, abs=1e-12)

    def test_energy_scales_with_frequency(self, small_grid):
        grid = small_grid.with_omega(2.0)

        energy = rayleigh_energy(grid, ground_state(grid))

        assert energy == pytest.approx(1.0, abs=1e-6)


@pytest.mark.unit
class TestPropagation:

    def test_norm_is_preserved_under_drive(self, small_grid):
        drive = SampledDrive.from_function(lambda t: 0.3 * np.sin(t), 0.0, 1.0, 1e-3)
        psi0 = ground_state(small_grid)

        psi = propagate_driven(psi0, small_grid, drive, 0.0, 1.0)

        assert small_grid.norm(psi) == pytest.approx(1.0, abs=1e-10)

    def test_zero_interval_returns_copy(self, small_grid):
        psi0 = ground_state(small_grid)

        assert np.array_equal(propagate_driven(psi0, small_grid, None, 1.0, 1.0), psi0)

    def test_reversed_interval_rejected(self, small_grid):
        with pytest.raises(ContractViolation):
            propagate_driven(ground_state(small_grid), small_grid, None, 1.0, 0.5)

    def test_coarse_step_rejected(self, small_grid):
        grid = small_grid.with_dt(0.05)

        with pytest.raises(ContractViolation):
            propagate_driven(np.zeros(256), grid, None, 0.0, 1.0)

    def test_drive_must_cover_interval(self, small_grid):
        drive = SampledDrive.from_function(np.cos, 0.0, 0.5, 1e-3)

        with pytest.raises(ContractViolation):
            propagate_driven(np.zeros(256), small_grid, drive, 0.0, 1.0)

    def test_state_near_edge_leaks(self, small_grid):
        psi0 = np.exp(-0.5 * (small_grid.q - 9.0) ** 2)
        psi0 /= small_grid.norm(psi0)

        with pytest.raises(BoundaryLeakError) as excinfo:
            propagate_driven(psi0, small_grid, None, 0.0, 0.01)

        assert excinfo.value.amplitude > 1e-8

    def test_eigenphase_error_is_second_order_in_dt(self, small_grid):
        study = eigenphase_refinement(small_grid, 1.0, [0.01, 0.005, 0.0025])

        assert study["errors"][0] > study["errors"][-1]
        for ratio in study["ratios"]:
            assert 3.5 < ratio < 4.5

    @pytest.mark.slow
    def test_adiabatic_ramp_reaches_displaced_equilibrium(self):
        grid = QMGridFactory(n_points=512, dt=1e-2)

        result = adiabatic_displacement(grid)

        assert result["expected"] == 0.5
        assert result["error"] < 1e-2


@pytest.mark.unit
class TestRelation5:
    """Núcleo de evolución con vacío en los extremos vs. forma cerrada"""

    def test_static_gaussian_ratio_is_constant(self, small_grid):
        momenta = [-1.0, 0.0, 1.0]

        lhs = relation5_lhs(small_grid, None, 0.0, 0.5, momenta, momenta)
        rhs = relation5_rhs_matrix(momenta, momenta, None, 0.0, 0.5, 1.0)
        report = compare_relation5(lhs, rhs)

        assert report.verdict == PASS
        assert report.extras["compared"] == 9
        # La constante global es la fase de vacío e^{−iT/2}
        assert abs(report.extras["mean_ratio"] - np.exp(-0.25j)) < 1e-3

    def test_driven_ratio_is_constant(self, small_grid):
        drive = SampledDrive.from_function(
            lambda t: 0.5 * np.cos(2 * t), 0.0, 0.5, 1e-3
        )
        momenta = [0.0, 0.5]

        lhs = relation5_lhs(small_grid, drive, 0.0, 0.5, momenta, momenta)
        rhs = relation5_rhs_matrix(momenta, momenta, drive, 0.0, 0.5, 1.0)

        assert compare_relation5(lhs, rhs).passed

    def test_wrong_frequency_is_detected(self, small_grid):
        momenta = [-1.0, 0.0, 1.0]

        lhs = relation5_lhs(small_grid, None, 0.0, 0.5, momenta, momenta)
        rhs = relation5_rhs_matrix(momenta, momenta, None, 0.0, 0.5, 1.5)

        assert compare_relation5(lhs, rhs).verdict == FAIL

    def test_rhs_matrix_is_indexed_initial_then_final(self):
        matrix = relation5_rhs_matrix([0.0, 1.0], [0.0, 2.0], None, 0.0, 1.0, 1.0)

        expected_initial = relation5_rhs(1.0, 0.0, None, 0.0, 1.0, 1.0)
        expected_final = relation5_rhs(0.0, 2.0, None, 0.0, 1.0, 1.0)

        assert matrix[1, 0] == pytest.approx(expected_initial)
        assert matrix[0, 1] == pytest.approx(expected_final)

    def test_all_entries_below_noise_floor_are_inconclusive(self, caplog):
        with caplog.at_level("WARNING"):
            report = compare_relation5(np.zeros((2, 2)), np.ones((2, 2)))

        assert report.verdict == INCONCLUSIVE
        assert report.extras["excluded"] == 4

    def test_shape_mismatch_rejected(self):
        with pytest.raises(DimensionMismatchError):
            compare_relation5(np.ones((2, 2)), np.ones((2, 3)))

    def test_momentum_beyond_band_rejected(self, small_grid):
        with pytest.raises(BandLimitError):
            relation5_lhs(small_grid, None, 0.0, 0.5, [0.0], [50.0])

    def test_empty_momentum_grid(self, small_grid):
        lhs = relation5_lhs(small_grid, None, 0.0, 0.5, [], [0.0, 1.0])

        assert lhs.shape == (0, 2)

    def test_closed_form_bridge_phase(self, small_grid):
        phase = bridge_phase(small_grid, 1.0, 0.3)

        assert abs(phase - np.exp(-0.3j)) < 1e-12

    @pytest.mark.slow
    def test_solver_bridge_phase(self, small_grid):
        phase = bridge_phase(small_grid, 0.5, 0.25, use_solver=True)

        assert abs(phase - np.exp(-0.25j)) < 1e-3

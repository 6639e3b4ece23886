# tests/conftest.py
import os

import pytest

# Establecer variables ANTES de que Django cargue los settings
os.environ["PYTEST_CURRENT_TEST"] = "1"
os.environ["DISABLE_FILE_LOGGING"] = "1"


# ==================== RED DE MODOS ====================


@pytest.fixture
def mode_space():
    """Red de aceptación: N=16, L=2π, m=1, h=1"""
    from tests.factories import ModeSpaceFactory

    return ModeSpaceFactory()


@pytest.fixture
def calibration(mode_space):
    """Calibración resuelta sobre la red de aceptación"""
    from domain.evolution import calibrate

    return calibrate(mode_space)


@pytest.fixture
def calibrated_state(mode_space, calibration):
    """Estado Φ(T=1) con v̂ en el modo k=1, ya calibrado"""
    from domain.evolution import evolution_functional
    from domain.mode_lattice import ModeVector

    v_hat = ModeVector.basis(mode_space, 1)
    return evolution_functional(mode_space, v_hat, 1.0, calib=calibration)


# ==================== ORÁCULO QM ====================


@pytest.fixture
def qm_grid():
    """Malla de aceptación: q ∈ [−12, 12], 1024 puntos, dt = 1e-3"""
    from tests.factories import QMGridFactory

    return QMGridFactory()


# ==================== SALIDAS ====================


@pytest.fixture
def out_dir(tmp_path):
    """Directorio temporal para informes JSON/CSV"""
    path = tmp_path / "reports"
    path.mkdir()
    return path

"""
Relación entre el núcleo de evolución con pesos de vacío en los extremos y el
funcional generatriz con la fuente compuesta

    j(t) = p δ(t − T) − p0 δ(t − T0) + j₁(t),   T0 ≤ t ≤ T.

Lado izquierdo (solver):  L(p0, p) = Σ_q ψ_R(q) e^{ipq} [U(T, T0) ψ_L e^{−ip0·}](q) dx
Lado derecho (cerrado):   exp(−(i h/2) ∬ j G_F j),  G_F = núcleo de Feynman

Ambos se comparan salvo una constante global. Las matrices se indexan [p0, p].
"""

import cmath
import logging

import numpy as np

from domain.propagation import feynman_kernel_closed
from domain.reporting import ResidualReport
from domain.shared.constants import RELATION5_NOISE_FLOOR, TOL_RELATION5
from domain.shared.exceptions import BandLimitError, DimensionMismatchError
from domain.sources import kernel_against_drive, kernel_double_sum

from .solver import boundary_factors, propagate_driven

logger = logging.getLogger(__name__)


def _check_band(grid, momenta, label):
    momenta = np.asarray(momenta, dtype=float)
    if momenta.size and np.max(np.abs(momenta)) > grid.band_limit:
        raise BandLimitError(
            f"|{label}| = {np.max(np.abs(momenta)):.3f} supera la banda "
            f"{grid.band_limit:.3f} de la malla"
        )
    return momenta


def relation5_lhs(grid, drive, T0, T, p0_grid, p_grid):
    p0_grid = _check_band(grid, p0_grid, "p0")
    p_grid = _check_band(grid, p_grid, "p")
    if p0_grid.size == 0 or p_grid.size == 0:
        return np.empty((p0_grid.size, p_grid.size), dtype=complex)

    factors = boundary_factors(grid)
    initial = factors.left[:, None] * np.exp(-1j * np.outer(grid.q, p0_grid))
    evolved = propagate_driven(initial, grid, drive, T0, T)
    final_weights = factors.right[:, None] * np.exp(1j * np.outer(grid.q, p_grid))
    return grid.inner(evolved, final_weights)


def relation5_exponent(p0, p, drive, T0, T, omega, hbar=1.0):
    """−(i h/2)∬ j G_F j, con cuadratura del trapecio para j₁."""
    p0 = np.asarray(p0, dtype=float)
    p = np.asarray(p, dtype=float)
    g_zero = feynman_kernel_closed(omega, 0.0)
    g_span = feynman_kernel_closed(omega, T - T0)
    bilinear = (p**2 + p0**2) * g_zero - 2.0 * p * p0 * g_span
    if drive is not None:
        from_final = kernel_against_drive(omega, T, drive)
        from_initial = kernel_against_drive(omega, T0, drive)
        bilinear = (
            bilinear
            + 2.0 * p * from_final
            - 2.0 * p0 * from_initial
            + kernel_double_sum(omega, drive)
        )
    return -0.5j * hbar * bilinear


def relation5_rhs(p0, p, drive, T0, T, omega, hbar=1.0):
    return complex(np.exp(relation5_exponent(p0, p, drive, T0, T, omega, hbar)))


def relation5_rhs_matrix(p0_grid, p_grid, drive, T0, T, omega, hbar=1.0):
    p0_mesh, p_mesh = np.meshgrid(
        np.asarray(p0_grid, dtype=float), np.asarray(p_grid, dtype=float), indexing="ij"
    )
    return np.exp(relation5_exponent(p0_mesh, p_mesh, drive, T0, T, omega, hbar))


def compare_relation5(lhs, rhs, tol=TOL_RELATION5, params=None, name="relation5"):
    """
    Pasa si la dispersión relativa std/|media| del cociente lhs/rhs es menor
    que tol. La media (la constante global) se informa, no se juzga.
    """
    lhs = np.asarray(lhs, dtype=complex)
    rhs = np.asarray(rhs, dtype=complex)
    if lhs.shape != rhs.shape:
        raise DimensionMismatchError(
            f"Formas distintas: lhs{lhs.shape} vs rhs{rhs.shape}"
        )

    kept = np.abs(lhs) >= RELATION5_NOISE_FLOOR
    extras = {"compared": int(kept.sum()), "excluded": int(kept.size - kept.sum())}
    if not kept.any():
        logger.warning("Relación 5 sin entradas comparables: no concluyente")
        return ResidualReport.judge(
            name, {"spread": tol}, params=params, extras=extras, spread=None
        )

    ratio = lhs[kept] / rhs[kept]
    mean = complex(np.mean(ratio))
    spread = float(np.std(ratio) / abs(mean))
    extras["mean_ratio"] = mean
    return ResidualReport.judge(
        name, {"spread": tol}, params=params, extras=extras, spread=spread
    )


def cross_ratio(matrix):
    """L(p0,p)L(0,0)/(L(p0,0)L(0,p)) para una matriz sobre p0, p ∈ {0, p*}."""
    return matrix[1, 1] * matrix[0, 0] / (matrix[1, 0] * matrix[0, 1])


def bridge_phase(grid, T, delta_T, momentum=1.0, use_solver=False, T0=0.0):
    """
    Fase e^{−iωΔT} medida en el término cruzado. log del cociente cruzado vale
    h p p0 e^{−iω(T − T0)}/(2ω); su cociente entre T + ΔT y T es la fase.
    """
    grid_momenta = [0.0, momentum]

    def measure(t):
        if use_solver:
            matrix = relation5_lhs(grid, None, T0, t, grid_momenta, grid_momenta)
        else:
            matrix = relation5_rhs_matrix(
                grid_momenta, grid_momenta, None, T0, t, grid.omega, grid.hbar
            )
        return cmath.log(cross_ratio(matrix))

    return measure(T + delta_T) / measure(T)

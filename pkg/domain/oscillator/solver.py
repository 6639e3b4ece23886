"""
Estado fundamental y evolución forzada sobre la malla en q.

Tiempo real: Crank–Nicolson (punto medio implícito) con la fuente evaluada en
el centro de cada paso. Tiempo imaginario: Euler implícito con paso grande,
equivalente a una iteración inversa sobre H.
"""

import logging

import numpy as np
from scipy.linalg import solve_banded

from domain.shared.constants import BOUNDARY_LEAK_THRESHOLD
from domain.shared.exceptions import (
    BoundaryLeakError,
    ContractViolation,
    ConvergenceError,
)
from domain.sources import SampledDrive

from .grid import BANDWIDTH, BoundaryFactors

logger = logging.getLogger(__name__)

IMAGINARY_STEP = 50.0
GROUND_STATE_TOL = 1e-12
MAX_RELAXATION_STEPS = 500
# Puntos de cada borde que se vigilan para detectar fugas
EDGE_POINTS = 2


def ground_state(grid, tol=GROUND_STATE_TOL, max_iter=MAX_RELAXATION_STEPS):
    """Relajación en tiempo imaginario hasta que el cambio máximo sea < tol."""
    system = grid.hamiltonian_band() * (IMAGINARY_STEP / grid.hbar)
    system[BANDWIDTH] += 1.0

    psi = np.exp(-0.5 * grid.omega * grid.q**2 / grid.hbar)
    psi /= grid.norm(psi)
    change = float("inf")
    for iteration in range(1, max_iter + 1):
        updated = solve_banded((BANDWIDTH, BANDWIDTH), system, psi)
        updated /= grid.norm(updated)
        if updated[np.argmax(np.abs(updated))] < 0:
            updated = -updated
        change = float(np.max(np.abs(updated - psi)))
        psi = updated
        if change < tol:
            logger.debug("Estado fundamental en %s iteraciones", iteration)
            return psi
    raise ConvergenceError(
        f"La relajación no convergió en {max_iter} iteraciones (cambio {change:.2e})"
    )


def boundary_factors(grid):
    psi = ground_state(grid)
    return BoundaryFactors(grid, psi, psi)


def rayleigh_energy(grid, psi):
    hpsi = grid.hamiltonian_matrix() @ psi
    return float(np.real(np.vdot(psi, hpsi)) * grid.dx / grid.norm(psi) ** 2)


def check_boundary(psi, threshold=BOUNDARY_LEAK_THRESHOLD):
    edges = np.concatenate([psi[:EDGE_POINTS], psi[-EDGE_POINTS:]])
    amplitude = float(np.max(np.abs(edges)))
    if amplitude > threshold:
        raise BoundaryLeakError(amplitude, threshold)
    return amplitude


def _check_resolution(grid, drive):
    slack = 1.0 + 1e-9
    if grid.dt > slack * 0.01 / grid.omega:
        raise ContractViolation(f"dt={grid.dt} no resuelve ω={grid.omega}")
    if drive is not None and grid.dt > slack * drive.dt:
        raise ContractViolation(
            f"dt={grid.dt} es mayor que el paso de la fuente ({drive.dt})"
        )


def propagate_driven(psi0, grid, drive, T0, T):
    """
    Evoluciona psi0 (un vector o una columna por estado) de T0 a T. Todas las
    columnas comparten la factorización de cada paso.
    """
    if T < T0:
        raise ContractViolation(f"Se requiere T ≥ T0 (T0={T0}, T={T})")
    if drive is not None and not drive.covers(T0, T):
        raise ContractViolation(
            f"La fuente cubre [{drive.t0}, {drive.t_end}], no [{T0}, {T}]"
        )
    _check_resolution(grid, drive)

    psi = np.array(psi0, dtype=complex)
    n_steps = int(round((T - T0) / grid.dt))
    if n_steps == 0:
        return psi
    step = (T - T0) / n_steps
    coupling = 0.5j * step / grid.hbar

    kinetic = np.zeros((2 * BANDWIDTH + 1, int(grid.n_points)), dtype=complex)
    for offset, value in enumerate(grid.kinetic_offdiagonals, start=1):
        kinetic[BANDWIDTH - offset, offset:] = coupling * value
        kinetic[BANDWIDTH + offset, :-offset] = coupling * value
    static = grid.hamiltonian_matrix()
    q_column = grid.q.reshape((-1,) + (1,) * (psi.ndim - 1))

    for n in range(n_steps):
        force = float(drive.at(T0 + (n + 0.5) * step)) if drive is not None else 0.0
        diagonal = grid.diagonal(force)
        hpsi = static @ psi - grid.hbar * force * q_column * psi
        rhs = psi - coupling * hpsi
        kinetic[BANDWIDTH] = 1.0 + coupling * diagonal
        psi = solve_banded((BANDWIDTH, BANDWIDTH), kinetic, rhs)

    check_boundary(psi)
    return psi


def eigenphase_error(grid, T):
    """
    Máximo |ψ_T − e^{−iE T/h}ψ0| sin fuente, con E la energía de Rayleigh del
    estado discreto: aísla el error del paso temporal.
    """
    psi0 = ground_state(grid)
    energy = rayleigh_energy(grid, psi0)
    evolved = propagate_driven(psi0, grid, None, 0.0, T)
    expected = np.exp(-1j * energy * T / grid.hbar) * psi0
    return float(np.max(np.abs(evolved - expected)))


def eigenphase_refinement(grid, T, dts):
    errors = [eigenphase_error(grid.with_dt(dt), T) for dt in dts]
    ratios = [coarse / fine for coarse, fine in zip(errors, errors[1:])]
    return {"dt": list(dts), "errors": errors, "ratios": ratios}


def adiabatic_displacement(grid, force=0.5, ramp_time=40.0):
    """
    Rampa f·sin²(πt/2τ) de 0 a τ y ⟨q⟩ al final; en el límite adiabático el
    oscilador queda en el equilibrio desplazado h f/ω².
    """
    drive = SampledDrive.from_function(
        lambda t: force * np.sin(0.5 * np.pi * t / ramp_time) ** 2,
        0.0,
        ramp_time,
        grid.dt,
    )
    psi = propagate_driven(ground_state(grid), grid, drive, 0.0, ramp_time)
    density = np.abs(psi) ** 2
    mean_q = float(np.sum(grid.q * density) / np.sum(density))
    expected = grid.hbar * force / grid.omega**2
    return {"mean_q": mean_q, "expected": expected, "error": abs(mean_q - expected)}

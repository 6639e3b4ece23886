"""
Malla en q para el oscilador armónico forzado

    H(t) = ½(p̂² + ω² q̂²) − h j₁(t) q̂,    p̂ = −i h ∂/∂q

con laplaciano de diferencias finitas de sexto orden y extremos de Dirichlet.
Los operadores se guardan en formato de banda (3, 3) para scipy.linalg.
"""

import logging
import math
from dataclasses import dataclass, field, replace
from functools import cached_property

import numpy as np
from scipy import sparse

from domain.shared.constants import QM_DT, QM_POINTS, QM_Q_MAX, QM_Q_MIN
from domain.shared.exceptions import ContractViolation

logger = logging.getLogger(__name__)

# Segunda derivada, sexto orden: coeficientes para desplazamientos 0, 1, 2, 3
LAPLACIAN_STENCIL = (-49.0 / 18.0, 3.0 / 2.0, -3.0 / 20.0, 1.0 / 90.0)
BANDWIDTH = 3
# Por debajo de este tamaño la malla no sirve para corridas de aceptación
ACCEPTANCE_MIN_POINTS = 256


@dataclass(frozen=True)
class QMGrid:
    q_min: float = QM_Q_MIN
    q_max: float = QM_Q_MAX
    n_points: int = QM_POINTS
    dt: float = QM_DT
    omega: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if self.q_max <= self.q_min:
            raise ContractViolation(
                f"Se requiere q_max > q_min ({self.q_min}, {self.q_max})"
            )
        if int(self.n_points) != self.n_points or self.n_points < 2 * BANDWIDTH + 1:
            raise ContractViolation(f"n_points inválido ({self.n_points})")
        if self.dt <= 0 or self.omega <= 0 or self.hbar <= 0:
            raise ContractViolation("dt, ω y h deben ser positivos")
        if self.n_points < ACCEPTANCE_MIN_POINTS:
            logger.warning(
                "Malla QM de %s puntos: insuficiente para aceptación", self.n_points
            )

    @cached_property
    def q(self):
        # Sin el extremo derecho: con malla simétrica q = 0 cae en un nodo
        return np.linspace(self.q_min, self.q_max, int(self.n_points), endpoint=False)

    @property
    def dx(self):
        return (self.q_max - self.q_min) / self.n_points

    @property
    def band_limit(self):
        """Máximo |p| que la malla resuelve, con margen ½."""
        return 0.5 * math.pi * self.n_points / (self.q_max - self.q_min)

    def with_omega(self, omega):
        return replace(self, omega=float(omega))

    def with_dt(self, dt):
        return replace(self, dt=float(dt))

    def inner(self, left, right):
        """Σ_q left(q)·right(q)·dx, sin conjugar."""
        return np.tensordot(left, right, axes=(0, 0)) * self.dx

    def norm(self, psi):
        return np.sqrt(np.sum(np.abs(psi) ** 2, axis=0) * self.dx)

    def to_record(self):
        return {
            "q_min": self.q_min,
            "q_max": self.q_max,
            "n_points": int(self.n_points),
            "dt": self.dt,
            "omega": self.omega,
            "hbar": self.hbar,
        }

    @cached_property
    def kinetic_offdiagonals(self):
        scale = -0.5 * self.hbar**2 / self.dx**2
        return tuple(scale * c for c in LAPLACIAN_STENCIL[1:])

    @cached_property
    def static_diagonal(self):
        scale = -0.5 * self.hbar**2 / self.dx**2
        return scale * LAPLACIAN_STENCIL[0] + 0.5 * self.omega**2 * self.q**2

    def diagonal(self, force=0.0):
        return self.static_diagonal - self.hbar * force * self.q

    def hamiltonian_band(self, force=0.0):
        """H(t) en almacenamiento de banda: ab[3 + i − j, j] = H[i, j]."""
        n = int(self.n_points)
        ab = np.zeros((2 * BANDWIDTH + 1, n))
        ab[BANDWIDTH] = self.diagonal(force)
        for offset, value in enumerate(self.kinetic_offdiagonals, start=1):
            ab[BANDWIDTH - offset, offset:] = value
            ab[BANDWIDTH + offset, :-offset] = value
        return ab

    def hamiltonian_matrix(self, force=0.0):
        offsets = [0]
        bands = [self.diagonal(force)]
        for offset, value in enumerate(self.kinetic_offdiagonals, start=1):
            offsets += [offset, -offset]
            bands += [value, value]
        n = int(self.n_points)
        return sparse.diags(bands, offsets, shape=(n, n), format="csr")


@dataclass(frozen=True)
class BoundaryFactors:
    """Pesos de vacío ψ_L(q₀) y ψ_R(q) en los extremos de la evolución."""

    grid: QMGrid
    left: np.ndarray = field(repr=False, compare=False)
    right: np.ndarray = field(repr=False, compare=False)

    def __post_init__(self):
        for name in ("left", "right"):
            norm = float(self.grid.norm(getattr(self, name)))
            if abs(norm - 1.0) > 1e-10:
                raise ContractViolation(f"ψ_{name} no está normalizado (‖ψ‖={norm})")

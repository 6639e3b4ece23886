"""
Evolución pseudodinámica: Z[j] con la fuente û δ(t − T) − v̂ δ(t), leída como
funcional de û, es Φ(T, û). Aquí viven el estado, su avance en T y la
calibración de convenciones que hace cumplir la ecuación de primer orden.
"""

import cmath
import logging
from dataclasses import dataclass, field, replace

import numpy as np

from domain.functionals.gaussian import GaussianCoefficients, rescale
from domain.mode_lattice import ModeVector
from domain.propagation import DEFAULT_CONVENTION
from domain.shared.constants import TOL_COEFF, TOL_SECOND_ORDER
from domain.shared.exceptions import CalibrationError, ContractViolation
from domain.sources import delta_pair_source, z_exponent

from . import identities

logger = logging.getLogger(__name__)

# Dispersión relativa máxima de λ² entre modos
LAMBDA_SPREAD_LIMIT = 1e-12


def _scalar_record(value):
    value = complex(value)
    if value.imag == 0:
        return value.real
    return {"re": value.real, "im": value.imag}


@dataclass(frozen=True)
class ConventionCalibration:
    lam: complex = 1.0 + 0j
    sigma: int = 1
    c1: complex = None
    c2: complex = None
    eq14_residual: float = None
    sigma_verified: bool = False

    def __post_init__(self):
        if self.lam == 0:
            raise ContractViolation("λ no puede ser 0")
        if self.sigma not in (1, -1):
            raise ContractViolation(f"σ debe ser ±1 (recibido {self.sigma})")
        object.__setattr__(self, "lam", complex(self.lam))

    def with_sigma(self, sigma):
        return replace(self, sigma=sigma)

    def to_record(self):
        return {
            "lambda_re": self.lam.real,
            "lambda_im": self.lam.imag,
            "sigma": self.sigma,
            "c1": _scalar_record(self.c1) if self.c1 is not None else None,
            "c2": _scalar_record(self.c2) if self.c2 is not None else None,
            "eq14_residual": self.eq14_residual,
            "sigma_verified": self.sigma_verified,
        }

    @classmethod
    def uncalibrated(cls, conv=DEFAULT_CONVENTION):
        return cls(lam=1.0, sigma=conv.sigma)


@dataclass(frozen=True)
class EvolutionState:
    space: object
    T: float
    v_hat: ModeVector
    g: GaussianCoefficients = field(compare=False)
    calibration: ConventionCalibration

    def __post_init__(self):
        off_pairing = self.g.A * (1 - self.space.pairing_matrix().real)
        if np.any(off_pairing != 0):
            raise ContractViolation("A tiene entradas fuera de los pares (k, −k)")

    def with_coefficients(self, g):
        return replace(self, g=g)

    def to_record(self):
        record = self.g.to_record()
        record.update({"T": self.T, "calib": self.calibration.to_record()})
        return record


def evolution_functional(ms, v_hat, T, conv=DEFAULT_CONVENTION, calib=None):
    if T < 0:
        logger.warning("Evolución solicitada con T=%s < 0; se rechaza", T)
        raise ContractViolation(f"T debe ser ≥ 0 (recibido {T})")
    calib = calib or ConventionCalibration.uncalibrated(conv)

    source = delta_pair_source(ms, ModeVector.zeros(ms), v_hat, T, 0.0)
    g = z_exponent(ms, source, conv).functional_of_u(v_hat)
    if calib.lam != 1:
        g = rescale(g, calib.lam)
    return EvolutionState(ms, float(T), v_hat, g, calib)


def advance(st, delta_T):
    """A y c quedan intactos; b_k → e^{−iω_k ΔT}·b_k."""
    if delta_T < 0:
        raise ContractViolation(f"ΔT debe ser ≥ 0 (recibido {delta_T})")
    if delta_T == 0:
        return st
    phase = np.exp(-1j * st.space.frequencies * delta_T)
    g = GaussianCoefficients(st.g.A, st.g.b * phase, st.g.c)
    return replace(st, T=st.T + delta_T, g=g)


def solve_lambda_squared(ms, conv=DEFAULT_CONVENTION):
    """λ² = 1/(2 h ω_k a_k) con a_k el coeficiente ûû crudo de cada modo."""
    source = delta_pair_source(ms, ModeVector.zeros(ms), ModeVector.zeros(ms), 0.0)
    raw = z_exponent(ms, source, conv).uu
    per_mode = 1.0 / (2.0 * ms.hbar * ms.frequencies * raw)
    mean = complex(np.mean(per_mode))
    spread = float(np.max(np.abs(per_mode - mean)) / abs(mean))
    if spread > LAMBDA_SPREAD_LIMIT:
        raise CalibrationError(
            f"λ² depende del modo (dispersión relativa {spread:.2e})"
        )
    # +0.0 elimina el cero negativo que movería la raíz principal de rama
    return complex(mean.real + 0.0, mean.imag + 0.0)


def calibrate(
    ms,
    conv=DEFAULT_CONVENTION,
    force_lambda=None,
    check_T=1.0,
    tol_coeff=TOL_COEFF,
    tol_second_order=TOL_SECOND_ORDER,
):
    """
    Resuelve λ, mide los (c1, c2) logrados con él y elige σ probando primero
    el de la convención y luego el opuesto contra la ecuación de Schrödinger.
    """
    lam_squared = solve_lambda_squared(ms, conv)
    if force_lambda is not None:
        lam = complex(force_lambda)
    else:
        lam = cmath.sqrt(lam_squared)
    logger.info(
        "Calibración N=%s m=%s h=%s: λ²=%s λ=%s",
        ms.num_modes, ms.mass, ms.hbar, lam_squared, lam,
    )

    check_v = ModeVector.basis(ms, 0)
    provisional = ConventionCalibration(lam=lam, sigma=conv.sigma)
    check_state = evolution_functional(ms, check_v, check_T, conv, provisional)

    c1, c2 = identities.achieved_constants(check_state)
    residual = identities.first_order_residual(check_state, c1, c2)
    eq14_residual = max(residual.max_q2, residual.max_q1)
    if eq14_residual > tol_coeff:
        logger.warning(
            "Residuo de primer orden %.2e con (c1, c2) ajustados", eq14_residual
        )

    sigma, verified = conv.sigma, False
    for candidate in (conv.sigma, -conv.sigma):
        r13 = identities.schrodinger_residual(check_state, candidate)
        if max(r13.max_q2, r13.max_q1) <= tol_second_order:
            sigma, verified = candidate, True
            break
    if not verified:
        logger.warning("Ningún σ anula el residuo de Schrödinger con λ=%s", lam)

    return ConventionCalibration(
        lam=lam,
        sigma=sigma,
        c1=c1,
        c2=c2,
        eq14_residual=eq14_residual,
        sigma_verified=verified,
    )

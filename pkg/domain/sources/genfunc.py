"""
Fuentes compuestas y funcional generatriz del campo escalar libre por modos:

    Z[j] = exp((−i/2h) Σ_k ∬ j_k(t) D(t − t'; ω_k) j_{−k}(t') dt dt')

con j_k(t) = û_k δ(t − T) − v̂_k δ(t − T0) + j₁_k(t). Los términos entre
deltas usan la forma cerrada del núcleo; los que involucran la fuente suave,
la regla del trapecio.
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from domain.functionals.gaussian import EXPONENT_GUARD, GaussianCoefficients
from domain.mode_lattice import ModeVector
from domain.propagation import DEFAULT_CONVENTION, feynman_kernel_closed
from domain.shared.exceptions import ContractViolation, DimensionMismatchError

from .drive import SampledDrive, kernel_against_drive, kernel_double_sum

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SourceSpec:
    T: float
    T0: float
    u_hat: ModeVector
    v_hat: ModeVector
    drive: SampledDrive = None

    def __post_init__(self):
        if self.T0 > self.T:
            raise ContractViolation(f"Se requiere T0 ≤ T (T0={self.T0}, T={self.T})")
        if self.u_hat.space != self.v_hat.space:
            raise DimensionMismatchError("û y v̂ viven en redes de modos distintas")
        if self.drive is not None:
            if self.drive.values.shape[1:] != (self.space.num_modes,):
                raise DimensionMismatchError(
                    f"La fuente suave tiene forma {self.drive.values.shape}; "
                    f"se esperaban {self.space.num_modes} modos por muestra"
                )
            if not self.drive.covers(self.T0, self.T):
                raise ContractViolation(
                    f"La fuente suave cubre [{self.drive.t0}, {self.drive.t_end}], "
                    f"no [{self.T0}, {self.T}]"
                )

    @property
    def space(self):
        return self.u_hat.space

    def scaled(self, factor):
        drive = self.drive.scaled(factor) if self.drive is not None else None
        return SourceSpec(
            self.T, self.T0, self.u_hat.scaled(factor), self.v_hat.scaled(factor), drive
        )

    def to_record(self):
        return {
            "T": self.T,
            "T0": self.T0,
            "u_hat": self.u_hat.to_record(),
            "v_hat": self.v_hat.to_record(),
            "drive": self.drive.to_record() if self.drive is not None else None,
        }


@dataclass(frozen=True)
class ZExponent:
    """
    Coeficientes por modo del exponente de Z:

        Σ_k [uu_k û_k û_{−k} + 2 uv_k û_k v̂_{−k} + vv_k v̂_k v̂_{−k}
             + lin_u_k û_k + lin_v_k v̂_k] + const
    """

    space: object
    uu: np.ndarray = field(compare=False)
    uv: np.ndarray = field(compare=False)
    vv: np.ndarray = field(compare=False)
    lin_u: np.ndarray = field(compare=False)
    lin_v: np.ndarray = field(compare=False)
    const: complex = 0j

    def total(self, u_hat, v_hat):
        u = np.asarray(getattr(u_hat, "amplitudes", u_hat), dtype=complex)
        v = np.asarray(getattr(v_hat, "amplitudes", v_hat), dtype=complex)
        p = self.space.partner
        return complex(
            np.sum(self.uu * u * u[p])
            + 2.0 * np.sum(self.uv * u * v[p])
            + np.sum(self.vv * v * v[p])
            + self.lin_u @ u
            + self.lin_v @ v
            + self.const
        )

    def functional_of_u(self, v_hat):
        """Fija la capa inicial v̂ y devuelve Φ(û) como GaussianCoefficients."""
        v = np.asarray(v_hat.amplitudes, dtype=complex)
        p = self.space.partner
        A = self.uu[:, None] * self.space.pairing_matrix()
        b = 2.0 * self.uv * v[p] + self.lin_u
        c = np.sum(self.vv * v * v[p]) + self.lin_v @ v + self.const
        return GaussianCoefficients(A, b, c)

    def to_record(self):
        def pack(array):
            return {"re": array.real.tolist(), "im": array.imag.tolist()}

        return {
            "uu": pack(self.uu),
            "uv": pack(self.uv),
            "vv": pack(self.vv),
            "lin_u": pack(self.lin_u),
            "lin_v": pack(self.lin_v),
            "const": {"re": self.const.real, "im": self.const.imag},
        }


def delta_pair_source(ms, u_hat, v_hat, T, T0=0.0):
    for name, vector in (("û", u_hat), ("v̂", v_hat)):
        if vector.space != ms:
            raise DimensionMismatchError(f"{name} no pertenece a la red de modos dada")
    return SourceSpec(float(T), float(T0), u_hat, v_hat)


def add_smooth_drive(s, samples, dt):
    """
    Adjunta j₁ muestreada en [T0, T]. samples tiene forma (n_t, N); también se
    acepta una lista de ModeVector.
    """
    values = np.array(
        [getattr(sample, "amplitudes", sample) for sample in samples], dtype=complex
    )
    drive = SampledDrive(s.T0, dt, values)
    return SourceSpec(s.T, s.T0, s.u_hat, s.v_hat, drive)


def z_exponent(ms, s, conv=DEFAULT_CONVENTION):
    if s.space != ms:
        raise DimensionMismatchError("La fuente no pertenece a la red de modos dada")
    prefactor = -0.5j / ms.hbar
    omega = ms.frequencies

    # D(0) explícito: A no debe depender de T ni siquiera por redondeo
    uu = prefactor * feynman_kernel_closed(omega, 0.0, conv)
    uv = -prefactor * feynman_kernel_closed(omega, s.T - s.T0, conv)
    vv = uu.copy()

    lin_u = np.zeros(ms.num_modes, dtype=complex)
    lin_v = np.zeros(ms.num_modes, dtype=complex)
    const = 0j
    if s.drive is not None:
        partner_values = s.drive.values[:, ms.partner]
        lin_u = 2.0 * prefactor * kernel_against_drive(
            omega, s.T, SampledDrive(s.drive.t0, s.drive.dt, partner_values)
        )
        lin_v = -2.0 * prefactor * kernel_against_drive(
            omega, s.T0, SampledDrive(s.drive.t0, s.drive.dt, partner_values)
        )
        const = complex(
            prefactor * np.sum(kernel_double_sum(omega, s.drive, partner_values))
        )
    return ZExponent(ms, uu, uv, vv, lin_u, lin_v, const)


def z_value(ms, s, conv=DEFAULT_CONVENTION):
    """Z[j] = exp(exponente) para una fuente concreta."""
    total = z_exponent(ms, s, conv).total(s.u_hat, s.v_hat)
    if total.real > EXPONENT_GUARD:
        logger.warning("Exponente de Z fuera de rango (%.1f)", total.real)
    return complex(np.exp(total))

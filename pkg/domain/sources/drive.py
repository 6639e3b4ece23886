"""
Fuentes suaves muestreadas en una malla uniforme de tiempo (j₁ sobre [T0, T]).

Las integrales contra el núcleo de Feynman se hacen con la regla del trapecio
sobre la malla que entrega el usuario; no hay cuadratura adaptativa aquí.
"""

from dataclasses import dataclass, field

import numpy as np

from domain.shared.exceptions import ContractViolation

# Holgura relativa al comparar extremos de la malla con [T0, T]
SPAN_TOLERANCE = 1e-9


def _frozen(array):
    array.flags.writeable = False
    return array


@dataclass(frozen=True)
class SampledDrive:
    """
    Muestras values[j] = j₁(t0 + j·dt). La primera dimensión es el tiempo;
    el resto es libre (un escalar para el oscilador, un vector de modos para
    el campo).
    """

    t0: float
    dt: float
    values: np.ndarray = field(compare=False)

    def __post_init__(self):
        values = np.array(self.values, dtype=complex)
        if self.dt <= 0:
            raise ContractViolation(f"El paso Δt debe ser positivo (recibido {self.dt})")
        if values.ndim == 0 or values.shape[0] < 2:
            raise ContractViolation("La fuente suave necesita al menos 2 muestras")
        object.__setattr__(self, "t0", float(self.t0))
        object.__setattr__(self, "dt", float(self.dt))
        object.__setattr__(self, "values", _frozen(values))

    @property
    def n_samples(self):
        return self.values.shape[0]

    @property
    def t_end(self):
        return self.t0 + (self.n_samples - 1) * self.dt

    @property
    def times(self):
        return self.t0 + self.dt * np.arange(self.n_samples)

    def covers(self, T0, T):
        scale = SPAN_TOLERANCE * max(1.0, abs(T0), abs(T))
        return abs(self.t0 - T0) <= scale and abs(self.t_end - T) <= scale

    def scaled(self, factor):
        return SampledDrive(self.t0, self.dt, self.values * factor)

    def at(self, t):
        """Interpolación lineal de una fuente escalar (la usa el oráculo QM)."""
        if self.values.ndim != 1:
            raise ContractViolation("at() solo admite fuentes escalares")
        return np.interp(t, self.times, self.values.real)

    def to_record(self):
        return {
            "t0": self.t0,
            "dt": self.dt,
            "re": self.values.real.tolist(),
            "im": self.values.imag.tolist(),
        }

    @classmethod
    def from_function(cls, func, T0, T, dt):
        """Muestrea func en una malla uniforme que cubre [T0, T] exactamente."""
        n_steps = int(round((T - T0) / dt))
        if n_steps < 1:
            raise ContractViolation(f"[{T0}, {T}] no admite pasos de {dt}")
        times = np.linspace(T0, T, n_steps + 1)
        return cls(T0, (T - T0) / n_steps, np.asarray(func(times)))


def trapezoid_weights(n_samples, dt):
    weights = np.full(n_samples, dt)
    weights[[0, -1]] = 0.5 * dt
    return weights


def kernel_against_drive(omega, tau_from, drive):
    """
    Σ_j w_j·D(τ_from − t_j; ω)·j₁(t_j) con pesos del trapecio.
    omega puede ser un vector de modos; la última dimensión de drive.values
    debe coincidir con él.
    """
    weights = trapezoid_weights(drive.n_samples, drive.dt)
    omega = np.asarray(omega, dtype=float)
    taus = np.abs(tau_from - drive.times)
    kernel = (-0.5j / omega) * np.exp(-1j * np.multiply.outer(taus, omega))
    weighted = drive.values * weights.reshape((-1,) + (1,) * (drive.values.ndim - 1))
    return np.sum(kernel * weighted, axis=0)


def kernel_double_sum(omega, drive, partner_values=None):
    """
    Σ_ij w_i w_j j₁(t_i)·D(t_i − t_j; ω)·y(t_j) por modo, en O(n) usando que
    D es una fase pura en |t_i − t_j|. y es j₁ salvo que se indique otra serie
    (el campo la contrae con el modo pareja −k).
    """
    weights = trapezoid_weights(drive.n_samples, drive.dt)
    shape = (-1,) + (1,) * (drive.values.ndim - 1)
    x = drive.values * weights.reshape(shape)
    y = x if partner_values is None else partner_values * weights.reshape(shape)
    omega = np.asarray(omega, dtype=float)

    rel_times = drive.times - drive.t0
    phase = np.exp(1j * np.multiply.outer(rel_times, omega))
    # j ≤ i: e^{−iω(t_i − t_j)};  j > i: e^{−iω(t_j − t_i)}
    before = np.cumsum(y * phase, axis=0)
    tail = np.cumsum((y * np.conj(phase))[::-1], axis=0)[::-1]
    after = tail - y * np.conj(phase)
    total = x * (np.conj(phase) * before + phase * after)
    return (-0.5j / omega) * np.sum(total, axis=0)

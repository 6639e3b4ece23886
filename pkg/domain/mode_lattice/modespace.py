"""
Discretización en momentos del campo escalar libre.

En una caja periódica de longitud L el campo se factoriza en N modos
independientes k ∈ {−N/2+1, …, N/2}, con p_k = 2πk/L y ω_k = sqrt(p_k² + m²).
Los arreglos se guardan ordenados por k: la posición i corresponde a
k = i − N/2 + 1.
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from domain.shared.exceptions import ContractViolation, DimensionMismatchError

logger = logging.getLogger(__name__)


def _frozen(array):
    array.flags.writeable = False
    return array


@dataclass(frozen=True)
class ModeSpace:
    num_modes: int
    box_length: float
    mass: float
    hbar: float = 1.0
    indices: np.ndarray = field(repr=False, compare=False, default=None)
    momenta: np.ndarray = field(repr=False, compare=False, default=None)
    frequencies: np.ndarray = field(repr=False, compare=False, default=None)
    partner: np.ndarray = field(repr=False, compare=False, default=None)

    @property
    def k_min(self):
        return -self.num_modes // 2 + 1

    @property
    def k_max(self):
        return self.num_modes // 2

    def position(self, k):
        """Posición en los arreglos del modo k."""
        if not self.k_min <= k <= self.k_max:
            raise ContractViolation(
                f"Modo k={k} fuera de rango [{self.k_min}, {self.k_max}]"
            )
        return int(k - self.k_min)

    def is_nyquist(self, k):
        return k == self.k_max and self.num_modes > 1

    def pairing_matrix(self):
        """Matriz P con P[i, partner(i)] = 1 (simétrica)."""
        pairing = np.zeros((self.num_modes, self.num_modes), dtype=complex)
        pairing[np.arange(self.num_modes), self.partner] = 1.0
        return pairing

    def to_record(self):
        return {
            "num_modes": self.num_modes,
            "box_length": self.box_length,
            "mass": self.mass,
            "hbar": self.hbar,
        }

    @classmethod
    def from_record(cls, record):
        return build_mode_space(
            int(record["num_modes"]),
            float(record["box_length"]),
            float(record["mass"]),
            float(record.get("hbar", 1.0)),
        )


def build_mode_space(num_modes, box_length, mass, hbar=1.0):
    """Construye la red de modos con momentos y frecuencias ya calculados."""
    if int(num_modes) != num_modes or num_modes < 2 or num_modes % 2:
        raise ContractViolation(
            f"num_modes debe ser un entero par ≥ 2 (recibido {num_modes})"
        )
    if box_length <= 0:
        raise ContractViolation(f"box_length debe ser positivo ({box_length})")
    # Sin masa el modo cero tendría ω = 0 y todos los núcleos 1/ω divergen
    if mass <= 0:
        raise ContractViolation(f"La masa debe ser estrictamente positiva ({mass})")
    if hbar <= 0:
        raise ContractViolation(f"hbar debe ser positivo ({hbar})")

    num_modes = int(num_modes)
    indices = np.arange(-num_modes // 2 + 1, num_modes // 2 + 1)
    momenta = 2.0 * np.pi * indices / box_length
    frequencies = np.sqrt(momenta**2 + mass**2)

    # −k reducido al rango; k = 0 y k = N/2 son su propia pareja
    partner_k = -indices
    partner_k[partner_k < indices[0]] += num_modes
    partner = partner_k - indices[0]

    return ModeSpace(
        num_modes=num_modes,
        box_length=float(box_length),
        mass=float(mass),
        hbar=float(hbar),
        indices=_frozen(indices),
        momenta=_frozen(momenta),
        frequencies=_frozen(frequencies),
        partner=_frozen(partner),
    )


def mode_frequency(ms, k):
    return float(ms.frequencies[ms.position(k)])


@dataclass(frozen=True)
class ModeVector:
    """
    Una amplitud compleja por modo. Con reality=True se exige
    amplitud(−k) = conj(amplitud(k)) de forma exacta.
    """

    space: ModeSpace
    amplitudes: np.ndarray = field(compare=False)
    reality: bool = False

    def __post_init__(self):
        values = np.array(self.amplitudes, dtype=complex)
        if values.shape != (self.space.num_modes,):
            raise DimensionMismatchError(
                f"Se esperaban {self.space.num_modes} amplitudes, "
                f"llegaron {values.shape}"
            )
        if self.reality and not np.array_equal(
            values[self.space.partner], np.conj(values)
        ):
            raise ContractViolation(
                "El vector marcado como real no cumple v(−k) = conj(v(k))"
            )
        object.__setattr__(self, "amplitudes", _frozen(values))

    def __getitem__(self, k):
        return self.amplitudes[self.space.position(k)]

    def __len__(self):
        return self.space.num_modes

    def scaled(self, factor):
        # Un factor complejo rompe la condición de realidad
        keep_reality = self.reality and np.isreal(factor)
        return ModeVector(self.space, self.amplitudes * factor, keep_reality)

    def to_record(self):
        return {
            "re": self.amplitudes.real.tolist(),
            "im": self.amplitudes.imag.tolist(),
            "reality": self.reality,
        }

    @classmethod
    def zeros(cls, ms):
        return cls(ms, np.zeros(ms.num_modes, dtype=complex), reality=True)

    @classmethod
    def basis(cls, ms, k, amplitude=1.0):
        if ms.is_nyquist(k):
            logger.warning("Modo k=%s es el modo de Nyquist (sin pareja propia)", k)
        values = np.zeros(ms.num_modes, dtype=complex)
        values[ms.position(k)] = amplitude
        return cls(ms, values)

    @classmethod
    def real_field(cls, ms, values):
        """
        Impone la condición de realidad: conserva k > 0, fija los k < 0 como
        conjugados y deja reales los modos autoapareados (k = 0, k = N/2).
        """
        values = np.array(values, dtype=complex)
        if values.shape != (ms.num_modes,):
            raise DimensionMismatchError(
                f"Se esperaban {ms.num_modes} amplitudes, llegaron {values.shape}"
            )
        result = values.copy()
        negative = ms.indices < 0
        result[negative] = np.conj(values[ms.partner[negative]])
        self_paired = ms.partner == np.arange(ms.num_modes)
        result[self_paired] = values[self_paired].real
        return cls(ms, result, reality=True)

    @classmethod
    def random_real(cls, ms, seed, normalize=True):
        rng = np.random.default_rng(seed)
        raw = rng.uniform(-1, 1, ms.num_modes) + 1j * rng.uniform(-1, 1, ms.num_modes)
        vector = cls.real_field(ms, raw)
        norm = np.linalg.norm(vector.amplitudes)
        if normalize and norm > 0:
            return vector.scaled(1.0 / norm)
        return vector

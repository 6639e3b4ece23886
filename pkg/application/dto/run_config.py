import logging
import math
from dataclasses import asdict, dataclass, field

from django.conf import settings

from domain.mode_lattice import ModeVector, build_mode_space
from domain.oscillator import QMGrid
from domain.shared.exceptions import ContractViolation

logger = logging.getLogger(__name__)

TOLERANCE_KEYS = ("coeff", "second_order", "numeric", "spread", "relation5")


def default_tolerances():
    return {
        "coeff": settings.LAB_TOL_COEFF,
        "second_order": settings.LAB_TOL_SECOND_ORDER,
        "numeric": settings.LAB_TOL_NUMERIC,
        "spread": settings.LAB_TOL_SPREAD,
        "relation5": settings.LAB_TOL_RELATION5,
    }


@dataclass
class RunConfig:
    """
    Configuración de una corrida del laboratorio.

    Se arma en capas: valores de settings < archivo JSON < flags de la línea
    de comandos. La validación de campos la hace RunConfigForm.
    """

    subcommand: str
    num_modes: int = 16
    box_length: float = 2 * math.pi
    mass: float = 1.0
    hbar: float = 1.0
    times: list = field(default_factory=lambda: [1.0])
    v_hat_preset: str = "single"
    v_hat_mode: int = 1
    seed: int = 0
    q_min: float = -12.0
    q_max: float = 12.0
    qm_points: int = 1024
    qm_dt: float = 1e-3
    drive_path: str = None
    tolerances: dict = field(default_factory=dict)
    out: str = "reports"
    u_samples: int = 16
    fd_step: float = 1e-4
    partition_total: float = 3.0
    partitions: int = 10
    xlsx: bool = False
    # Ejes del barrido; None usa la malla de aceptación
    sweep_modes: list = None
    sweep_masses: list = None
    sweep_times: list = None

    def __post_init__(self):
        merged = default_tolerances()
        merged.update(self.tolerances or {})
        unknown = set(merged) - set(TOLERANCE_KEYS)
        if unknown:
            raise ContractViolation(f"Tolerancias desconocidas: {sorted(unknown)}")
        self.tolerances = merged

    @classmethod
    def defaults(cls):
        """Valores de settings (sobrescribibles por entorno vía decouple)."""
        return {
            "num_modes": settings.LAB_NUM_MODES,
            "box_length": settings.LAB_BOX_LENGTH,
            "mass": settings.LAB_MASS,
            "hbar": settings.LAB_HBAR,
            "times": [settings.LAB_TIME],
            "seed": settings.LAB_DEFAULT_SEED,
            "q_min": settings.LAB_QM_Q_MIN,
            "q_max": settings.LAB_QM_Q_MAX,
            "qm_points": settings.LAB_QM_POINTS,
            "qm_dt": settings.LAB_QM_DT,
            "out": settings.LAB_OUTPUT_DIR,
            "tolerances": default_tolerances(),
        }

    @staticmethod
    def layered(file_values=None, flag_values=None):
        """
        Combina defaults, archivo y flags. Las tolerancias se mezclan por
        clave; los flags con valor None no pisan nada.
        """
        merged = RunConfig.defaults()
        for layer in (file_values or {}, flag_values or {}):
            for key, value in layer.items():
                if value is None:
                    continue
                if key == "tolerances":
                    merged["tolerances"] = dict(merged["tolerances"], **value)
                else:
                    merged[key] = value
        return merged

    def mode_space(self, mass=None, num_modes=None):
        return build_mode_space(
            num_modes or self.num_modes, self.box_length, mass or self.mass, self.hbar
        )

    def qm_grid(self, omega=1.0):
        return QMGrid(
            self.q_min, self.q_max, self.qm_points, self.qm_dt, omega, self.hbar
        )

    def v_hat(self, ms):
        if self.v_hat_preset == "zero":
            return ModeVector.zeros(ms)
        if self.v_hat_preset == "random":
            return ModeVector.random_real(ms, self.seed)
        k = self.v_hat_mode
        if not ms.k_min <= k <= ms.k_max:
            # En el barrido N=2 no contiene el modo pedido
            logger.warning(
                "v̂: el modo k=%s no existe en la red N=%s [%s, %s]; se usa k=0",
                k, ms.num_modes, ms.k_min, ms.k_max,
            )
            k = 0
        return ModeVector.basis(ms, k)

    def to_record(self):
        return asdict(self)

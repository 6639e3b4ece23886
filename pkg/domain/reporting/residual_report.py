import math
from dataclasses import dataclass, field

from domain.shared.constants import VERDICT_CHOICES

PASS, FAIL, INCONCLUSIVE = (choice for choice, _ in VERDICT_CHOICES)

# Medidas propias del informe; cualquier otra medida juzgada va en extras
JUDGEABLE = ("max_q2", "max_q1", "spread", "fd_residual")


def _json_value(value):
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    if isinstance(value, dict):
        return {key: _json_value(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_value(item) for item in value]
    if hasattr(value, "tolist"):
        return _json_value(value.tolist())
    return value


@dataclass(frozen=True)
class ResidualReport:
    """
    Resultado estructurado de la verificación de una identidad.

    Solo se juzgan las medidas con tolerancia declarada, propias o en extras;
    Q0 nunca se juzga. Una medida juzgada ausente deja el
    veredicto como "inconclusive".
    """

    name: str
    verdict: str
    max_q2: float = None
    max_q1: float = None
    q0: complex = None
    spread: float = None
    fd_residual: float = None
    params: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=dict)
    extras: dict = field(default_factory=dict)
    seed: int = None

    @property
    def passed(self):
        return self.verdict == PASS

    @classmethod
    def judge(cls, name, tolerances, params=None, extras=None, seed=None, **measures):
        unknown = set(measures) - set(JUDGEABLE) - {"q0"}
        if unknown:
            raise TypeError(f"Medidas desconocidas: {sorted(unknown)}")

        extras = dict(extras or {})
        verdict = PASS
        for key, tol in tolerances.items():
            value = measures.get(key, extras.get(key))
            if value is None or math.isnan(value):
                verdict = INCONCLUSIVE
                break
            if not value < tol:
                verdict = FAIL

        return cls(
            name=name,
            verdict=verdict,
            params=dict(params or {}),
            tolerances=dict(tolerances),
            extras=extras,
            seed=seed,
            **measures,
        )

    def to_record(self):
        return {
            "identity": self.name,
            "verdict": self.verdict,
            "max_q2": self.max_q2,
            "max_q1": self.max_q1,
            "q0": _json_value(self.q0),
            "spread": self.spread,
            "fd_residual": self.fd_residual,
            "params": _json_value(self.params),
            "tolerances": self.tolerances,
            "extras": _json_value(self.extras),
            "seed": self.seed,
        }

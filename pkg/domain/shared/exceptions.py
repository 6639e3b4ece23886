class LabError(Exception):
    """Error base del laboratorio. La CLI lo traduce a un CommandError."""


class ContractViolation(LabError, ValueError):
    """Argumentos fuera de contrato (precondiciones de una operación)."""


class DimensionMismatchError(ContractViolation):
    pass


class UnderResolvedGridError(LabError):
    """La malla de cuadratura no resuelve la región del polo (espaciado > ε/4)."""

    def __init__(self, spacing, limit):
        self.spacing = spacing
        self.limit = limit
        super().__init__(
            f"Región del polo sin resolver: espaciado {spacing:.3e} > {limit:.3e}"
        )


class BandLimitError(ContractViolation):
    """Momentos fuera de la banda que resuelve la malla en q."""


class BoundaryLeakError(LabError):
    """El estado evolucionado llega a los bordes: hay que agrandar la malla."""

    def __init__(self, amplitude, threshold):
        self.amplitude = amplitude
        super().__init__(
            f"Amplitud en el borde {amplitude:.3e} > {threshold:.1e}; "
            "amplía q_min/q_max"
        )


class ConvergenceError(LabError):
    pass


class CalibrationError(LabError):
    pass

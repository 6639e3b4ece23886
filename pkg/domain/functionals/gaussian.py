"""
Álgebra exacta de funcionales gaussianos complejos

    Φ(u) = exp(Σ_{k,k'} A_{kk'} u_k u_{k'} + Σ_k b_k u_k + c)

La forma cuadrática recorre TODOS los pares ordenados (cada par no ordenado
cuenta dos veces por simetría), de modo que ∂Φ/∂u_k = (2(Au)_k + b_k)·Φ.
Los operadores diferenciales se aplican a nivel de coeficientes y devuelven
el polinomio (LΦ)/Φ = uᵀQ2u + Q1·u + Q0.
"""

from dataclasses import dataclass, field

import numpy as np

from domain.shared.exceptions import ContractViolation, DimensionMismatchError

# Mayor parte real con exp() representable en float64; hacia −∞ exp() tiende a 0
EXPONENT_GUARD = float(np.log(np.finfo(float).max))


def _symmetric(matrix):
    matrix = np.asarray(matrix, dtype=complex)
    return 0.5 * (matrix + matrix.T)


def _values(u):
    return np.asarray(getattr(u, "amplitudes", u), dtype=complex)


def _complex_record(array):
    array = np.asarray(array, dtype=complex)
    return {"re": array.real.tolist(), "im": array.imag.tolist()}


@dataclass(frozen=True)
class GaussianCoefficients:
    A: np.ndarray = field(compare=False)
    b: np.ndarray = field(compare=False)
    c: complex = 0j

    def __post_init__(self):
        A = _symmetric(self.A)
        b = np.asarray(self.b, dtype=complex)
        if A.ndim != 2 or A.shape[0] != A.shape[1] or b.shape != (A.shape[0],):
            raise DimensionMismatchError(
                f"Dimensiones incompatibles: A{A.shape}, b{b.shape}"
            )
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", complex(self.c))

    @property
    def dim(self):
        return self.b.shape[0]

    def to_record(self):
        return {
            "A": _complex_record(self.A),
            "b": _complex_record(self.b),
            "c": {"re": self.c.real, "im": self.c.imag},
        }

    @classmethod
    def zero(cls, dim):
        return cls(np.zeros((dim, dim)), np.zeros(dim), 0j)


@dataclass(frozen=True)
class QuadraticPolynomial:
    """uᵀQ2u + Q1·u + Q0, resultado de (LΦ)/Φ para un operador L."""

    Q2: np.ndarray = field(compare=False)
    Q1: np.ndarray = field(compare=False)
    Q0: complex = 0j

    def __post_init__(self):
        object.__setattr__(self, "Q2", _symmetric(self.Q2))
        object.__setattr__(self, "Q1", np.asarray(self.Q1, dtype=complex))
        object.__setattr__(self, "Q0", complex(self.Q0))

    def __call__(self, u):
        u = _values(u)
        return complex(u @ self.Q2 @ u + self.Q1 @ u + self.Q0)

    def __sub__(self, other):
        return QuadraticPolynomial(
            self.Q2 - other.Q2, self.Q1 - other.Q1, self.Q0 - other.Q0
        )

    @property
    def max_q2(self):
        return float(np.max(np.abs(self.Q2))) if self.Q2.size else 0.0

    @property
    def max_q1(self):
        return float(np.max(np.abs(self.Q1))) if self.Q1.size else 0.0

    @classmethod
    def linear(cls, q1):
        q1 = np.asarray(q1, dtype=complex)
        return cls(np.zeros((q1.size, q1.size)), q1, 0j)


def _check_dim(g, u):
    if u.shape != (g.dim,):
        raise DimensionMismatchError(f"u tiene forma {u.shape}, se esperaba ({g.dim},)")


def exponent(g, u):
    u = _values(u)
    _check_dim(g, u)
    return complex(u @ g.A @ u + g.b @ u + g.c)


def evaluate(g, u):
    s = exponent(g, u)
    if s.real > EXPONENT_GUARD:
        raise OverflowError(
            f"Exponente {s.real:.1f} fuera de rango; usa exponent() o ratio()"
        )
    return complex(np.exp(s))


def ratio(numerator, denominator, u):
    """Φ₁(u)/Φ₂(u) calculado en el dominio logarítmico."""
    return complex(np.exp(exponent(numerator, u) - exponent(denominator, u)))


def gradient_at(g, u):
    u = _values(u)
    _check_dim(g, u)
    return (2.0 * g.A @ u + g.b) * evaluate(g, u)


def apply_first_order(g, weights, shift):
    """(Σ_k u_k w_k ∂/∂u_k + Σ s_{kk'} u_k u_{k'}) Φ / Φ."""
    weights = np.asarray(weights, dtype=complex)
    shift = np.asarray(shift, dtype=complex)
    if weights.shape != (g.dim,) or shift.shape != g.A.shape:
        raise DimensionMismatchError("Pesos o acoplamiento con dimensión incorrecta")
    q2 = 2.0 * weights[:, None] * g.A + shift
    return QuadraticPolynomial(q2, weights * g.b, 0j)


def apply_second_order(g, curvature, potential):
    """
    (Σ q_{kk'} u_k u_{k'} + Σ c_{kk'} ∂²/∂u_k∂u_{k'}) Φ / Φ, usando
    ∂∂e^S = (∂S ∂S + ∂∂S) e^S con ∂S = 2Au + b y ∂∂S = 2A.
    """
    curvature = _symmetric(curvature)
    potential = np.asarray(potential, dtype=complex)
    if curvature.shape != g.A.shape or potential.shape != g.A.shape:
        raise DimensionMismatchError("Curvatura o potencial con dimensión incorrecta")
    q2 = potential + 4.0 * g.A @ curvature @ g.A
    q1 = 4.0 * g.A @ curvature @ g.b
    q0 = g.b @ curvature @ g.b + normal_ordering_trace(g, curvature)
    return QuadraticPolynomial(q2, q1, q0)


def normal_ordering_trace(g, curvature):
    """tr(c·2A): la constante que el orden normal descarta."""
    return complex(np.trace(_symmetric(curvature) @ (2.0 * g.A)))


def rescale(g, factor):
    """u → λu: A → λ²A, b → λb, c intacto."""
    if factor == 0:
        raise ContractViolation("El factor de reescalado no puede ser 0")
    return GaussianCoefficients(g.A * factor**2, g.b * factor, g.c)

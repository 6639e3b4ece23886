"""
Núcleo de Feynman de un modo: D(τ; ω) = (1/2π) ∫ dE e^{σiEτ} / (E² − ω² + iε).

La forma cerrada usa el límite exacto ε → 0⁺ (evaluación por contorno):
D(τ; ω) = −(i / 2ω) e^{−iω|τ|}. La cuadratura existe solo como oráculo.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import sici

from domain.shared.exceptions import ContractViolation, UnderResolvedGridError

PANEL_NODES = 16


@dataclass(frozen=True)
class KernelConvention:
    """Signo σ de la transformada en energía; la normalización 1/2π es fija."""

    sigma: int = 1

    def __post_init__(self):
        if self.sigma * self.sigma != 1:
            raise ContractViolation(f"σ debe ser ±1 (recibido {self.sigma})")

    def flipped(self):
        return KernelConvention(-self.sigma)


DEFAULT_CONVENTION = KernelConvention()


def feynman_kernel_closed(omega, tau, conv=DEFAULT_CONVENTION):
    """
    −(i/2ω)·e^{−iω|τ|}. Acepta escalares o arreglos de τ; el resultado no
    depende de σ porque solo entra |τ|.
    """
    if np.any(np.asarray(omega) <= 0):
        raise ContractViolation(f"ω debe ser positiva (recibido {omega})")
    return -0.5j / omega * np.exp(-1j * omega * np.abs(tau))


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    truncated_value: complex
    tail_estimate: complex
    pole_spacing: float
    n_nodes: int


@lru_cache(maxsize=16)
def _legendre(n):
    return np.polynomial.legendre.leggauss(n)


def _panel_nodes(a, b, max_width):
    """Nodos y pesos de Gauss–Legendre compuesto sobre [a, b]."""
    if b <= a:
        return np.empty(0), np.empty(0)
    n_panels = max(1, math.ceil((b - a) / max_width))
    edges = np.linspace(a, b, n_panels + 1)
    x, w = _legendre(PANEL_NODES)
    half = 0.5 * np.diff(edges)[:, None]
    mid = 0.5 * (edges[:-1] + edges[1:])[:, None]
    return (mid + half * x).ravel(), (half * w).ravel()


def _tail(omega, tau, eps, e_cut):
    """
    (1/2π)·2∫_{E_cut}^∞ cos(Eτ)/(E² − ω² + iε) dE con los dos primeros
    términos de 1/E² + (ω² − iε)/E⁴.
    """
    t = abs(tau)
    if t == 0:
        leading = 1.0 / e_cut
        correction = (omega**2 - 1j * eps) / (3.0 * e_cut**3)
    else:
        si, _ = sici(t * e_cut)
        leading = math.cos(t * e_cut) / e_cut - t * (0.5 * math.pi - si)
        correction = 0.0
    return (leading + correction) / math.pi


def feynman_kernel_quadrature(
    omega, tau, eps, e_cut, n_points=256, conv=DEFAULT_CONVENTION
):
    """
    Estima la integral regularizada con ε finito.

    La parte impar σ·i·sin(Eτ) se anula sobre el intervalo simétrico, así que
    se integra 2∫_0^{E_cut} cos(Eτ)/(E² − ω² + iε). Alrededor de E = ω hay una
    ventana de semiancho ω/2 con n_points nodos de Gauss–Legendre en la
    variable s, E = ω + δ·sinh(s), δ = ε/2ω (ancho del polo). El resto se
    cubre con paneles de 16 nodos. La cola más allá de E_cut se estima
    analíticamente y se suma al valor devuelto.
    """
    if omega <= 0 or eps <= 0:
        raise ContractViolation("ω y ε deben ser positivos")
    half_window = 0.5 * omega
    if e_cut <= omega + half_window:
        raise ContractViolation(f"E_cut={e_cut} debe superar 1.5·ω={1.5 * omega}")
    if n_points < 2:
        raise ContractViolation("n_points debe ser ≥ 2")

    pole_width = eps / (2.0 * omega)
    s_max = math.asinh(half_window / pole_width)
    x, w = _legendre(int(n_points))
    s = s_max * x
    offset = pole_width * np.sinh(s)
    window_weights = s_max * w * pole_width * np.cosh(s)

    centre = int(np.argmin(np.abs(offset)))
    gaps = np.diff(offset)[max(centre - 1, 0) : centre + 1]
    spacing = float(np.max(gaps)) if gaps.size else float("inf")
    if spacing > eps / 4.0:
        raise UnderResolvedGridError(spacing, eps / 4.0)

    e_window = omega + offset
    denominator = offset * (2 * omega + offset) + 1j * eps
    window_sum = np.sum(window_weights * np.cos(e_window * tau) / denominator)

    max_width = half_window if tau == 0 else min(half_window, 1.0 / abs(tau))
    e_left, w_left = _panel_nodes(0.0, omega - half_window, max_width)
    e_right, w_right = _panel_nodes(omega + half_window, e_cut, max_width)
    e_panels = np.concatenate([e_left, e_right])
    w_panels = np.concatenate([w_left, w_right])
    panel_sum = np.sum(
        w_panels * np.cos(e_panels * tau) / (e_panels**2 - omega**2 + 1j * eps)
    )

    truncated = (window_sum + panel_sum) / math.pi
    tail = _tail(omega, tau, eps, e_cut)
    return QuadratureResult(
        value=complex(truncated + tail),
        truncated_value=complex(truncated),
        tail_estimate=complex(tail),
        pole_spacing=spacing,
        n_nodes=int(n_points) + e_panels.size,
    )


def richardson_extrapolate(eps_values, estimates):
    """Extrapolación polinómica a ε = 0 (tabla de Neville)."""
    eps = [float(e) for e in eps_values]
    table = [complex(v) for v in estimates]
    if len(eps) != len(table) or not table:
        raise ContractViolation("Se necesitan tantos ε como estimaciones")
    for level in range(1, len(table)):
        for i in range(len(table) - level):
            j = i + level
            table[i] = (eps[i] * table[i + 1] - eps[j] * table[i]) / (eps[i] - eps[j])
    return table[0]


def refinement_study(
    omega, tau, eps_values=(1e-2, 1e-3, 1e-4), cut_factor=1e3, n_points=256
):
    """Serie de errores frente a ε y el valor extrapolado."""
    exact = complex(feynman_kernel_closed(omega, tau))
    estimates = [
        feynman_kernel_quadrature(omega, tau, eps, cut_factor * omega, n_points).value
        for eps in eps_values
    ]
    extrapolated = richardson_extrapolate(eps_values, estimates)
    return {
        "exact": exact,
        "eps": list(eps_values),
        "estimates": estimates,
        "errors": [abs(v - exact) for v in estimates],
        "extrapolated": extrapolated,
        "extrapolated_error": abs(extrapolated - exact),
    }

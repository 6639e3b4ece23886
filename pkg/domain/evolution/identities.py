"""
Lados de las dos ecuaciones de evolución, como polinomios (LΦ)/Φ:

  primer orden   i h ∂_T Φ = Σ_k û_k (c1 h ω_k ∂/∂û_k − c2 û_{−k}) Φ
  Schrödinger    i h ∂_T Φ = H_σ Φ,
                 H_σ = σ·½ Σ_k [û_k û_{−k} − h² ω_k² ∂²/∂û_k∂û_{−k}]

Φ solo depende de T a través de b (b_k ∝ e^{−iω_k T}), por lo que el lado
temporal es exactamente Q1 = h ω ∘ b.
"""

import numpy as np

from domain.functionals.gaussian import (
    GaussianCoefficients,
    QuadraticPolynomial,
    apply_first_order,
    apply_second_order,
)


def time_side(st):
    ms = st.space
    return QuadraticPolynomial.linear(ms.hbar * ms.frequencies * st.g.b)


def first_order_side(st, c1=1.0, c2=1.0):
    ms = st.space
    return apply_first_order(
        st.g, c1 * ms.hbar * ms.frequencies, -c2 * ms.pairing_matrix()
    )


def first_order_residual(st, c1=1.0, c2=1.0):
    return time_side(st) - first_order_side(st, c1, c2)


def hamiltonian_terms(ms, sigma):
    """(curvatura, potencial) de H_σ en la base de modos."""
    pairing = ms.pairing_matrix()
    curvature = -0.5 * sigma * ms.hbar**2 * (ms.frequencies**2)[:, None] * pairing
    potential = 0.5 * sigma * pairing
    return curvature, potential


def hamiltonian_side(st, sigma):
    curvature, potential = hamiltonian_terms(st.space, sigma)
    return apply_second_order(st.g, curvature, potential)


def schrodinger_residual(st, sigma):
    """R = (i h ∂_T − H_σ)Φ/Φ; su parte constante es g(T)."""
    return time_side(st) - hamiltonian_side(st, sigma)


def phase_rotated(st, delta_T):
    """Coeficientes de Φ(T + ΔT) para cualquier signo de ΔT."""
    phase = np.exp(-1j * st.space.frequencies * delta_T)
    return GaussianCoefficients(st.g.A, st.g.b * phase, st.g.c)


def achieved_constants(st):
    """
    (c1, c2) que de verdad satisface Φ. La parte lineal escala igual a ambos
    lados bajo û → λû, así que c1 = 1; c2 sale de los emparejamientos (k, −k).
    """
    ms = st.space
    c1 = 1.0 + 0j
    pair_entries = st.g.A[np.arange(ms.num_modes), ms.partner]
    c2 = complex(np.mean(2.0 * c1 * ms.hbar * ms.frequencies * pair_entries))
    return c1, c2

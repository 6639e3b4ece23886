import logging

import numpy as np

from domain.evolution import advance, evolution_functional
from domain.evolution import identities
from domain.functionals import (
    GaussianCoefficients,
    evaluate,
    exponent,
    gradient_at,
    normal_ordering_trace,
)
from domain.propagation import DEFAULT_CONVENTION
from domain.reporting import ResidualReport
from domain.shared.constants import (
    TOL_COEFF,
    TOL_NUMERIC,
    TOL_SECOND_ORDER,
    TOL_SPREAD,
)
from domain.shared.exceptions import ContractViolation

logger = logging.getLogger(__name__)

DEFAULT_U_SAMPLES = 16
DEFAULT_FD_STEP = 1e-4
GRADIENT_STEP = 1e-5


def random_mode_samples(count, dim, seed, scale=1.0):
    """Partes real e imaginaria independientes, uniformes en [−1, 1]."""
    rng = np.random.default_rng(seed)
    real = rng.uniform(-1.0, 1.0, (count, dim))
    imag = rng.uniform(-1.0, 1.0, (count, dim))
    return scale * (real + 1j * imag)


def state_params(st):
    ms = st.space
    return {
        "N": ms.num_modes,
        "m": ms.mass,
        "L": ms.box_length,
        "T": st.T,
        "h": ms.hbar,
        "lambda": st.calibration.lam,
        "sigma": st.calibration.sigma,
    }


def central_difference_side(st, samples, delta_T):
    """i h ∂_T Φ/Φ por diferencias centrales, en el dominio logarítmico."""
    forward = identities.phase_rotated(st, delta_T)
    backward = identities.phase_rotated(st, -delta_T)
    values = []
    for u in samples:
        base = exponent(st.g, u)
        step_up = np.exp(exponent(forward, u) - base)
        step_down = np.exp(exponent(backward, u) - base)
        values.append(1j * st.space.hbar * (step_up - step_down) / (2.0 * delta_T))
    return np.array(values)


def time_derivative_side(st, samples, delta_T):
    """Richardson sobre diferencias centrales de paso dT y dT/2: error O((ω dT)⁴)."""
    coarse = central_difference_side(st, samples, delta_T)
    fine = central_difference_side(st, samples, 0.5 * delta_T)
    return (4.0 * fine - coarse) / 3.0


class VerificationService:

    @staticmethod
    def residual_eq14(
        st,
        tol_coeff=TOL_COEFF,
        tol_numeric=TOL_NUMERIC,
        u_samples=DEFAULT_U_SAMPLES,
        dT=DEFAULT_FD_STEP,
        seed=0,
        c1=1.0,
        c2=1.0,
        u_scale=1.0,
    ):
        """Ecuación de primer orden: coeficientes exactos y diferencias en T"""
        residual = identities.first_order_residual(st, c1, c2)
        rhs = identities.first_order_side(st, c1, c2)

        samples = random_mode_samples(u_samples, st.space.num_modes, seed, u_scale)
        lhs_values = time_derivative_side(st, samples, dT)
        fd_residual = max(
            (
                abs(lhs - rhs(u)) / max(abs(rhs(u)), 1.0)
                for lhs, u in zip(lhs_values, samples)
            ),
            default=0.0,
        )

        achieved = identities.achieved_constants(st)
        report = ResidualReport.judge(
            "eq14",
            {"max_q2": tol_coeff, "max_q1": tol_coeff, "fd_residual": tol_numeric},
            params=dict(state_params(st), c1=c1, c2=c2, dT=dT, u_samples=u_samples),
            extras={"achieved_c1": achieved[0], "achieved_c2": achieved[1]},
            seed=seed,
            max_q2=residual.max_q2,
            max_q1=residual.max_q1,
            q0=residual.Q0,
            fd_residual=float(fd_residual),
        )
        logger.info(
            "eq14 T=%s N=%s: %s (Q2=%.1e Q1=%.1e fd=%.1e)",
            st.T, st.space.num_modes, report.verdict,
            report.max_q2, report.max_q1, report.fd_residual,
        )
        return report

    @staticmethod
    def residual_eq13(
        st,
        tol_second_order=TOL_SECOND_ORDER,
        tol_spread=TOL_SPREAD,
        tol_numeric=TOL_NUMERIC,
        u_samples=DEFAULT_U_SAMPLES,
        dT=DEFAULT_FD_STEP,
        seed=0,
    ):
        """
        Schrödinger normal-ordenada. Q0 del residuo es g(T): se informa sin
        juzgar, junto con la identidad de orden normal −Q0 − bcb = tr(c·2A).
        """
        sigma = st.calibration.sigma
        residual = identities.schrodinger_residual(st, sigma)
        hamiltonian = identities.hamiltonian_side(st, sigma)
        curvature, _ = identities.hamiltonian_terms(st.space, sigma)

        trace = normal_ordering_trace(st.g, curvature)
        b_part = complex(st.g.b @ curvature @ st.g.b)
        ordering_deviation = abs(-residual.Q0 - b_part - trace)

        samples = random_mode_samples(u_samples, st.space.num_modes, seed)
        g_of_T = residual.Q0
        scale = max(abs(g_of_T), 1.0)
        spread = max(
            (abs(residual(u) - g_of_T) / scale for u in samples), default=0.0
        )

        lhs_values = time_derivative_side(st, samples, dT)
        fd_residual = max(
            (
                abs(lhs - hamiltonian(u) - g_of_T) / max(abs(hamiltonian(u)), 1.0)
                for lhs, u in zip(lhs_values, samples)
            ),
            default=0.0,
        )

        report = ResidualReport.judge(
            "eq13",
            {
                "max_q2": tol_second_order,
                "max_q1": tol_second_order,
                "spread": tol_spread,
                "fd_residual": tol_numeric,
            },
            params=dict(state_params(st), dT=dT, u_samples=u_samples),
            extras={
                "normal_ordering_trace": trace,
                "normal_ordering_deviation": ordering_deviation,
            },
            seed=seed,
            max_q2=residual.max_q2,
            max_q1=residual.max_q1,
            q0=g_of_T,
            spread=float(spread),
            fd_residual=float(fd_residual),
        )
        logger.info(
            "eq13 T=%s N=%s σ=%s: %s (Q2=%.1e Q1=%.1e spread=%.1e)",
            st.T, st.space.num_modes, sigma, report.verdict,
            report.max_q2, report.max_q1, report.spread,
        )
        return report

    @staticmethod
    def gradient_check(g, u_samples=DEFAULT_U_SAMPLES, step=GRADIENT_STEP, seed=0):
        """Máximo error relativo entre gradient_at y diferencias centrales"""
        if step <= 0:
            raise ContractViolation(f"El paso debe ser positivo (recibido {step})")
        worst = 0.0
        for u in random_mode_samples(u_samples, g.dim, seed):
            analytic = gradient_at(g, u)
            numeric = np.empty(g.dim, dtype=complex)
            for k in range(g.dim):
                shift = np.zeros(g.dim)
                shift[k] = step
                numeric[k] = (evaluate(g, u + shift) - evaluate(g, u - shift)) / (
                    2.0 * step
                )
            scale = max(float(np.max(np.abs(analytic))), np.finfo(float).tiny)
            worst = max(worst, float(np.max(np.abs(numeric - analytic))) / scale)
        return worst

    @staticmethod
    def step_sweep(g, steps=(1e-3, 1e-5, 1e-7), u_samples=DEFAULT_U_SAMPLES, seed=0):
        """Curva error vs paso: truncamiento a la izquierda, redondeo a la derecha"""
        sweep = []
        for step in steps:
            error = VerificationService.gradient_check(g, u_samples, step, seed)
            sweep.append({"step": step, "error": error})
        return sweep

    @staticmethod
    def semigroup_check(ms, v_hat, partition, calib=None, conv=DEFAULT_CONVENTION):
        """Máxima desviación de coeficientes entre avanzar por partes y evaluar directo"""
        if any(step < 0 for step in partition):
            raise ContractViolation("La partición no admite pasos negativos")
        total = float(sum(partition))
        state = evolution_functional(ms, v_hat, 0.0, conv, calib)
        for step in partition:
            state = advance(state, step)
        direct = evolution_functional(ms, v_hat, total, conv, calib)
        return max(
            float(np.max(np.abs(state.g.A - direct.g.A))),
            float(np.max(np.abs(state.g.b - direct.g.b))),
            abs(state.g.c - direct.g.c),
        )

    @staticmethod
    def random_partitions(total, count, seed, max_pieces=6):
        """count particiones aleatorias de total (cortes uniformes ordenados)"""
        rng = np.random.default_rng(seed)
        partitions = []
        for _ in range(count):
            cuts = np.sort(rng.uniform(0.0, total, rng.integers(1, max_pieces)))
            edges = np.concatenate([[0.0], cuts, [total]])
            partitions.append(np.diff(edges).tolist())
        return partitions

    @staticmethod
    def semigroup_report(
        ms, v_hat, total=3.0, count=10, seed=0, calib=None, tol=TOL_COEFF
    ):
        """Peor desviación sobre count particiones aleatorias, más la partición trivial"""
        partitions = [[total]]
        partitions += VerificationService.random_partitions(total, count, seed)
        deviations = [
            VerificationService.semigroup_check(ms, v_hat, partition, calib)
            for partition in partitions
        ]
        report = ResidualReport.judge(
            "semigroup",
            {"max_deviation": tol},
            params=dict(ms.to_record(), total=total, partitions=len(partitions)),
            extras={"deviations": deviations, "max_deviation": max(deviations)},
            seed=seed,
        )
        logger.info("semigroup T=%s: %s (%.1e)", total, report.verdict, max(deviations))
        return report

    @staticmethod
    def evolution_structure(ms, v_hat, times, calib=None, tol=TOL_COEFF):
        """
        A idéntica entre tiempos (igualdad exacta) y b_k(T)/b_k(0) = e^{−iω_k T}
        en los modos donde b(0) no se anula.
        """
        base = evolution_functional(ms, v_hat, 0.0, calib=calib)
        states = [evolution_functional(ms, v_hat, T, calib=calib) for T in times]
        a_identical = all(np.array_equal(st.g.A, base.g.A) for st in states)

        support = np.abs(base.g.b) > 0
        phase_error = 0.0
        for st in states:
            if not support.any():
                break
            expected = np.exp(-1j * ms.frequencies[support] * st.T)
            measured = st.g.b[support] / base.g.b[support]
            phase_error = max(phase_error, float(np.max(np.abs(measured - expected))))

        # A·ω debe ser la misma constante en todos los modos
        a_pair = np.diag(base.g.A @ ms.pairing_matrix())
        a_omega = a_pair * ms.frequencies
        a_law = float(np.max(np.abs(a_omega - a_omega[0])) / abs(a_omega[0]))

        report = ResidualReport.judge(
            "evolution-structure",
            {"a_t_deviation": tol, "b_phase_error": tol, "a_omega_spread": tol},
            params=dict(ms.to_record(), times=list(times)),
            extras={
                "a_t_deviation": 0.0 if a_identical else 1.0,
                "b_phase_error": phase_error,
                "a_omega_spread": a_law,
                "a_omega": complex(a_omega[0]),
            },
        )
        logger.info("evolution-structure: %s", report.verdict)
        return report

    @staticmethod
    def random_coefficients(dim, seed, scale=0.1):
        rng = np.random.default_rng(seed)
        shape = (dim, dim)
        A = scale * (rng.uniform(-1, 1, shape) + 1j * rng.uniform(-1, 1, shape))
        b = 5 * scale * (rng.uniform(-1, 1, dim) + 1j * rng.uniform(-1, 1, dim))
        return GaussianCoefficients(A, b, complex(rng.uniform(-1, 1)))

    @staticmethod
    def gradient_report(
        dim=8, count=16, seed=0, step=GRADIENT_STEP, tol=TOL_NUMERIC, u_samples=4
    ):
        """gradient_check sobre count juegos aleatorios de coeficientes"""
        errors = [
            VerificationService.gradient_check(
                VerificationService.random_coefficients(dim, seed + i),
                u_samples,
                step,
                seed + i,
            )
            for i in range(count)
        ]
        sweep = VerificationService.step_sweep(
            VerificationService.random_coefficients(dim, seed), u_samples=u_samples
        )
        report = ResidualReport.judge(
            "gradient",
            {"max_relative_error": tol},
            params={"dim": dim, "count": count, "step": step},
            extras={"max_relative_error": max(errors), "step_sweep": sweep},
            seed=seed,
        )
        logger.info("gradient: %s (%.1e)", report.verdict, max(errors))
        return report

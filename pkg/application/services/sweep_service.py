import logging

from domain.evolution import calibrate, evolution_functional
from domain.reporting import PASS
from domain.shared.constants import SWEEP_MASSES, SWEEP_MODES, SWEEP_TIMES

from .verification_service import VerificationService

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = [
    "N",
    "m",
    "L",
    "T",
    "h",
    "lambda_re",
    "lambda_im",
    "sigma",
    "eq14_max_q2",
    "eq14_max_q1",
    "eq14_fd_residual",
    "eq13_max_q2",
    "eq13_max_q1",
    "eq13_spread",
    "eq13_fd_residual",
    "g_re",
    "g_im",
    "normal_ordering_deviation",
    "verdict",
]


class SweepService:
    """Barrido de ambas ecuaciones sobre (N, m, T); una calibración por (N, m)."""

    @staticmethod
    def grid(modes=None, masses=None, times=None):
        """Sin valores explícitos se usa la malla de aceptación."""
        modes = modes or SWEEP_MODES
        masses = masses or SWEEP_MASSES
        times = times or SWEEP_TIMES
        return [(n, m, t) for n in modes for m in masses for t in times]

    @staticmethod
    def run(config):
        """Devuelve (filas, informes); una fila por punto de la malla."""
        modes, masses, times = (
            config.sweep_modes, config.sweep_masses, config.sweep_times
        )
        rows, reports = [], []
        calibrations = {}
        tol = config.tolerances
        for num_modes, mass, T in SweepService.grid(modes, masses, times):
            key = (num_modes, mass)
            ms = config.mode_space(mass=mass, num_modes=num_modes)
            if key not in calibrations:
                calibrations[key] = calibrate(ms)
            calib = calibrations[key]

            st = evolution_functional(ms, config.v_hat(ms), T, calib=calib)
            eq14 = VerificationService.residual_eq14(
                st,
                tol["coeff"],
                tol["numeric"],
                config.u_samples,
                config.fd_step,
                config.seed,
            )
            eq13 = VerificationService.residual_eq13(
                st,
                tol["second_order"],
                tol["spread"],
                tol["numeric"],
                config.u_samples,
                config.fd_step,
                config.seed,
            )
            reports.extend([eq14, eq13])
            rows.append(SweepService._row(ms, T, calib, eq14, eq13))

        failed = sum(row["verdict"] != PASS for row in rows)
        logger.info("Barrido: %s puntos, %s fallidos", len(rows), failed)
        return rows, reports

    @staticmethod
    def _row(ms, T, calib, eq14, eq13):
        verdict = next((r.verdict for r in (eq14, eq13) if not r.passed), PASS)
        return {
            "N": ms.num_modes,
            "m": ms.mass,
            "L": ms.box_length,
            "T": float(T),
            "h": ms.hbar,
            "lambda_re": calib.lam.real,
            "lambda_im": calib.lam.imag,
            "sigma": calib.sigma,
            "eq14_max_q2": eq14.max_q2,
            "eq14_max_q1": eq14.max_q1,
            "eq14_fd_residual": eq14.fd_residual,
            "eq13_max_q2": eq13.max_q2,
            "eq13_max_q1": eq13.max_q1,
            "eq13_spread": eq13.spread,
            "eq13_fd_residual": eq13.fd_residual,
            "g_re": complex(eq13.q0).real,
            "g_im": complex(eq13.q0).imag,
            "normal_ordering_deviation": eq13.extras["normal_ordering_deviation"],
            "verdict": verdict,
        }

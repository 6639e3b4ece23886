"""
Orquestación de una corrida del laboratorio: un subcomando, sus informes y el
estado de salida (0 si todos los veredictos aprueban, 1 si alguno no).
"""

import logging
from dataclasses import dataclass, field

from domain.evolution import calibrate, evolution_functional
from domain.reporting import PASS, ResidualReport
from domain.shared.constants import SWEEP_TIMES
from infrastructure.io import drive_from_csv

from .oracle_service import P_GRID, OracleService, adiabatic_grid
from .report_service import ReportService
from .sweep_service import SweepService
from .verification_service import VerificationService

logger = logging.getLogger(__name__)

# Frecuencias del puente de modos con L = 2π, m = 1: ω_0 = 1, ω_1 = √2
BRIDGE_MODES = (0, 1)


@dataclass
class RunOutcome:
    subcommand: str
    reports: list
    paths: list = field(default_factory=list)

    @property
    def passed(self):
        return all(report.verdict == PASS for report in self.reports)

    @property
    def exit_status(self):
        return 0 if self.passed else 1


class LabRunService:

    @staticmethod
    def run(config):
        handlers = {
            "calibrate": LabRunService._calibrate,
            "verify-eq14": LabRunService._verify_eq14,
            "verify-eq13": LabRunService._verify_eq13,
            "semigroup": LabRunService._semigroup,
            "oracle-qm": LabRunService._oracle_qm,
            "sweep": LabRunService._sweep,
        }
        logger.info("Corrida '%s' (semilla %s)", config.subcommand, config.seed)
        reports, extra, paths = handlers[config.subcommand](config)

        payload = ReportService.payload(config.subcommand, config, reports, extra)
        report_path = ReportService.write_report(config.out, config.subcommand, payload)
        paths.insert(0, report_path)
        outcome = RunOutcome(config.subcommand, reports, paths)
        logger.info(
            "Corrida '%s' terminada: %s", config.subcommand, payload["verdict"]
        )
        return outcome

    # ==================== SUBCOMANDOS ====================
    @staticmethod
    def _calibrate(config):
        ms = config.mode_space()
        calib = calibrate(ms, tol_coeff=config.tolerances["coeff"])
        # λ = 1 documenta la brecha de convenciones
        raw = calibrate(ms, force_lambda=1.0)
        report = ResidualReport.judge(
            "calibration",
            {"eq14_residual": config.tolerances["coeff"]},
            params=ms.to_record(),
            extras={
                "eq14_residual": calib.eq14_residual,
                "sigma_verified": calib.sigma_verified,
            },
        )
        # La ecuación con (c1, c2) = (1, 1) sobre la capa configurada
        st = evolution_functional(ms, config.v_hat(ms), config.times[0], calib=calib)
        check = VerificationService.residual_eq14(
            st,
            config.tolerances["coeff"],
            config.tolerances["numeric"],
            config.u_samples,
            config.fd_step,
            config.seed,
        )
        extra = {
            "calibration": calib.to_record(),
            "uncalibrated": raw.to_record(),
        }
        return [report, check], extra, []

    @staticmethod
    def _states(config):
        ms = config.mode_space()
        calib = calibrate(ms, tol_coeff=config.tolerances["coeff"])
        v_hat = config.v_hat(ms)
        return [
            evolution_functional(ms, v_hat, T, calib=calib) for T in config.times
        ]

    @staticmethod
    def _verify_eq14(config):
        tol = config.tolerances
        reports = [
            VerificationService.residual_eq14(
                st,
                tol["coeff"],
                tol["numeric"],
                config.u_samples,
                config.fd_step,
                config.seed,
            )
            for st in LabRunService._states(config)
        ]
        reports.append(
            VerificationService.gradient_report(seed=config.seed, tol=tol["numeric"])
        )
        return reports, {}, []

    @staticmethod
    def _verify_eq13(config):
        tol = config.tolerances
        states = LabRunService._states(config)
        reports = [
            VerificationService.residual_eq13(
                st,
                tol["second_order"],
                tol["spread"],
                tol["numeric"],
                config.u_samples,
                config.fd_step,
                config.seed,
            )
            for st in states
        ]
        g_series = []
        for st, report in zip(states, reports):
            g = complex(report.q0)
            g_series.append({"T": st.T, "g_re": g.real, "g_im": g.imag})
        return reports, {"g_series": g_series}, []

    @staticmethod
    def _semigroup(config):
        ms = config.mode_space()
        calib = calibrate(ms, tol_coeff=config.tolerances["coeff"])
        v_hat = config.v_hat(ms)
        times = sorted(set(config.times) | set(SWEEP_TIMES))
        reports = [
            VerificationService.semigroup_report(
                ms,
                v_hat,
                config.partition_total,
                config.partitions,
                config.seed,
                calib,
                config.tolerances["coeff"],
            ),
            VerificationService.evolution_structure(
                ms, v_hat, times, calib, config.tolerances["coeff"]
            ),
        ]
        return reports, {}, []

    @staticmethod
    def _oracle_qm(config):
        grid = config.qm_grid()
        drive = drive_from_csv(config.drive_path) if config.drive_path else None
        reports, paths = [OracleService.kernel_oracle()], []

        for report, lhs, rhs in OracleService.relation5_suite(
            grid, drive, config.tolerances["relation5"]
        ):
            reports.append(report)
            paths.append(
                ReportService.write_relation5_csv(
                    config.out, report.name, P_GRID, P_GRID, lhs, rhs, config.seed
                )
            )

        ms = config.mode_space()
        for k in BRIDGE_MODES:
            if ms.k_min <= k <= ms.k_max:
                for use_solver in (False, True):
                    reports.append(
                        OracleService.mode_bridge(ms, k, grid, use_solver=use_solver)
                    )

        reports.append(OracleService.eigenphase(grid))
        reports.append(OracleService.dt_refinement(grid))
        reports.append(OracleService.adiabatic(adiabatic_grid(grid)))
        return reports, {}, paths

    @staticmethod
    def _sweep(config):
        rows, reports = SweepService.run(config)
        paths = [ReportService.write_sweep_csv(config.out, rows, config.seed)]
        if config.xlsx:
            paths.append(
                ReportService.write_sweep_workbook(config.out, rows, config.seed)
            )
        return reports, {"rows": len(rows)}, paths

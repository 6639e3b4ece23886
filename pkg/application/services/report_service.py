import logging
import os

import numpy as np
import openpyxl
from django.utils import timezone
from openpyxl.styles import Border, Font, PatternFill, Side

from domain.reporting import FAIL, INCONCLUSIVE, PASS
from infrastructure.io import write_csv, write_json, write_workbook

from .sweep_service import SWEEP_COLUMNS

logger = logging.getLogger(__name__)

RELATION5_COLUMNS = [
    "p0",
    "p",
    "re_lhs",
    "im_lhs",
    "re_rhs",
    "im_rhs",
    "ratio_re",
    "ratio_im",
]


def _header_comment(seed):
    # Única línea con marca de tiempo: el cuerpo del CSV es reproducible
    return f"generated_at={timezone.now().isoformat()} seed={seed}"


class ReportService:

    @staticmethod
    def payload(subcommand, config, reports, extra=None):
        """Informe estructurado de una corrida: configuración, semilla y veredictos"""
        records = [report.to_record() for report in reports]
        payload = {
            "subcommand": subcommand,
            "generated_at": timezone.now().isoformat(),
            "seed": config.seed,
            "config": config.to_record(),
            "verdict": ReportService.overall_verdict(reports),
            "reports": records,
        }
        if extra:
            payload.update(extra)
        return payload

    @staticmethod
    def overall_verdict(reports):
        verdicts = {report.verdict for report in reports}
        if verdicts <= {PASS}:
            return PASS
        return FAIL if FAIL in verdicts else INCONCLUSIVE

    @staticmethod
    def write_report(out_dir, subcommand, payload):
        path = os.path.join(out_dir, f"{subcommand}.json")
        return write_json(path, payload)

    @staticmethod
    def write_sweep_csv(out_dir, rows, seed):
        path = os.path.join(out_dir, "sweep.csv")
        return write_csv(path, SWEEP_COLUMNS, rows, _header_comment(seed))

    @staticmethod
    def relation5_rows(p0_grid, p_grid, lhs, rhs):
        """Una fila por par (p0, p); el cociente vale NaN donde rhs se anula"""
        rows = []
        for i, p0 in enumerate(p0_grid):
            for j, p in enumerate(p_grid):
                left, right = complex(lhs[i, j]), complex(rhs[i, j])
                ratio = left / right if right != 0 else complex(np.nan, np.nan)
                rows.append(
                    {
                        "p0": float(p0),
                        "p": float(p),
                        "re_lhs": left.real,
                        "im_lhs": left.imag,
                        "re_rhs": right.real,
                        "im_rhs": right.imag,
                        "ratio_re": ratio.real,
                        "ratio_im": ratio.imag,
                    }
                )
        return rows

    @staticmethod
    def write_relation5_csv(out_dir, name, p0_grid, p_grid, lhs, rhs, seed):
        rows = ReportService.relation5_rows(p0_grid, p_grid, lhs, rhs)
        path = os.path.join(out_dir, f"{name}.csv")
        return write_csv(path, RELATION5_COLUMNS, rows, _header_comment(seed))

    # ==================== REPORTES (EXCEL) ====================
    @staticmethod
    def generate_sweep_workbook(rows, seed):
        """Genera el objeto Workbook con el barrido de residuos"""
        wb = openpyxl.Workbook()
        ws = wb.active
        ws.title = "Barrido"

        # Estilos
        header_font = Font(bold=True, color="FFFFFF")
        header_fill = PatternFill(
            start_color="4F81BD", end_color="4F81BD", fill_type="solid"
        )
        fail_fill = PatternFill(
            start_color="F4CCCC", end_color="F4CCCC", fill_type="solid"
        )
        thin_border = Border(
            left=Side(style="thin"),
            right=Side(style="thin"),
            top=Side(style="thin"),
            bottom=Side(style="thin"),
        )

        # Encabezado Reporte
        ws["A1"] = "REPORTE DE RESIDUOS - BARRIDO (N, m, T)"
        ws["A2"] = f"Semilla: {seed} | Puntos: {len(rows)}"

        for col, txt in enumerate(SWEEP_COLUMNS, 1):
            cell = ws.cell(row=4, column=col, value=txt)
            cell.font = header_font
            cell.fill = header_fill
            cell.border = thin_border

        for row_num, row in enumerate(rows, 5):
            failed = row["verdict"] != PASS
            for col, key in enumerate(SWEEP_COLUMNS, 1):
                cell = ws.cell(row=row_num, column=col, value=row[key])
                cell.border = thin_border
                if failed:
                    cell.fill = fail_fill

        return wb, "sweep.xlsx"

    @staticmethod
    def write_sweep_workbook(out_dir, rows, seed):
        wb, filename = ReportService.generate_sweep_workbook(rows, seed)
        return write_workbook(os.path.join(out_dir, filename), wb)

    @staticmethod
    def summary_lines(reports):
        """Resumen legible: una línea por identidad"""
        lines = []
        for report in reports:
            judged = ", ".join(
                f"{key}={ReportService._measure(report, key):.2e}"
                for key in report.tolerances
                if ReportService._measure(report, key) is not None
            )
            lines.append((report.verdict, f"[{report.verdict}] {report.name} {judged}"))
        return lines

    @staticmethod
    def _measure(report, key):
        value = getattr(report, key, None)
        if value is None:
            value = report.extras.get(key)
        return value

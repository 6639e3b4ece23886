from django.core.management.base import BaseCommand, CommandError

from application.dto import RunConfig
from application.services import LabRunService, ReportService
from domain.reporting import FAIL, PASS
from domain.shared.constants import SUBCOMMAND_CHOICES, V_HAT_PRESET_CHOICES
from domain.shared.exceptions import LabError
from infrastructure.io import load_json_config
from presentation.forms import RunConfigForm

# Salida 2: configuración o contrato inválido; salida 1: algún veredicto no aprueba
EXIT_FAILED = 1
EXIT_INVALID = 2


class Command(BaseCommand):
    help = "Laboratorio de verificación de la evolución pseudodinámica del campo libre"

    def add_arguments(self, parser):
        parser.add_argument(
            "subcommand", choices=[choice for choice, _ in SUBCOMMAND_CHOICES]
        )
        parser.add_argument("--config", help="Archivo JSON con la configuración")
        parser.add_argument("--modes", type=int, help="Número de modos N (par)")
        parser.add_argument("--mass", type=float, help="Masa m")
        parser.add_argument("--box-length", type=float, help="Longitud de la caja L")
        parser.add_argument("--hbar", type=float, help="Constante h")
        parser.add_argument("--time", type=float, nargs="+", help="Tiempos T")
        parser.add_argument("--seed", type=int, help="Semilla de las muestras")
        parser.add_argument("--out", help="Directorio de informes")
        parser.add_argument("--tol-coeff", type=float)
        parser.add_argument("--tol-numeric", type=float)
        parser.add_argument("--drive", help="CSV (t, value) de la fuente del oráculo")
        parser.add_argument(
            "--v-hat", choices=[choice for choice, _ in V_HAT_PRESET_CHOICES]
        )
        parser.add_argument("--v-mode", type=int, help="Modo k del preset 'single'")
        parser.add_argument("--xlsx", action="store_true", default=None)

    def handle(self, *args, **options):
        subcommand = options["subcommand"]
        config = self._build_config(subcommand, options)

        self.stdout.write(self.style.WARNING(f"Iniciando '{subcommand}'..."))
        try:
            outcome = LabRunService.run(config)
        except LabError as error:
            raise CommandError(str(error), returncode=EXIT_INVALID)

        styles = {PASS: self.style.SUCCESS, FAIL: self.style.ERROR}
        for verdict, line in ReportService.summary_lines(outcome.reports):
            self.stdout.write(styles.get(verdict, self.style.WARNING)(line))
        for path in outcome.paths:
            self.stdout.write(f"  → {path}")

        if outcome.exit_status:
            failed = sum(not report.passed for report in outcome.reports)
            raise CommandError(
                f"{failed} verificación(es) sin aprobar", returncode=EXIT_FAILED
            )
        self.stdout.write(self.style.SUCCESS("Todas las verificaciones aprobadas"))

    def _build_config(self, subcommand, options):
        file_values = {}
        if options.get("config"):
            try:
                file_values = load_json_config(options["config"])
            except LabError as error:
                raise CommandError(str(error), returncode=EXIT_INVALID)
            allowed = set(RunConfigForm.base_fields) - {"subcommand"}
            unknown = sorted(set(file_values) - allowed)
            if unknown:
                raise CommandError(
                    f"{options['config']}: claves desconocidas {unknown}",
                    returncode=EXIT_INVALID,
                )

        merged = RunConfig.layered(file_values, self._flag_values(options))
        merged["subcommand"] = subcommand

        form = RunConfigForm(data=merged)
        if not form.is_valid():
            for field, errors in form.errors.items():
                for message in errors:
                    self.stderr.write(self.style.ERROR(f"{field}: {message}"))
            raise CommandError("Configuración inválida", returncode=EXIT_INVALID)
        try:
            return RunConfig(**form.cleaned_data)
        except LabError as error:
            raise CommandError(str(error), returncode=EXIT_INVALID)

    @staticmethod
    def _flag_values(options):
        tolerances = {
            key: options[flag]
            for key, flag in (("coeff", "tol_coeff"), ("numeric", "tol_numeric"))
            if options.get(flag) is not None
        }
        return {
            "num_modes": options.get("modes"),
            "mass": options.get("mass"),
            "box_length": options.get("box_length"),
            "hbar": options.get("hbar"),
            "times": options.get("time"),
            "seed": options.get("seed"),
            "out": options.get("out"),
            "drive_path": options.get("drive"),
            "v_hat_preset": options.get("v_hat"),
            "v_hat_mode": options.get("v_mode"),
            "xlsx": options.get("xlsx"),
            "tolerances": tolerances or None,
        }

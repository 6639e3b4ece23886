from django import forms
from django.core.exceptions import ValidationError

from application.dto import TOLERANCE_KEYS
from domain.shared.constants import SUBCOMMAND_CHOICES, V_HAT_PRESET_CHOICES

OPTIONAL_FIELDS = (
    "v_hat_preset",
    "v_hat_mode",
    "u_samples",
    "fd_step",
    "partition_total",
    "partitions",
)


def validate_positive(value):
    if value is None or not value > 0:
        raise ValidationError(f"Debe ser positivo (recibido {value})")


class FloatListField(forms.Field):
    """Acepta una lista JSON o una cadena separada por comas."""

    def __init__(self, *args, cast=float, positive=True, **kwargs):
        self.cast = cast
        self.positive = positive
        super().__init__(*args, **kwargs)

    def to_python(self, value):
        if value in self.empty_values:
            return None
        if isinstance(value, str):
            value = [item for item in value.split(",") if item.strip()]
        if not isinstance(value, (list, tuple)):
            value = [value]
        try:
            items = [self.cast(item) for item in value]
        except (TypeError, ValueError):
            raise ValidationError(f"Lista inválida: {value!r}")
        if not items:
            raise ValidationError("La lista no puede estar vacía")
        return items

    def validate(self, value):
        super().validate(value)
        if value and self.positive:
            for item in value:
                validate_positive(item)


class ToleranceField(forms.Field):
    def to_python(self, value):
        if value in self.empty_values:
            return {}
        if not isinstance(value, dict):
            raise ValidationError("Se esperaba un objeto clave-valor")
        unknown = set(value) - set(TOLERANCE_KEYS)
        if unknown:
            raise ValidationError(f"Tolerancias desconocidas: {sorted(unknown)}")
        try:
            return {key: float(item) for key, item in value.items()}
        except (TypeError, ValueError):
            raise ValidationError(f"Tolerancia no numérica: {value!r}")

    def validate(self, value):
        super().validate(value)
        for key, item in value.items():
            if not item > 0:
                raise ValidationError(f"La tolerancia '{key}' debe ser positiva")


class RunConfigForm(forms.Form):
    """Validación por campo de la configuración ya combinada en capas."""

    subcommand = forms.ChoiceField(choices=SUBCOMMAND_CHOICES)

    # Red de modos
    num_modes = forms.IntegerField(min_value=2)
    box_length = forms.FloatField(validators=[validate_positive])
    mass = forms.FloatField(validators=[validate_positive])
    hbar = forms.FloatField(validators=[validate_positive])
    times = FloatListField(positive=False)

    # Capa inicial
    v_hat_preset = forms.ChoiceField(choices=V_HAT_PRESET_CHOICES, required=False)
    v_hat_mode = forms.IntegerField(required=False)
    seed = forms.IntegerField(min_value=0)

    # Oráculo QM
    q_min = forms.FloatField()
    q_max = forms.FloatField()
    qm_points = forms.IntegerField(min_value=7)
    qm_dt = forms.FloatField(validators=[validate_positive])
    drive_path = forms.CharField(required=False)

    # Verificación
    tolerances = ToleranceField(required=False)
    u_samples = forms.IntegerField(min_value=1, required=False)
    fd_step = forms.FloatField(validators=[validate_positive], required=False)
    partition_total = forms.FloatField(validators=[validate_positive], required=False)
    partitions = forms.IntegerField(min_value=0, required=False)

    # Barrido
    sweep_modes = FloatListField(cast=int, required=False)
    sweep_masses = FloatListField(required=False)
    sweep_times = FloatListField(required=False)
    xlsx = forms.BooleanField(required=False)

    out = forms.CharField()

    def clean_num_modes(self):
        num_modes = self.cleaned_data["num_modes"]
        if num_modes % 2:
            raise ValidationError(f"N debe ser par (recibido {num_modes})")
        return num_modes

    def clean_times(self):
        times = self.cleaned_data["times"]
        negative = [T for T in times if T < 0]
        if negative:
            raise ValidationError(f"T debe ser ≥ 0 (recibido {negative})")
        return times

    def clean_sweep_modes(self):
        modes = self.cleaned_data["sweep_modes"]
        if modes and any(n < 2 or n % 2 for n in modes):
            raise ValidationError(f"Cada N del barrido debe ser par y ≥ 2: {modes}")
        return modes

    def clean(self):
        cleaned = super().clean()
        q_min, q_max = cleaned.get("q_min"), cleaned.get("q_max")
        if q_min is not None and q_max is not None and q_max <= q_min:
            self.add_error("q_max", f"Se requiere q_max > q_min ({q_min}, {q_max})")
        if not cleaned.get("drive_path"):
            cleaned["drive_path"] = None
        # Opcionales sin valor: RunConfig usa su propio default
        for name in OPTIONAL_FIELDS:
            if cleaned.get(name) in (None, ""):
                cleaned.pop(name, None)
        return cleaned

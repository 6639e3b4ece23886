import csv
import json
import logging
import os

import numpy as np

from domain.shared.exceptions import ContractViolation
from domain.sources import SampledDrive, SourceSpec
from domain.sources.drive import SPAN_TOLERANCE

logger = logging.getLogger(__name__)

FIELD_DRIVE_COLUMNS = ("t", "mode_index", "re", "im")
SCALAR_DRIVE_COLUMNS = ("t", "value")


def _open_rows(path, columns):
    if not os.path.exists(path):
        raise ContractViolation(f"El archivo {path} no existe")
    with open(path, "r", encoding="utf-8", newline="") as file:
        reader = csv.DictReader(row for row in file if not row.startswith("#"))
        missing = set(columns) - set(reader.fieldnames or ())
        if missing:
            raise ContractViolation(f"{path}: faltan columnas {sorted(missing)}")
        # Fila 1 es el encabezado
        return list(enumerate(reader, start=2))


def _parse(row_num, row, key, cast=float):
    try:
        return cast(row[key].strip())
    except (TypeError, ValueError):
        raise ContractViolation(
            f"Fila {row_num}: valor inválido en '{key}': {row[key]!r}"
        )


def _uniform_step(times, path):
    if times.size < 2:
        raise ContractViolation(f"{path}: se necesitan al menos 2 tiempos")
    steps = np.diff(times)
    step = (times[-1] - times[0]) / (times.size - 1)
    limit = SPAN_TOLERANCE * max(1.0, abs(times[-1]))
    if step <= 0 or np.max(np.abs(steps - step)) > limit:
        raise ContractViolation(f"{path}: la malla temporal no es uniforme")
    return float(step)


def drive_from_csv(path):
    """Fuente escalar del oscilador: columnas (t, value)."""
    rows = _open_rows(path, SCALAR_DRIVE_COLUMNS)
    samples = sorted(
        (_parse(n, row, "t"), _parse(n, row, "value")) for n, row in rows
    )
    times = np.array([t for t, _ in samples])
    values = np.array([v for _, v in samples])
    drive = SampledDrive(times[0], _uniform_step(times, path), values)
    logger.info("Fuente escalar cargada de %s (%s muestras)", path, drive.n_samples)
    return drive


def field_drive_from_csv(path, ms):
    """Fuente por modos: columnas (t, mode_index, re, im); modos ausentes valen 0."""
    rows = _open_rows(path, FIELD_DRIVE_COLUMNS)
    entries = {}
    for n, row in rows:
        t = _parse(n, row, "t")
        k = _parse(n, row, "mode_index", int)
        try:
            position = ms.position(k)
        except ContractViolation as error:
            raise ContractViolation(f"Fila {n}: {error}")
        value = complex(_parse(n, row, "re"), _parse(n, row, "im"))
        entries.setdefault(t, {})[position] = value

    times = np.array(sorted(entries))
    values = np.zeros((times.size, ms.num_modes), dtype=complex)
    for i, t in enumerate(times):
        for position, value in entries[t].items():
            values[i, position] = value
    return SampledDrive(times[0], _uniform_step(times, path), values)


def source_from_csv(path, ms, u_hat, v_hat):
    """SourceSpec cuyas capas T0 y T son los extremos de la fuente leída."""
    drive = field_drive_from_csv(path, ms)
    return SourceSpec(drive.t_end, drive.t0, u_hat, v_hat, drive)


def load_json_config(path):
    """Lee un archivo de configuración; los errores de sintaxis llevan línea y columna."""
    if not os.path.exists(path):
        raise ContractViolation(f"El archivo de configuración {path} no existe")
    with open(path, "r", encoding="utf-8") as file:
        try:
            data = json.load(file)
        except json.JSONDecodeError as error:
            raise ContractViolation(
                f"{path}: JSON inválido en línea {error.lineno}, "
                f"columna {error.colno}: {error.msg}"
            )
    if not isinstance(data, dict):
        raise ContractViolation(f"{path}: se esperaba un objeto JSON clave-valor")
    return data

import csv
import json
import logging
import os

logger = logging.getLogger(__name__)


def _ensure_parent(path):
    parent = os.path.dirname(os.path.abspath(path))
    os.makedirs(parent, exist_ok=True)


def _cell(value):
    # repr conserva todos los dígitos: dos corridas iguales dan bytes iguales
    if isinstance(value, float):
        return repr(value)
    if value is None:
        return ""
    return str(value)


def write_json(path, payload):
    _ensure_parent(path)
    with open(path, "w", encoding="utf-8") as file:
        json.dump(payload, file, indent=2, ensure_ascii=False)
        file.write("\n")
    logger.info("Informe JSON escrito en %s", path)
    return path


def write_csv(path, columns, rows, header_comment=None):
    """
    Una línea de comentario opcional (marca de tiempo, semilla) y luego el
    cuerpo determinista.
    """
    _ensure_parent(path)
    with open(path, "w", encoding="utf-8", newline="") as file:
        if header_comment:
            file.write(f"# {header_comment}\n")
        writer = csv.writer(file, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(row.get(column)) for column in columns])
    logger.info("CSV escrito en %s (%s filas)", path, len(rows))
    return path


def write_workbook(path, workbook):
    _ensure_parent(path)
    workbook.save(path)
    logger.info("Libro Excel escrito en %s", path)
    return path

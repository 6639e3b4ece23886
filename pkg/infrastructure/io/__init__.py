from .readers import (
    drive_from_csv,
    field_drive_from_csv,
    load_json_config,
    source_from_csv,
)
from .writers import write_csv, write_json, write_workbook

__all__ = [
    "drive_from_csv",
    "field_drive_from_csv",
    "load_json_config",
    "source_from_csv",
    "write_csv",
    "write_json",
    "write_workbook",
]

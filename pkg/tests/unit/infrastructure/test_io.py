import json

import numpy as np
import pytest

from domain.mode_lattice import ModeVector
from domain.shared.exceptions import ContractViolation
from infrastructure.io import (
    drive_from_csv,
    field_drive_from_csv,
    load_json_config,
    source_from_csv,
    write_csv,
    write_json,
)
from tests.factories import ModeSpaceFactory


def _write(path, text):
    path.write_text(text, encoding="utf-8")
    return str(path)


@pytest.mark.unit
class TestDriveReaders:

    def test_scalar_drive(self, tmp_path):
        path = _write(tmp_path / "drive.csv", "t,value\n0.0,1.0\n0.5,2.0\n1.0,3.0\n")

        drive = drive_from_csv(path)

        assert drive.t0 == 0.0
        assert drive.dt == 0.5
        assert np.array_equal(drive.values.real, [1.0, 2.0, 3.0])

    def test_unsorted_rows_and_comments(self, tmp_path):
        text = "# fuente de prueba\nt,value\n1.0,3.0\n0.0,1.0\n0.5,2.0\n"
        path = _write(tmp_path / "drive.csv", text)

        drive = drive_from_csv(path)

        assert drive.values[0] == 1.0

    def test_non_uniform_times_rejected(self, tmp_path):
        path = _write(tmp_path / "drive.csv", "t,value\n0.0,1.0\n0.5,2.0\n1.5,3.0\n")

        with pytest.raises(ContractViolation, match="uniforme"):
            drive_from_csv(path)

    def test_missing_column_rejected(self, tmp_path):
        path = _write(tmp_path / "drive.csv", "t,amplitude\n0.0,1.0\n")

        with pytest.raises(ContractViolation, match="faltan columnas"):
            drive_from_csv(path)

    def test_bad_value_names_the_row(self, tmp_path):
        path = _write(tmp_path / "drive.csv", "t,value\n0.0,1.0\n0.5,abc\n")

        with pytest.raises(ContractViolation, match="Fila 3"):
            drive_from_csv(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ContractViolation, match="no existe"):
            drive_from_csv(str(tmp_path / "nada.csv"))

    def test_field_drive_fills_absent_modes_with_zero(self, tmp_path):
        ms = ModeSpaceFactory(num_modes=4)
        path = _write(
            tmp_path / "field.csv",
            "t,mode_index,re,im\n0.0,1,1.0,0.5\n1.0,1,2.0,0.0\n1.0,-1,0.0,1.0\n",
        )

        drive = field_drive_from_csv(path, ms)

        assert drive.values.shape == (2, 4)
        assert drive.values[0, ms.position(1)] == 1.0 + 0.5j
        assert drive.values[0, ms.position(-1)] == 0
        assert drive.values[1, ms.position(-1)] == 1j

    def test_field_drive_mode_out_of_range(self, tmp_path):
        ms = ModeSpaceFactory(num_modes=4)
        path = _write(tmp_path / "field.csv", "t,mode_index,re,im\n0.0,7,1.0,0.0\n")

        with pytest.raises(ContractViolation, match="Fila 2"):
            field_drive_from_csv(path, ms)

    def test_source_spans_the_drive(self, tmp_path):
        ms = ModeSpaceFactory(num_modes=4)
        path = _write(
            tmp_path / "field.csv",
            "t,mode_index,re,im\n0.5,0,1.0,0.0\n1.0,0,1.0,0.0\n1.5,0,1.0,0.0\n",
        )
        zero = ModeVector.zeros(ms)

        source = source_from_csv(path, ms, zero, zero)

        assert source.T0 == 0.5
        assert source.T == 1.5


@pytest.mark.unit
class TestJsonConfig:

    def test_reads_object(self, tmp_path):
        path = _write(tmp_path / "lab.json", json.dumps({"num_modes": 8}))

        assert load_json_config(path) == {"num_modes": 8}

    def test_syntax_error_reports_line_and_column(self, tmp_path):
        path = _write(tmp_path / "lab.json", '{\n  "num_modes": 8,\n  "mass": }\n')

        with pytest.raises(ContractViolation, match="línea 3, columna 11"):
            load_json_config(path)

    def test_non_object_rejected(self, tmp_path):
        path = _write(tmp_path / "lab.json", "[1, 2]")

        with pytest.raises(ContractViolation, match="clave-valor"):
            load_json_config(path)


@pytest.mark.unit
class TestWriters:

    def test_csv_has_comment_header_and_full_precision(self, tmp_path):
        path = tmp_path / "nested" / "out.csv"

        write_csv(str(path), ["a", "b"], [{"a": 0.1 + 0.2, "b": None}], "seed=1")

        lines = path.read_text(encoding="utf-8").splitlines()
        assert lines == ["# seed=1", "a,b", "0.30000000000000004,"]

    def test_json_creates_parent_and_keeps_unicode(self, tmp_path):
        path = tmp_path / "a" / "b" / "report.json"

        write_json(str(path), {"identidad": "ecuación"})

        assert "ecuación" in path.read_text(encoding="utf-8")

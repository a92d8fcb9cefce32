"""Result rows as CSV: ``,`` separator, ``.`` decimals, LF endings, blank for missing values."""

from __future__ import annotations

import csv
from collections.abc import Iterable
from pathlib import Path

from pydantic import ValidationError

from pcedep.exceptions import ResultParseError
from pcedep.schemas import ResultRow

RESULT_COLUMNS = list(ResultRow.model_fields)


def _format(value: object) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_results(path: Path, rows: Iterable[ResultRow]) -> int:
    path.parent.mkdir(parents=True, exist_ok=True)
    count = 0
    with path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(RESULT_COLUMNS)
        for row in rows:
            data = row.model_dump()
            writer.writerow([_format(data[column]) for column in RESULT_COLUMNS])
            count += 1
    return count


def read_results(path: Path) -> list[ResultRow]:
    with path.open(encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != RESULT_COLUMNS:
            raise ResultParseError(str(path), 1, f"expected header {','.join(RESULT_COLUMNS)}")
        rows: list[ResultRow] = []
        for line, record in enumerate(reader, start=2):
            if not record:
                continue
            if len(record) != len(RESULT_COLUMNS):
                raise ResultParseError(str(path), line, f"expected {len(RESULT_COLUMNS)} fields, got {len(record)}")
            data = {column: value for column, value in zip(RESULT_COLUMNS, record, strict=True) if value != ""}
            try:
                rows.append(ResultRow.model_validate(data))
            except ValidationError as exc:
                raise ResultParseError(str(path), line, str(exc.errors()[0]["msg"])) from exc
    return rows

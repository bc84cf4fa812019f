"""CSV / JSON result files that can be resumed."""

import csv
import io
import json
import os
import tempfile
from pathlib import Path
from typing import Any, Dict, Generic, Iterable, List, Sequence, Tuple, Type, TypeVar

from pydantic import ValidationError

from edgefog.bench.schema import BENCH_FIELDS, SWEEP_FIELDS, OutputFormat, ResultRow, SweepRow
from edgefog.exceptions import BenchError


RowT = TypeVar("RowT", ResultRow, SweepRow)


def _csv_value(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


class ResultStore(Generic[RowT]):
    """Rows of one experiment keyed by ``row.key()``, persisted in sorted key order.

    Every write replaces the file atomically, so a reader never sees a partial
    file.
    """

    def __init__(
        self, path: Path, fmt: OutputFormat, row_type: Type[RowT], fields: Sequence[str]
    ):
        self.path = Path(path)
        self.format = OutputFormat(fmt)
        self.row_type = row_type
        self.fields = tuple(fields)

    def load(self) -> Dict[Tuple, RowT]:
        if not self.path.exists():
            return {}
        text = self.path.read_text(encoding="utf-8")
        if not text.strip():
            return {}
        try:
            records = self._parse(text)
            rows = [self.row_type.model_validate(record) for record in records]
        except (ValidationError, ValueError) as e:
            raise BenchError(f"Cannot resume from {self.path}: {e}", path=str(self.path))
        return {row.key(): row for row in rows}

    def _parse(self, text: str) -> List[Dict[str, Any]]:
        if self.format is OutputFormat.JSON:
            records = json.loads(text)
            if not isinstance(records, list):
                raise ValueError("expected a JSON array of rows")
            return records
        reader = csv.DictReader(io.StringIO(text))
        if tuple(reader.fieldnames or ()) != self.fields:
            raise ValueError(f"header {reader.fieldnames} does not match {list(self.fields)}")
        return list(reader)

    def render(self, rows: Iterable[RowT]) -> str:
        ordered = sorted(rows, key=lambda row: row.key())
        if self.format is OutputFormat.JSON:
            return json.dumps([row.record() for row in ordered], indent=2) + "\n"
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(self.fields)
        for row in ordered:
            record = row.record()
            writer.writerow([_csv_value(record[field]) for field in self.fields])
        return buffer.getvalue()

    def write(self, rows: Iterable[RowT]):
        self.path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=self.path.parent, prefix=f".{self.path.name}.")
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
                f.write(self.render(rows))
            os.replace(tmp, self.path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise


def bench_store(path: Path, fmt: OutputFormat = OutputFormat.CSV) -> ResultStore[ResultRow]:
    return ResultStore(path, fmt, ResultRow, BENCH_FIELDS)


def sweep_store(path: Path, fmt: OutputFormat = OutputFormat.CSV) -> ResultStore[SweepRow]:
    return ResultStore(path, fmt, SweepRow, SWEEP_FIELDS)

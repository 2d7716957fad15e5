"""CSV sweep repository adapter."""

import asyncio
import csv
import io
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from application.ports.driven.files.sweeps.repository_port import (
    SweepRepositoryPort,
    SweepRow,
)
from driven.files.sweeps.mapper import SweepRowMapper

logger = logging.getLogger(__name__)


class CsvSweepRepositoryAdapter(SweepRepositoryPort):
    """Renders rows in grid order and writes them with a single writer."""

    def __init__(self, mapper: Optional[SweepRowMapper] = None):
        self.mapper = mapper or SweepRowMapper()

    def render(self, rows: Sequence[SweepRow]) -> str:
        if not rows:
            raise ValueError("Cannot write an empty sweep")
        row_type = type(rows[0])
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(self.mapper.header(row_type))
        for row in rows:
            if type(row) is not row_type:
                raise ValueError("A sweep table must hold a single row type")
            writer.writerow(self.mapper.entity_to_record(row))
        return buffer.getvalue()

    async def save_rows(self, rows: Sequence[SweepRow], destination: str) -> str:
        text = self.render(rows)
        if destination == "-":
            sys.stdout.write(text)
        else:
            await asyncio.to_thread(
                Path(destination).write_text, text, encoding="utf-8", newline=""
            )
            logger.info("Wrote %d rows to %s", len(rows), destination)
        return text

"""JSON verification report adapter."""

import asyncio
import json
import logging
import sys
from pathlib import Path
from typing import Optional

from application.ports.driven.files.reports.repository_port import ReportRepositoryPort
from domain.entities.verification import VerificationReport
from driven.files.reports.mapper import CheckResultMapper

logger = logging.getLogger(__name__)


class JsonReportRepositoryAdapter(ReportRepositoryPort):
    """Writes the {check_id, passed, measured, tolerance} array."""

    def __init__(self, mapper: Optional[CheckResultMapper] = None):
        self.mapper = mapper or CheckResultMapper()

    def render(self, report: VerificationReport) -> str:
        records = [self.mapper.entity_to_record(check) for check in report.checks]
        return json.dumps(records, indent=2, allow_nan=False) + "\n"

    async def save_report(self, report: VerificationReport, destination: str) -> str:
        text = self.render(report)
        if destination == "-":
            sys.stdout.write(text)
        else:
            await asyncio.to_thread(Path(destination).write_text, text, encoding="utf-8")
            logger.info("Wrote %d checks to %s", len(report.checks), destination)
        return text

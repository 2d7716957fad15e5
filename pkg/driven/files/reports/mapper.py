"""Mapper between verification checks and JSON records."""

import math
from typing import Any, Optional

from domain.entities.verification import CheckResult


def _finite_or_none(value: float) -> Optional[float]:
    return value if math.isfinite(value) else None


class CheckResultMapper:
    """Maps CheckResult entities to the report schema."""

    def entity_to_record(self, check: CheckResult) -> dict[str, Any]:
        return {
            "check_id": check.check_id,
            "passed": check.passed,
            "measured": _finite_or_none(check.measured),
            "tolerance": _finite_or_none(check.tolerance),
        }

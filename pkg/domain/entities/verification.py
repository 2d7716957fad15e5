"""Verification check results."""

from pydantic import BaseModel, ConfigDict


class CheckResult(BaseModel):
    """One named verification check."""

    model_config = ConfigDict(frozen=True)

    check_id: str
    passed: bool
    measured: float
    tolerance: float
    detail: str = ""


class VerificationReport(BaseModel):
    checks: list[CheckResult]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failed(self) -> list[CheckResult]:
        return [check for check in self.checks if not check.passed]

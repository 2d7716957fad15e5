"""Verification report repository port interface."""

from abc import ABC, abstractmethod

from domain.entities.verification import VerificationReport


class ReportRepositoryPort(ABC):
    """Port interface for persisting verification reports."""

    @abstractmethod
    async def save_report(self, report: VerificationReport, destination: str) -> str:
        """
        Write a verification report.

        Args:
            report: Checks in execution order
            destination: Output path, or "-" for standard output

        Returns:
            The rendered report
        """
        raise NotImplementedError

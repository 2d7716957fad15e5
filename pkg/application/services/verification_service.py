"""Runs every verification suite and reports the named checks."""

import asyncio
import logging
import math
from typing import Optional, Sequence

from application.ports.driven.files.reports.repository_port import ReportRepositoryPort
from application.services.assemblage_service import AssemblageService
from application.services.checks.assemblage_checks import AssemblageChecks
from application.services.checks.base_checks import BaseChecks, CheckFn
from application.services.checks.gaussian_checks import GaussianChecks
from application.services.checks.ghz_checks import GhzChecks
from application.services.checks.oracle_checks import OracleChecks
from application.services.gaussian_service import GaussianService
from application.services.ghz_service import GhzService
from config.settings import Settings, settings as default_settings
from domain.entities.verification import CheckResult, VerificationReport
from infrastructure.oracles.fidelity_oracle import FidelityQfiOracle
from infrastructure.oracles.quadrature_oracle import QuadratureMomentOracle

logger = logging.getLogger(__name__)


class VerificationService:
    """Property suites of every module, run concurrently in a fixed order."""

    def __init__(
        self,
        assemblage_service: AssemblageService,
        gaussian_service: GaussianService,
        ghz_service: GhzService,
        report_repo: ReportRepositoryPort,
        app_settings: Optional[Settings] = None,
    ):
        self.assemblage_service = assemblage_service
        self.gaussian_service = gaussian_service
        self.ghz_service = ghz_service
        self.report_repo = report_repo
        self.settings = app_settings or default_settings

    def suites(self, seed: int) -> list[BaseChecks]:
        oracle_settings = self.settings.oracle
        quadrature = QuadratureMomentOracle(
            order=oracle_settings.quadrature_order,
            max_order=oracle_settings.max_quadrature_order,
            rtol=oracle_settings.quadrature_rtol,
        )
        fidelity = FidelityQfiOracle(
            self.assemblage_service.density, oracle_settings.fd_eigenvalue_clamp
        )
        return [
            AssemblageChecks(self.settings, seed, self.assemblage_service),
            GaussianChecks(
                self.settings,
                seed,
                self.gaussian_service,
                self.assemblage_service,
                quadrature,
            ),
            GhzChecks(self.settings, seed, self.ghz_service, fidelity),
            OracleChecks(self.settings, seed, self.gaussian_service, quadrature, fidelity),
        ]

    def check_ids(self) -> list[str]:
        return [
            check_id
            for suite in self.suites(self.settings.oracle.seed)
            for check_id in suite.checks()
        ]

    @staticmethod
    def _guarded(check_id: str, fn: CheckFn) -> CheckResult:
        """A check that raises is reported as failed, never dropped."""
        try:
            return fn()
        except (ValueError, ArithmeticError, RuntimeError) as exc:
            logger.warning("Check %s raised %s: %s", check_id, type(exc).__name__, exc)
            return CheckResult(
                check_id=check_id,
                passed=False,
                measured=math.nan,
                tolerance=math.nan,
                detail=f"{type(exc).__name__}: {exc}",
            )

    async def run(
        self, seed: Optional[int] = None, only: Optional[Sequence[str]] = None
    ) -> VerificationReport:
        """
        Run the selected checks.

        Args:
            seed: Seed of every randomized suite (settings seed by default)
            only: Check ids to run; all of them when omitted

        Returns:
            Report listing the checks in suite order
        """
        seed = self.settings.oracle.seed if seed is None else seed
        selected = []
        for suite in self.suites(seed):
            for check_id, fn in suite.checks().items():
                if only is None or check_id in only:
                    selected.append((check_id, fn))
        if only is not None:
            unknown = set(only) - {check_id for check_id, _ in selected}
            if unknown:
                raise ValueError(f"Unknown checks: {', '.join(sorted(unknown))}")

        logger.info("Running %d verification checks with seed %d", len(selected), seed)
        results = await asyncio.gather(
            *(asyncio.to_thread(self._guarded, check_id, fn) for check_id, fn in selected)
        )
        report = VerificationReport(checks=list(results))
        logger.info(
            "Verification finished: %d passed, %d failed",
            len(report.checks) - len(report.failed),
            len(report.failed),
        )
        return report

    async def run_and_save(
        self,
        destination: str,
        seed: Optional[int] = None,
        only: Optional[Sequence[str]] = None,
    ) -> VerificationReport:
        report = await self.run(seed, only)
        await self.report_repo.save_report(report, destination)
        return report

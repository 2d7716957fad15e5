"""Shared helpers for verification checks."""

import logging
import math
from typing import Callable

import numpy as np

from config.settings import Settings
from domain.entities.verification import CheckResult
from infrastructure.oracles.monte_carlo_oracle import stream_generator

logger = logging.getLogger(__name__)

CheckFn = Callable[[], CheckResult]


def relative_error(value: float, reference: float) -> float:
    if value == reference:
        return 0.0
    scale = max(abs(reference), abs(value))
    return abs(value - reference) / scale


class BaseChecks:
    """Common construction of seeded generators and results."""

    # Streams are namespaced per group so groups never share draws
    stream_offset = 0

    def __init__(self, app_settings: Settings, seed: int):
        self.settings = app_settings
        self.seed = seed

    def rng(self, stream: int) -> np.random.Generator:
        return stream_generator(self.seed, self.stream_offset + stream)

    @staticmethod
    def result(
        check_id: str, measured: float, tolerance: float, passed: bool, detail: str = ""
    ) -> CheckResult:
        if not passed:
            logger.warning("Check %s failed: measured=%r %s", check_id, measured, detail)
        return CheckResult(
            check_id=check_id,
            passed=bool(passed) and not math.isnan(measured),
            measured=float(measured),
            tolerance=float(tolerance),
            detail=detail,
        )

    def checks(self) -> dict[str, CheckFn]:
        raise NotImplementedError

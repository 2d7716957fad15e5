"""Parameter sweeps behind the command-line scenarios."""

import asyncio
import itertools
import logging
import math
from typing import Callable, Optional, Sequence, TypeVar

from application.ports.driven.files.sweeps.repository_port import (
    SweepRepositoryPort,
    SweepRow,
)
from application.services.gaussian_service import GaussianService
from application.services.ghz_service import GhzService
from config.settings import Settings, settings as default_settings
from domain.entities.gaussian import TmssParams
from domain.entities.ghz import GhzScenario
from domain.entities.sweep import (
    DisplacementRow,
    FreeParticleRow,
    GhzRow,
    ParameterRange,
    Scenario,
    SweepConfig,
)
from domain.exceptions import DenseSizeError, SweepConfigError

logger = logging.getLogger(__name__)

Point = TypeVar("Point")

DEFAULT_THETA = math.pi / 4
DEFAULT_DT = 0.01


class SweepService:
    """Evaluates sweep grids concurrently and writes them in grid order."""

    def __init__(
        self,
        gaussian_service: GaussianService,
        ghz_service: GhzService,
        sweep_repo: SweepRepositoryPort,
        app_settings: Optional[Settings] = None,
    ):
        self.gaussian_service = gaussian_service
        self.ghz_service = ghz_service
        self.sweep_repo = sweep_repo
        self.settings = app_settings or default_settings

    # ------------------------------------------------------------------
    # Validation
    # ------------------------------------------------------------------

    @staticmethod
    def _required(config: SweepConfig, name: str) -> ParameterRange:
        value = getattr(config, name)
        if value is None:
            raise SweepConfigError(
                f"Scenario '{config.scenario.value}' needs a range for '{name}'"
            )
        return value

    @staticmethod
    def _within(
        name: str, grid: ParameterRange, accepts: Callable[[float], bool], domain: str
    ) -> list[float]:
        values = grid.values()
        for value in values:
            if not accepts(value):
                raise SweepConfigError(f"{name}={value} is outside {domain}")
        return values

    def _angles_and_noise(self, config: SweepConfig) -> tuple[list[float], list[float]]:
        thetas = self._within(
            "theta",
            config.theta or ParameterRange.single(DEFAULT_THETA),
            lambda v: 0.0 <= v <= math.pi / 2,
            "[0, pi/2]",
        )
        ks = self._within(
            "k", config.k or ParameterRange.single(0.0), lambda v: v >= 0.0, "[0, inf)"
        )
        return thetas, ks

    def _squeezings(self, config: SweepConfig) -> list[float]:
        return self._within(
            "z", self._required(config, "z"), lambda v: 0.0 < v <= 1.0, "(0, 1]"
        )

    def _ghz_grid(self, config: SweepConfig) -> tuple[list[int], list[float], float]:
        ns = self._within(
            "N",
            self._required(config, "n"),
            lambda v: v >= 1.0 and float(v).is_integer(),
            "the positive integers",
        )
        ps = self._within("p", self._required(config, "p"), lambda v: 0.0 <= v <= 1.0, "[0, 1]")
        dt_range = config.dt or ParameterRange.single(DEFAULT_DT)
        if dt_range.steps != 1:
            raise SweepConfigError("The GHZ sweep takes a single evolution time dt")
        dt = dt_range.min
        if dt <= 0.0:
            raise SweepConfigError(f"dt must be positive, got {dt}")
        counts = [int(n) for n in ns]
        if not config.closed_form_only:
            limit = self.settings.ghz.max_dense_qubits
            largest = max(counts)
            if largest + 1 > limit:
                raise DenseSizeError(
                    f"N={largest} needs {largest + 1} qubits, above the dense guard of "
                    f"{limit}; rerun with --closed-form-only"
                )
        return counts, ps, dt

    # ------------------------------------------------------------------
    # Grid evaluation
    # ------------------------------------------------------------------

    @staticmethod
    async def _evaluate(
        points: Sequence[Point], fn: Callable[[Point], SweepRow]
    ) -> list[SweepRow]:
        """Concurrent evaluation; gather keeps the grid order."""
        return list(await asyncio.gather(*(asyncio.to_thread(fn, p) for p in points)))

    async def run_free_particle(self, config: SweepConfig) -> list[FreeParticleRow]:
        thetas, ks = self._angles_and_noise(config)
        zs = self._squeezings(config)
        radii = self._within(
            "R", self._required(config, "r"), lambda v: v >= 0.0, "[0, inf)"
        )
        witness_tol = self.settings.tolerances.witness

        def row(point: tuple[float, float, float, float]) -> FreeParticleRow:
            theta, k, z, R = point
            gamma = self.gaussian_service.gamma_free_particle(
                z, theta, k, R, convention=config.gamma_convention
            )
            return FreeParticleRow(
                z=z, R=R, theta=theta, k=k, gamma=gamma, violation=gamma < 1.0 - witness_tol
            )

        points = list(itertools.product(thetas, ks, zs, radii))
        logger.info("Free-particle sweep over %d grid points", len(points))
        return await self._evaluate(points, row)

    async def run_displacement(self, config: SweepConfig) -> list[DisplacementRow]:
        thetas, ks = self._angles_and_noise(config)
        zs = self._squeezings(config)
        if config.d_mean <= 0.0:
            raise SweepConfigError(f"d_mean must be positive, got {config.d_mean}")
        units = config.units

        def row(point: tuple[float, float, float]) -> DisplacementRow:
            theta, k, z = point
            params = TmssParams.from_ratio(
                z=z, theta=theta, k=k, R=1.0, m=units.m, hbar=units.hbar
            )
            bound, actual, violated = self.gaussian_service.displacement_protocol_bound(
                params, config.d_mean
            )
            return DisplacementRow(
                z=z, theta=theta, k=k, bound=bound, actual=actual, violation=violated
            )

        points = list(itertools.product(thetas, ks, zs))
        logger.info("Displacement sweep over %d grid points", len(points))
        return await self._evaluate(points, row)

    async def run_ghz(self, config: SweepConfig) -> list[GhzRow]:
        counts, ps, dt = self._ghz_grid(config)
        units = config.units

        def row(point: tuple[int, float]) -> GhzRow:
            N, p = point
            scenario = GhzScenario(N=N, p=p, mu=units.mu, hbar=units.hbar)
            time_bound = self.ghz_service.ghz_time_bound(scenario)
            if config.closed_form_only:
                qfi_dense = var_dense = math.nan
                violated = dt < time_bound - self.settings.tolerances.witness
            else:
                qfi_dense = self.ghz_service.ghz_conditional_qfi_dense(scenario) * units.hbar**2
                var_dense = self.ghz_service.ghz_energy_variance_dense(scenario)
                violated = self.ghz_service.ghz_geometric_witness(scenario, dt).violated
            return GhzRow(
                N=N,
                p=p,
                mu=units.mu,
                p_c=self.ghz_service.critical_visibility(N),
                time_bound=time_bound,
                qfi_closed=self.ghz_service.ghz_conditional_qfi_closed(scenario),
                qfi_dense=qfi_dense,
                var_bound=self.ghz_service.ghz_energy_variance_bound(scenario),
                var_dense=var_dense,
                violation_at_dt=violated,
            )

        points = list(itertools.product(counts, ps))
        logger.info("GHZ sweep over %d grid points at dt=%g", len(points), dt)
        return await self._evaluate(points, row)

    async def run(self, config: SweepConfig) -> list[SweepRow]:
        runners = {
            Scenario.FREE_PARTICLE: self.run_free_particle,
            Scenario.DISPLACEMENT: self.run_displacement,
            Scenario.GHZ: self.run_ghz,
        }
        return await runners[config.scenario](config)

    async def run_and_save(self, config: SweepConfig) -> str:
        """Evaluate the whole grid, then hand it to the single writer."""
        rows = await self.run(config)
        return await self.sweep_repo.save_rows(rows, config.output)

"""Closed forms of the two-mode squeezed state against its covariance pipeline."""

import math

import numpy as np
from pydantic import ValidationError

from application.services.assemblage_service import AssemblageService
from application.services.checks.base_checks import BaseChecks, CheckFn, relative_error
from application.services.gaussian_service import GaussianService
from config.settings import Settings
from domain.entities.constants import Constants
from domain.entities.gaussian import HomodyneSetting, Quadrature, TmssParams
from domain.entities.verification import CheckResult
from domain.exceptions import SpeedLimitError
from infrastructure.oracles.quadrature_oracle import QuadratureMomentOracle
from infrastructure.oracles.random_ensembles import random_tmss_params

PIPELINE_RTOL = 1e-10
SPECIAL_CASE_RTOL = 1e-12
SCHUR_RTOL = 1e-12
NOISE_LIMIT = 1e-8
NOISE_LIMIT_TOL = 1e-6
BOUNDARY_TOL = 1e-6
NORMALIZATION_TOL = 1e-10
DETERMINANT_RTOL = 1e-12
DISPLACEMENT_RTOL = 1e-12
SQUEEZED_VACUUM_R = (0.5, 1.0, 2.0)


class GaussianChecks(BaseChecks):
    stream_offset = 2_000

    def __init__(
        self,
        app_settings: Settings,
        seed: int,
        service: GaussianService,
        assemblage_service: AssemblageService,
        oracle: QuadratureMomentOracle,
    ):
        super().__init__(app_settings, seed)
        self.service = service
        self.assemblage_service = assemblage_service
        self.oracle = oracle

    def checks(self) -> dict[str, CheckFn]:
        return {
            "gamma_pipeline_agreement": self.gamma_pipeline_agreement,
            "gamma_special_cases": self.gamma_special_cases,
            "gamma_monotonicity": self.gamma_monotonicity,
            "conditional_physicality": self.conditional_physicality,
            "violation_region_structure": self.violation_region_structure,
            "displacement_protocol": self.displacement_protocol,
            "free_evolution_determinant": self.free_evolution_determinant,
            "time_threshold_monotone": self.time_threshold_monotone,
            "outcome_normalization": self.outcome_normalization,
        }

    def gamma_pipeline_agreement(self) -> CheckResult:
        """Printed gamma is twice the value assembled from the covariance."""
        rng = self.rng(0)
        worst, failures = 0.0, 0
        for _ in range(self.settings.verification.gamma_draws):
            params = random_tmss_params(rng)
            printed = self.service.gamma_free_particle(
                params.z, params.theta, params.k, params.R, convention="printed"
            )
            try:
                pipeline = self.service.gamma_from_covariance(params)
            except (SpeedLimitError, ValidationError):
                failures += 1
                worst = math.inf
                continue
            worst = max(worst, relative_error(printed, 2.0 * pipeline))
        return self.result(
            "gamma_pipeline_agreement",
            worst,
            PIPELINE_RTOL,
            failures == 0 and worst <= PIPELINE_RTOL,
            f"{failures} non-physical conditionings",
        )

    def gamma_special_cases(self) -> CheckResult:
        worst = 0.0
        for z in np.linspace(0.01, 1.0, 100):
            for k in (0.0, 1.0, 2.5):
                for R in (0.1, 1.0, 3.0):
                    flat = self.service.gamma_free_particle(z, 0.0, k, R, "printed")
                    diagonal = self.service.gamma_free_particle(
                        z, math.pi / 4, k, R, "printed"
                    )
                    expected_flat = 2.0 * (k + 1.0) ** 2 * (R**2 * z + 2.0)
                    expected_diagonal = (
                        8.0
                        * (k + 1.0) ** 2
                        * z
                        * (R**2 * (z**4 + 1.0) + 2.0 * (z**3 + z))
                        / (z**2 + 1.0) ** 3
                    )
                    worst = max(
                        worst,
                        relative_error(flat**2, expected_flat),
                        relative_error(diagonal**2, expected_diagonal),
                    )
        return self.result(
            "gamma_special_cases", worst, SPECIAL_CASE_RTOL, worst <= SPECIAL_CASE_RTOL
        )

    def gamma_monotonicity(self) -> CheckResult:
        """gamma never decreases with R or with the thermal excess k."""
        worst = 0.0
        radii = np.linspace(0.0, 3.0, 31)
        excesses = np.linspace(0.0, 3.0, 13)
        for z in np.linspace(0.05, 1.0, 20):
            for theta in np.linspace(0.0, math.pi / 2, 7):
                by_r = [self.service.gamma_free_particle(z, theta, 0.5, R) for R in radii]
                by_k = [self.service.gamma_free_particle(z, theta, k, 0.5) for k in excesses]
                for values in (by_r, by_k):
                    drops = -np.diff(values)
                    worst = max(worst, float(np.max(drops)))
        return self.result("gamma_monotonicity", worst, 1e-12, worst <= 1e-12)

    @staticmethod
    def _moderate(rng: np.random.Generator) -> TmssParams:
        """Draws near vacuum scale, where s = 1e-8 is already the ideal limit."""
        return TmssParams.from_ratio(
            z=float(rng.uniform(0.3, 1.0)),
            theta=float(rng.uniform(0.0, math.pi / 2)),
            k=float(rng.uniform(0.0, 1.0)),
            R=float(rng.uniform(0.5, 2.0)),
        )

    def conditional_physicality(self) -> CheckResult:
        """Ideal conditionings are physical, match closed forms and the noisy limit."""
        rng = self.rng(1)
        worst_floor, worst_schur, worst_noise, failures = math.inf, 0.0, 0.0, 0
        for _ in range(self.settings.verification.moment_draws):
            params = random_tmss_params(rng)
            state = self.service.tmss_covariance(params)
            moderate = self.service.tmss_covariance(self._moderate(rng))
            for quadrature in Quadrature:
                ideal_setting = HomodyneSetting.ideal_on(quadrature)
                try:
                    _, ideal = self.service.condition_on_homodyne(
                        state, ideal_setting, float(state.mean_a[quadrature.index])
                    )
                    a = float(rng.normal(moderate.mean_a[quadrature.index], 1.0))
                    _, limit = self.service.condition_on_homodyne(moderate, ideal_setting, a)
                    _, noisy = self.service.condition_on_homodyne(
                        moderate, HomodyneSetting.noisy(quadrature, NOISE_LIMIT), a
                    )
                except (SpeedLimitError, ValidationError):
                    failures += 1
                    continue
                worst_floor = min(worst_floor, ideal.determinant - params.hbar**2 / 4.0)
                closed = self.service.conditional_quadrature_variance(params, quadrature)
                conditioned = ideal.cov[quadrature.index, quadrature.index]
                worst_schur = max(worst_schur, relative_error(conditioned, closed))
                worst_noise = max(
                    worst_noise,
                    float(np.max(np.abs(noisy.cov - limit.cov))),
                    float(np.max(np.abs(noisy.mean - limit.mean))),
                )
        for r in SQUEEZED_VACUUM_R:
            vacuum = TmssParams(
                z=math.exp(-2.0 * r), theta=math.pi / 4, dx0=math.sqrt(0.5), dp0=math.sqrt(0.5)
            )
            if not self.service.tmss_covariance(vacuum).is_physical(
                self.settings.tolerances.psd
            ):
                failures += 1
        passed = (
            failures == 0
            and worst_floor >= -self.settings.tolerances.psd
            and worst_schur <= SCHUR_RTOL
            and worst_noise <= NOISE_LIMIT_TOL
        )
        return self.result(
            "conditional_physicality",
            worst_floor,
            self.settings.tolerances.psd,
            passed,
            f"schur={worst_schur:.3e} noise_limit={worst_noise:.3e} failures={failures}",
        )

    def violation_region_structure(self) -> CheckResult:
        """Diagonal mixing, vacuum noise: the region is down-closed and shrinks with R."""
        theta = math.pi / 4
        zs = np.linspace(0.01, 1.0, 100)
        previous = None
        structured = True
        for R in np.linspace(0.01, 0.3, 30):
            region = np.array(
                [self.service.gamma_free_particle(z, theta, 0.0, R, "printed") < 1.0 for z in zs]
            )
            if not region.any():
                structured = False
            # down-closed: once gamma reaches one it stays there
            if np.any(region[1:] & ~region[:-1]):
                structured = False
            if previous is not None and np.any(region & ~previous):
                structured = False
            previous = region
        boundary = self.service.violation_boundary(1e-6, theta, 0.0, convention="printed")
        gap = abs(boundary - (2.0 - math.sqrt(3.0)))
        return self.result(
            "violation_region_structure",
            gap,
            BOUNDARY_TOL,
            structured and gap <= BOUNDARY_TOL,
            f"boundary={boundary:.12g}",
        )

    def displacement_protocol(self) -> CheckResult:
        worst, consistent = 0.0, True
        for z in np.linspace(0.1, 0.9, 9):
            flat = TmssParams.from_ratio(z=float(z), theta=0.0, k=0.0, R=1.0)
            bound, actual, _ = self.service.displacement_protocol_bound(flat, 1.0)
            worst = max(worst, relative_error(bound, actual))

            diagonal = TmssParams.from_ratio(z=float(z), theta=math.pi / 4, k=0.0, R=1.0)
            bound, actual, violated = self.service.displacement_protocol_bound(diagonal, 1.0)
            consistent = consistent and violated
            worst = max(worst, relative_error(bound / actual, (z**2 + 1.0) / (2.0 * z)))
        reference = self.assemblage_service.displacement_time_bound(
            1.0, 0.25, 0.25, Constants()
        )
        worst = max(worst, relative_error(reference, 2.0))
        return self.result(
            "displacement_protocol",
            worst,
            DISPLACEMENT_RTOL,
            consistent and worst <= DISPLACEMENT_RTOL,
        )

    def free_evolution_determinant(self) -> CheckResult:
        """det(cov) survives free flight, relative to the products that cancel in it."""
        rng = self.rng(2)
        worst = 0.0
        for _ in range(self.settings.verification.evolution_draws):
            params = random_tmss_params(rng)
            state = self.service.tmss_covariance(params)
            _, cond = self.service.condition_on_homodyne(
                state, HomodyneSetting.ideal_on(Quadrature.POSITION), 0.0
            )
            evolved = self.service.evolve_free(cond, params.m, float(rng.uniform(0.0, 10.0)))
            cov = evolved.cov
            scale = abs(cov[0, 0] * cov[1, 1]) + cov[0, 1] ** 2
            worst = max(worst, abs(evolved.determinant - cond.determinant) / scale)
        return self.result(
            "free_evolution_determinant", worst, DETERMINANT_RTOL, worst <= DETERMINANT_RTOL
        )

    def time_threshold_monotone(self) -> CheckResult:
        """gamma(dt) never decreases and its bisected crossing matches the closed form."""
        rng = self.rng(3)
        worst_drop, worst_gap, used = 0.0, 0.0, 0
        tolerance = 2.0 * self.settings.gaussian.bisection_tol
        for _ in range(self.settings.verification.evolution_draws):
            params = TmssParams.from_ratio(
                z=float(rng.uniform(0.02, 0.2)),
                theta=math.pi / 4,
                k=0.0,
                R=float(rng.uniform(0.01, 0.2)),
            )
            gamma0 = self.service.gamma_free_particle(
                params.z, params.theta, params.k, params.R
            )
            if gamma0 >= 1.0:
                continue
            used += 1
            state = self.service.tmss_covariance(params)
            _, cond = self.service.condition_on_homodyne(
                state, HomodyneSetting.ideal_on(Quadrature.POSITION), 0.0
            )
            crossing = params.m * math.sqrt(cond.var_x / cond.var_p) * math.sqrt(
                1.0 / gamma0**2 - 1.0
            )
            path = [
                self.service.gamma_at_time(params, dt)
                for dt in np.linspace(0.0, 2.0 * crossing, 25)
            ]
            worst_drop = max(worst_drop, float(np.max(-np.diff(path))))
            _, numeric = self.service.time_threshold_free(params)
            worst_gap = max(
                worst_gap, abs(numeric - crossing) - 1e-12 * crossing
            )
        return self.result(
            "time_threshold_monotone",
            worst_gap,
            tolerance,
            used > 0 and worst_drop <= 1e-12 and worst_gap <= tolerance,
            f"{used} draws below one, largest drop {worst_drop:.3e}",
        )

    def outcome_normalization(self) -> CheckResult:
        rng = self.rng(4)
        worst = 0.0
        for _ in range(20):
            params = random_tmss_params(rng)
            state = self.service.tmss_covariance(params)
            quadrature = Quadrature.MOMENTUM if rng.random() < 0.5 else Quadrature.POSITION
            setting = HomodyneSetting.ideal_on(quadrature)
            index = quadrature.index
            total = self.oracle.outcome_normalization(
                lambda a: self.service.condition_on_homodyne(state, setting, a)[0],
                float(state.mean_a[index]),
                math.sqrt(state.sigma_a[index, index]),
            )
            worst = max(worst, abs(total - 1.0))
        return self.result(
            "outcome_normalization", worst, NORMALIZATION_TOL, worst <= NORMALIZATION_TOL
        )

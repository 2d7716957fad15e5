"""Two-mode squeezed states, homodyne conditioning and the free-particle witness."""

import logging
import math
from typing import Literal, Optional

import numpy as np
from scipy.optimize import bisect
from scipy.special import erf

from application.services.assemblage_service import AssemblageService
from config.settings import Settings, settings as default_settings
from domain.entities.constants import Constants
from domain.entities.gaussian import (
    GaussianBipartiteState,
    HomodyneSetting,
    Quadrature,
    SingleModeGaussian,
    TmssParams,
)
from domain.exceptions import NonPhysicalStateError, SpeedLimitError, UnitsError

logger = logging.getLogger(__name__)

GammaConvention = Literal["printed", "physical"]


class GaussianService:
    """Continuous-variable engine for the free-particle and displacement protocols."""

    def __init__(
        self,
        app_settings: Optional[Settings] = None,
        assemblage_service: Optional[AssemblageService] = None,
    ):
        self.settings = app_settings or default_settings
        self.assemblage_service = assemblage_service or AssemblageService(
            tolerances=self.settings.tolerances
        )

    # ------------------------------------------------------------------
    # State preparation and conditioning
    # ------------------------------------------------------------------

    def tmss_covariance(self, params: TmssParams) -> GaussianBipartiteState:
        """Moments of the thermal two-mode squeezed state."""
        z, theta = params.z, params.theta
        cos2, sin2 = math.cos(theta) ** 2, math.sin(theta) ** 2
        dx2, dp2 = params.dx0**2, params.dp0**2
        cross = math.sin(2.0 * theta) * (1.0 / (2.0 * z) - z / 2.0)

        cross_x = dx2 * cross
        if self.settings.gaussian.printed_cross_prefactor:
            cross_x *= params.hbar**2 / params.p0**2

        cov = np.zeros((4, 4))
        cov[0, 0] = dx2 * (z * cos2 + sin2 / z)
        cov[1, 1] = dp2 * (z * sin2 + cos2 / z)
        cov[2, 2] = dx2 * (z * sin2 + cos2 / z)
        cov[3, 3] = dp2 * (z * cos2 + sin2 / z)
        cov[0, 2] = cov[2, 0] = cross_x
        cov[1, 3] = cov[3, 1] = -dp2 * cross
        mean = np.array([0.0, params.p0, 0.0, params.p0])
        return GaussianBipartiteState(mean=mean, cov=cov, hbar=params.hbar)

    def condition_on_homodyne(
        self, state: GaussianBipartiteState, setting: HomodyneSetting, a: float
    ) -> tuple[float, SingleModeGaussian]:
        """Outcome density and Bob's conditional state after Alice's homodyne."""
        if not state.is_physical(self.settings.tolerances.psd):
            raise NonPhysicalStateError(
                "Bipartite covariance violates the uncertainty principle"
            )
        index = setting.quadrature.index
        sigma_a, sigma_b, sigma_ab = state.sigma_a, state.sigma_b, state.sigma_ab

        if setting.ideal:
            variance = float(sigma_a[index, index])
            if variance <= 0.0:
                raise NonPhysicalStateError("Measured quadrature has no spread")
            # Moore-Penrose inverse of the rank-one projected block
            gain = np.outer(setting.direction, setting.direction) / variance
            residual = np.zeros(2)
            residual[index] = a - state.mean_a[index]
        else:
            total = sigma_a + setting.measurement_cov
            variance = float(total[index, index])
            gain = np.linalg.inv(total)
            residual = np.zeros(2)
            residual[index] = a - state.mean_a[index]

        mean = state.mean_b + sigma_ab.T @ gain @ residual
        cov = sigma_b - sigma_ab.T @ gain @ sigma_ab
        pdf = math.exp(-((a - state.mean_a[index]) ** 2) / (2.0 * variance)) / math.sqrt(
            2.0 * math.pi * variance
        )
        return pdf, SingleModeGaussian(
            mean=mean, cov=(cov + cov.T) / 2.0, hbar=state.hbar
        )

    # ------------------------------------------------------------------
    # Closed-form conditional moments
    # ------------------------------------------------------------------

    @staticmethod
    def _angles(params: TmssParams) -> tuple[float, float, float]:
        """(z^2 cos^2 + sin^2, cos^2 + z^2 sin^2, sin^2 cos^2 (z^2 - 1)^2)."""
        cos2, sin2 = math.cos(params.theta) ** 2, math.sin(params.theta) ** 2
        z2 = params.z**2
        return z2 * cos2 + sin2, cos2 + z2 * sin2, sin2 * cos2 * (z2 - 1.0) ** 2

    def conditional_quadrature_variance(
        self, params: TmssParams, quadrature: Quadrature
    ) -> float:
        """Bob's variance after Alice measures the same quadrature ideally."""
        position_den, momentum_den, _ = self._angles(params)
        if quadrature is Quadrature.POSITION:
            return params.dx0**2 * params.z / position_den
        return params.dp0**2 * params.z / momentum_den

    def conditional_fourth_moment(self, params: TmssParams) -> float:
        """Outcome average of (Delta p_B^2)^2 under Alice's momentum homodyne."""
        _, momentum_den, skew = self._angles(params)
        dp2, z = params.dp0**2, params.z
        return (
            2.0
            * dp2
            * (dp2 * (z**2 + 2.0 * skew) + 2.0 * params.p0**2 * z * momentum_den)
            / momentum_den**2
        )

    def conditional_h_variance_free(self, params: TmssParams) -> float:
        """(Delta H)^2_{B|A} for H = p^2/2m."""
        return self.conditional_fourth_moment(params) / (4.0 * params.m**2)

    def conditional_abs_mean_momentum(
        self, params: TmssParams, quadrature: Quadrature
    ) -> float:
        """Outcome average of |<p_B>| (folded normal for momentum conditioning)."""
        magnitude = abs(params.p0)
        if quadrature is Quadrature.POSITION:
            return magnitude
        state = self.tmss_covariance(params)
        spread2 = state.sigma_ab[1, 1] ** 2 / state.sigma_a[1, 1]
        if spread2 <= 0.0:
            return magnitude
        spread = math.sqrt(spread2)
        return spread * math.sqrt(2.0 / math.pi) * math.exp(
            -(magnitude**2) / (2.0 * spread2)
        ) + magnitude * erf(magnitude / (spread * math.sqrt(2.0)))

    # ------------------------------------------------------------------
    # Free-particle witness
    # ------------------------------------------------------------------

    def gamma_free_particle(
        self,
        z: float,
        theta: float,
        k: float,
        R: float,
        convention: Optional[GammaConvention] = None,
    ) -> float:
        """Steering ratio of the free-particle witness; gamma < 1 certifies steering.

        The printed convention is twice the physical one.
        """
        if not 0.0 < z <= 1.0:
            raise SpeedLimitError(f"z must lie in (0, 1], got {z}")
        if k < 0.0:
            raise SpeedLimitError(f"k must be non-negative, got {k}")
        if R < 0.0:
            raise SpeedLimitError(f"R must be non-negative, got {R}")
        convention = convention or self.settings.gaussian.gamma_convention

        z2 = z**2
        cos2t, cos4t = math.cos(2.0 * theta), math.cos(4.0 * theta)
        cos2, sin2 = math.cos(theta) ** 2, math.sin(theta) ** 2
        numerator = (
            -(R**2) * (1.0 - z2) ** 2 * cos4t
            + (z2 + 1.0) * (R**2 * (z2 + 1.0) + 4.0 * z)
            + 4.0 * z * (1.0 - z2) * cos2t
        )
        position_den = z2 * cos2 + sin2
        momentum_den = cos2 + z2 * sin2
        gamma2 = (k + 1.0) ** 2 * z * numerator / (2.0 * position_den * momentum_den**2)
        gamma = math.sqrt(max(gamma2, 0.0))
        return gamma if convention == "printed" else gamma / 2.0

    def gamma_from_covariance(self, params: TmssParams) -> float:
        """Physical gamma assembled from Schur complements of the covariance."""
        state = self.tmss_covariance(params)
        _, by_position = self.condition_on_homodyne(
            state, HomodyneSetting.ideal_on(Quadrature.POSITION), 0.0
        )
        _, by_momentum = self.condition_on_homodyne(
            state, HomodyneSetting.ideal_on(Quadrature.MOMENTUM), 0.0
        )
        var_p = by_momentum.var_p
        mean_spread = state.sigma_ab[1, 1] ** 2 / state.sigma_a[1, 1]
        fourth = 4.0 * var_p * (params.p0**2 + mean_spread) + 2.0 * var_p**2
        var_h = fourth / (4.0 * params.m**2)
        rate = abs(params.p0) / params.m
        time_scale = math.sqrt(by_position.var_x) / rate
        return time_scale * 2.0 * math.sqrt(var_h) / params.hbar

    def evolve_free(
        self, cond: SingleModeGaussian, m: float, dt: float
    ) -> SingleModeGaussian:
        """Symplectic free evolution x -> x + p dt/m."""
        if dt < 0.0:
            raise SpeedLimitError(f"Evolution time must be non-negative, got {dt}")
        symplectic = np.array([[1.0, dt / m], [0.0, 1.0]])
        cov = symplectic @ cond.cov @ symplectic.T
        return SingleModeGaussian(
            mean=symplectic @ cond.mean, cov=(cov + cov.T) / 2.0, hbar=cond.hbar
        )

    def gamma_at_time(self, params: TmssParams, dt: float) -> float:
        """gamma after Bob's conditional state evolves freely for ``dt``."""
        state = self.tmss_covariance(params)
        _, cond = self.condition_on_homodyne(
            state, HomodyneSetting.ideal_on(Quadrature.POSITION), 0.0
        )
        evolved = self.evolve_free(cond, params.m, dt)
        gamma0 = self.gamma_free_particle(params.z, params.theta, params.k, params.R)
        return gamma0 * math.sqrt(evolved.var_x / cond.var_x)

    def time_threshold_free(self, params: TmssParams) -> tuple[float, float]:
        """(closed-form time bound, exact crossing of gamma(dt) = 1)."""
        if params.hbar != 1.0 or params.m != 1.0:
            raise UnitsError("The free-particle time bound requires hbar = m = 1")
        R = params.R
        if not 0.0 < R < math.inf:
            raise SpeedLimitError(f"Time bound needs a finite positive R, got {R}")

        gamma0 = self.gamma_free_particle(params.z, params.theta, params.k, R)
        if gamma0 >= 1.0:
            return 0.0, 0.0
        var_h = self.conditional_h_variance_free(params)
        dt_closed = (1.0 - gamma0) * params.hbar / (4.0 * R**2 * var_h)

        def excess(dt: float) -> float:
            return self.gamma_at_time(params, dt) - 1.0

        upper = 1.0
        for _ in range(self.settings.gaussian.bisection_max_iter):
            if excess(upper) >= 0.0:
                break
            upper *= 2.0
        else:
            raise SpeedLimitError("Could not bracket the gamma(dt) = 1 crossing")
        dt_numeric = bisect(
            excess,
            0.0,
            upper,
            xtol=self.settings.gaussian.bisection_tol,
            maxiter=self.settings.gaussian.bisection_max_iter,
        )
        logger.debug(
            "Time threshold gamma0=%.12g closed=%.12g numeric=%.12g",
            gamma0, dt_closed, dt_numeric,
        )
        return dt_closed, float(dt_numeric)

    def violation_boundary(
        self,
        R: float,
        theta: float,
        k: float,
        z_low: float = 1e-9,
        convention: Optional[GammaConvention] = None,
    ) -> float:
        """Squeezing z in (z_low, 1] where gamma crosses one."""

        def excess(z: float) -> float:
            return self.gamma_free_particle(z, theta, k, R, convention) - 1.0

        if excess(z_low) * excess(1.0) > 0.0:
            raise SpeedLimitError(
                f"gamma does not cross one on ({z_low}, 1] for R={R}, theta={theta}, k={k}"
            )
        return float(
            bisect(
                excess,
                z_low,
                1.0,
                xtol=self.settings.gaussian.bisection_tol,
                maxiter=self.settings.gaussian.bisection_max_iter,
            )
        )

    # ------------------------------------------------------------------
    # Displacement protocol
    # ------------------------------------------------------------------

    def displacement_protocol_bound(
        self, params: TmssParams, d_mean_x: float
    ) -> tuple[float, float, bool]:
        """(LHS time bound, actual displacement time, violated)."""
        if params.p0 == 0.0:
            raise SpeedLimitError("The displacement protocol needs p0 != 0")
        if d_mean_x <= 0.0:
            raise SpeedLimitError(f"Displacement must be positive, got {d_mean_x}")
        var_x = self.conditional_quadrature_variance(params, Quadrature.POSITION)
        var_p = self.conditional_quadrature_variance(params, Quadrature.MOMENTUM)
        speed = abs(params.p0) / params.m
        bound = self.assemblage_service.displacement_time_bound(
            d_mean_x,
            var_x,
            speed**2 * var_p,
            Constants(hbar=params.hbar, m=params.m),
        )
        actual = d_mean_x / speed
        return bound, actual, actual < bound - self.settings.tolerances.witness

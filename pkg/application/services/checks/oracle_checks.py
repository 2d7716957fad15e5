"""Brute-force oracles against the closed-form conditional moments."""

import math

import numpy as np

from application.services.checks.base_checks import BaseChecks, CheckFn, relative_error
from application.services.gaussian_service import GaussianService
from config.settings import Settings
from domain.entities.constants import Constants
from domain.entities.gaussian import HomodyneSetting, Quadrature, TmssParams
from domain.entities.oracle import McConfig, MomentFunctional
from domain.entities.verification import CheckResult
from infrastructure.oracles.fidelity_oracle import FidelityQfiOracle
from infrastructure.oracles.monte_carlo_oracle import MonteCarloMomentOracle
from infrastructure.oracles.quadrature_oracle import QuadratureMomentOracle, hermite_rule
from infrastructure.oracles.random_ensembles import (
    random_density_matrix,
    random_hermitian,
    random_tmss_params,
)

MONOMIAL_RTOL = 1e-12
MONOMIAL_ORDER = 20
AGREEMENT_RTOL = 1e-8
MC_FRACTION = 0.99
RICHARDSON_EPS = 0.1
RICHARDSON_RATIO = (3.5, 4.5)

# (conditioned quadrature, functional) pairs with a closed form
MOMENT_CASES = (
    (Quadrature.POSITION, MomentFunctional.VAR_X),
    (Quadrature.MOMENTUM, MomentFunctional.VAR_P),
    (Quadrature.MOMENTUM, MomentFunctional.FOURTH_P),
    (Quadrature.MOMENTUM, MomentFunctional.ABS_MEAN_P),
    (Quadrature.POSITION, MomentFunctional.ABS_MEAN_P),
)


class OracleChecks(BaseChecks):
    stream_offset = 4_000

    def __init__(
        self,
        app_settings: Settings,
        seed: int,
        gaussian_service: GaussianService,
        quadrature_oracle: QuadratureMomentOracle,
        fidelity_oracle: FidelityQfiOracle,
    ):
        super().__init__(app_settings, seed)
        self.gaussian_service = gaussian_service
        self.quadrature_oracle = quadrature_oracle
        self.fidelity_oracle = fidelity_oracle

    def checks(self) -> dict[str, CheckFn]:
        return {
            "quadrature_monomials": self.quadrature_monomials,
            "quadrature_agreement": self.quadrature_agreement,
            "monte_carlo_agreement": self.monte_carlo_agreement,
            "richardson_order": self.richardson_order,
            "monte_carlo_determinism": self.monte_carlo_determinism,
        }

    def closed_form(
        self, params: TmssParams, quadrature: Quadrature, functional: MomentFunctional
    ) -> float:
        if functional in (MomentFunctional.VAR_X, MomentFunctional.VAR_P):
            return self.gaussian_service.conditional_quadrature_variance(params, quadrature)
        if functional is MomentFunctional.FOURTH_P:
            return self.gaussian_service.conditional_fourth_moment(params)
        return self.gaussian_service.conditional_abs_mean_momentum(params, quadrature)

    def quadrature_monomials(self) -> CheckResult:
        """Exactness for x^k, k < 2 * order, against standard normal moments."""
        rule = hermite_rule(MONOMIAL_ORDER)
        worst = 0.0
        for power in range(2 * MONOMIAL_ORDER):
            exact = 0.0 if power % 2 else float(math.prod(range(power - 1, 0, -2)))
            value = rule.expectation(rule.nodes**power)
            scale = rule.expectation(np.abs(rule.nodes) ** power)
            worst = max(worst, abs(value - exact) / scale)
        return self.result(
            "quadrature_monomials", worst, MONOMIAL_RTOL, worst <= MONOMIAL_RTOL
        )

    def quadrature_agreement(self) -> CheckResult:
        rng = self.rng(0)
        worst = 0.0
        for _ in range(self.settings.verification.moment_draws):
            params = random_tmss_params(rng)
            state = self.gaussian_service.tmss_covariance(params)
            for quadrature, functional in MOMENT_CASES:
                estimate = self.quadrature_oracle.estimate(
                    state, HomodyneSetting.ideal_on(quadrature), functional
                )
                expected = self.closed_form(params, quadrature, functional)
                worst = max(worst, relative_error(estimate.value, expected))
        return self.result(
            "quadrature_agreement", worst, AGREEMENT_RTOL, worst <= AGREEMENT_RTOL
        )

    def monte_carlo_agreement(self) -> CheckResult:
        """Closed forms lie within the configured number of standard errors."""
        rng = self.rng(1)
        config = McConfig(samples=self.settings.verification.mc_samples, seed=self.seed)
        sigmas = self.settings.verification.mc_sigmas
        inside, total = 0, 0
        for draw in range(self.settings.verification.moment_draws):
            params = random_tmss_params(rng)
            state = self.gaussian_service.tmss_covariance(params)
            for case, (quadrature, functional) in enumerate(MOMENT_CASES):
                oracle = MonteCarloMomentOracle(
                    config, stream=self.stream_offset + draw * len(MOMENT_CASES) + case
                )
                estimate = oracle.estimate(
                    state, HomodyneSetting.ideal_on(quadrature), functional
                )
                expected = self.closed_form(params, quadrature, functional)
                if estimate.stderr == 0.0:
                    agrees = relative_error(estimate.value, expected) <= AGREEMENT_RTOL
                else:
                    agrees = abs(estimate.value - expected) <= sigmas * estimate.stderr
                inside += agrees
                total += 1
        fraction = inside / total
        return self.result(
            "monte_carlo_agreement",
            fraction,
            MC_FRACTION,
            fraction >= MC_FRACTION,
            f"{inside}/{total} within {sigmas} standard errors",
        )

    def richardson_order(self) -> CheckResult:
        """The finite-difference error shrinks fourfold when eps halves."""
        ratios = []
        c = Constants(hbar=self.settings.units.hbar)
        for index in range(self.settings.verification.qfi_states):
            rng = self.rng(10_000 + index)
            rho = random_density_matrix(4, rng)
            H = random_hermitian(4, rng, scale=0.5)
            exact = self.fidelity_oracle.density.spectral_qfi(rho, H.matrix, c.hbar)
            coarse = self.fidelity_oracle.raw_qfi(rho, H, c, RICHARDSON_EPS) - exact
            fine = self.fidelity_oracle.raw_qfi(rho, H, c, RICHARDSON_EPS / 2.0) - exact
            if fine != 0.0:
                ratios.append(coarse / fine)
        median = float(np.median(ratios)) if ratios else math.nan
        return self.result(
            "richardson_order",
            median,
            RICHARDSON_RATIO[1] - RICHARDSON_RATIO[0],
            RICHARDSON_RATIO[0] <= median <= RICHARDSON_RATIO[1],
        )

    def monte_carlo_determinism(self) -> CheckResult:
        """Equal seeds reproduce bit for bit; another seed differs but still agrees."""
        params = TmssParams.from_ratio(z=0.5, theta=math.pi / 4, k=0.0, R=1.0)
        state = self.gaussian_service.tmss_covariance(params)
        setting = HomodyneSetting.ideal_on(Quadrature.MOMENTUM)
        functional = MomentFunctional.FOURTH_P
        samples = self.settings.verification.mc_samples
        first, second, other = (
            MonteCarloMomentOracle(McConfig(samples=samples, seed=seed)).estimate(
                state, setting, functional
            )
            for seed in (self.seed, self.seed, self.seed + 1)
        )
        expected = self.gaussian_service.conditional_fourth_moment(params)
        sigmas = self.settings.verification.mc_sigmas
        passed = (
            first == second
            and other.value != first.value
            and abs(first.value - expected) <= sigmas * first.stderr
            and abs(other.value - expected) <= sigmas * other.stderr
        )
        return self.result(
            "monte_carlo_determinism",
            abs(first.value - second.value),
            0.0,
            passed,
        )

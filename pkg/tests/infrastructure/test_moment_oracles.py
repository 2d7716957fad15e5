import math

import numpy as np
import pytest

from domain.entities.gaussian import HomodyneSetting, Quadrature, TmssParams
from domain.entities.oracle import McConfig, MomentFunctional, OracleKind
from domain.exceptions import SpeedLimitError, UnsupportedFunctionalError
from infrastructure.oracles.monte_carlo_oracle import (
    MonteCarloMomentOracle,
    mc_conditional_moment,
    stream_generator,
)
from infrastructure.oracles.oracle_factory import OracleFactory
from infrastructure.oracles.quadrature_oracle import (
    QuadratureMomentOracle,
    gaussian_expectation,
    quad_conditional_moment,
)

PARAMS = TmssParams.from_ratio(z=0.35, theta=0.7, k=0.8, R=0.9, p0=-1.2, m=1.3, hbar=0.9)


@pytest.fixture
def state(gaussian_service):
    return gaussian_service.tmss_covariance(PARAMS)


@pytest.mark.parametrize(
    "quadrature,functional",
    [
        (Quadrature.POSITION, MomentFunctional.VAR_X),
        (Quadrature.MOMENTUM, MomentFunctional.VAR_P),
    ],
)
def test_quadrature_variances_match_closed_form(gaussian_service, state, quadrature, functional):
    estimate = QuadratureMomentOracle().estimate(state, HomodyneSetting.ideal_on(quadrature), functional)
    expected = gaussian_service.conditional_quadrature_variance(PARAMS, quadrature)
    assert estimate.value == pytest.approx(expected, rel=1e-10)
    assert estimate.stderr == 0.0


def test_quadrature_fourth_moment_matches_closed_form(gaussian_service, state):
    value = quad_conditional_moment(
        state, HomodyneSetting.ideal_on(Quadrature.MOMENTUM), MomentFunctional.FOURTH_P
    )
    assert value == pytest.approx(gaussian_service.conditional_fourth_moment(PARAMS), rel=1e-10)


@pytest.mark.parametrize("quadrature", list(Quadrature))
def test_quadrature_abs_mean_matches_folded_normal(gaussian_service, state, quadrature):
    estimate = QuadratureMomentOracle().estimate(
        state, HomodyneSetting.ideal_on(quadrature), MomentFunctional.ABS_MEAN_P
    )
    expected = gaussian_service.conditional_abs_mean_momentum(PARAMS, quadrature)
    assert estimate.value == pytest.approx(expected, rel=1e-8)


@pytest.mark.parametrize("theta", [0.0068, 0.05, 0.3])
@pytest.mark.parametrize("R", [0.05, 0.5, 2.0])
def test_abs_mean_with_distant_kink_matches_folded_normal(gaussian_service, theta, R):
    # small theta puts the sign change of <p_B>(a) many outcome widths away
    params = TmssParams.from_ratio(z=0.2, theta=theta, k=0.0, R=R)
    state = gaussian_service.tmss_covariance(params)
    estimate = QuadratureMomentOracle().estimate(
        state, HomodyneSetting.ideal_on(Quadrature.MOMENTUM), MomentFunctional.ABS_MEAN_P
    )
    expected = gaussian_service.conditional_abs_mean_momentum(params, Quadrature.MOMENTUM)
    assert expected >= abs(params.p0) - 1e-12
    assert estimate.value == pytest.approx(expected, rel=1e-8)


def test_monte_carlo_is_seeded_and_agrees(gaussian_service, state):
    setting = HomodyneSetting.ideal_on(Quadrature.MOMENTUM)
    config = McConfig(samples=50_000, seed=11)
    first = MonteCarloMomentOracle(config, stream=2).estimate(state, setting, MomentFunctional.FOURTH_P)
    again = MonteCarloMomentOracle(config, stream=2).estimate(state, setting, "fourth_p")
    other = MonteCarloMomentOracle(config, stream=3).estimate(state, setting, MomentFunctional.FOURTH_P)
    assert first == again
    assert other.value != first.value
    expected = gaussian_service.conditional_fourth_moment(PARAMS)
    assert abs(first.value - expected) <= 5 * first.stderr
    assert first.evaluations == 50_000


def test_monte_carlo_constant_functional_has_no_error(gaussian_service, state):
    value, stderr = mc_conditional_moment(
        state,
        HomodyneSetting.ideal_on(Quadrature.POSITION),
        MomentFunctional.VAR_X,
        McConfig(samples=10_000),
    )
    assert stderr == 0.0
    assert value == pytest.approx(
        gaussian_service.conditional_quadrature_variance(PARAMS, Quadrature.POSITION), rel=1e-12
    )


def test_oracles_reject_unknown_functionals_and_noisy_settings(state):
    oracle = QuadratureMomentOracle()
    with pytest.raises(UnsupportedFunctionalError, match="Supported"):
        oracle.estimate(state, HomodyneSetting.ideal_on(Quadrature.POSITION), "sixth_p")
    with pytest.raises(SpeedLimitError):
        oracle.estimate(
            state, HomodyneSetting.noisy(Quadrature.POSITION, 0.1), MomentFunctional.VAR_X
        )


def test_stream_generators_are_independent():
    first = stream_generator(5, 0).standard_normal(4)
    np.testing.assert_array_equal(first, stream_generator(5, 0).standard_normal(4))
    assert not np.array_equal(first, stream_generator(5, 1).standard_normal(4))


def test_gaussian_expectation_of_square():
    assert gaussian_expectation(lambda a: a**2, 1.5, 2.0) == pytest.approx(1.5**2 + 4.0, rel=1e-13)


def test_outcome_normalization_of_homodyne_density(gaussian_service, state):
    setting = HomodyneSetting.ideal_on(Quadrature.MOMENTUM)
    total = QuadratureMomentOracle().outcome_normalization(
        lambda a: gaussian_service.condition_on_homodyne(state, setting, a)[0],
        float(state.mean_a[1]),
        math.sqrt(state.sigma_a[1, 1]),
    )
    assert total == pytest.approx(1.0, abs=1e-10)


def test_factory_builds_configured_oracles(app_settings):
    quadrature = OracleFactory.create_moment_oracle(OracleKind.QUADRATURE, app_settings.oracle)
    assert isinstance(quadrature, QuadratureMomentOracle)
    assert quadrature.order == app_settings.oracle.quadrature_order
    mc = OracleFactory.create_moment_oracle(OracleKind.MONTE_CARLO, app_settings.oracle, stream=4)
    assert mc.config.seed == app_settings.oracle.seed
    assert OracleFactory.get_supported_oracles() == [OracleKind.QUADRATURE, OracleKind.MONTE_CARLO]
    with pytest.raises(ValueError, match="Unsupported oracle kind"):
        OracleFactory.create_moment_oracle("symbolic")

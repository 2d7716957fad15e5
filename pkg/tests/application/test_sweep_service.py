import asyncio
import math

import pytest

from application.services.sweep_service import SweepService
from domain.entities.sweep import ParameterRange, Scenario, SweepConfig
from domain.exceptions import DenseSizeError, SweepConfigError
from driven.files.sweeps.adapter import CsvSweepRepositoryAdapter


@pytest.fixture
def sweep_service(app_settings, gaussian_service, ghz_service) -> SweepService:
    return SweepService(gaussian_service, ghz_service, CsvSweepRepositoryAdapter(), app_settings)


def single(value: float) -> ParameterRange:
    return ParameterRange.single(value)


def test_free_particle_reference_point(sweep_service):
    config = SweepConfig(scenario=Scenario.FREE_PARTICLE, z=single(1.0), r=single(1.0), theta=single(0.0))
    (row,) = asyncio.run(sweep_service.run(config))
    assert row.gamma == pytest.approx(math.sqrt(6.0), rel=1e-14)
    assert not row.violation


def test_free_particle_rows_follow_grid_order(sweep_service):
    config = SweepConfig(
        scenario=Scenario.FREE_PARTICLE,
        z=ParameterRange(min=0.1, max=0.2, steps=2),
        r=ParameterRange(min=0.05, max=0.1, steps=2),
    )
    rows = asyncio.run(sweep_service.run(config))
    assert [(row.z, row.R) for row in rows] == [(0.1, 0.05), (0.1, 0.1), (0.2, 0.05), (0.2, 0.1)]
    assert all(row.theta == pytest.approx(math.pi / 4) and row.k == 0.0 for row in rows)
    assert all(row.violation for row in rows)


def test_physical_convention_halves_gamma(sweep_service):
    config = SweepConfig(
        scenario=Scenario.FREE_PARTICLE,
        z=single(1.0),
        r=single(1.0),
        theta=single(0.0),
        gamma_convention="physical",
    )
    (row,) = asyncio.run(sweep_service.run(config))
    assert row.gamma == pytest.approx(math.sqrt(6.0) / 2, rel=1e-14)


def test_missing_and_out_of_range_parameters(sweep_service):
    with pytest.raises(SweepConfigError, match="'r'"):
        asyncio.run(sweep_service.run(SweepConfig(scenario=Scenario.FREE_PARTICLE, z=single(0.5))))
    with pytest.raises(SweepConfigError, match="z=1.5"):
        asyncio.run(
            sweep_service.run(SweepConfig(scenario=Scenario.FREE_PARTICLE, z=single(1.5), r=single(1.0)))
        )
    with pytest.raises(SweepConfigError, match="theta"):
        asyncio.run(
            sweep_service.run(
                SweepConfig(scenario=Scenario.DISPLACEMENT, z=single(0.5), theta=single(2.0))
            )
        )


def test_displacement_sweep(sweep_service):
    config = SweepConfig(scenario=Scenario.DISPLACEMENT, z=ParameterRange(min=0.5, max=1.0, steps=2), d_mean=2.0)
    low, high = asyncio.run(sweep_service.run(config))
    assert low.bound / low.actual == pytest.approx(1.25, rel=1e-12)
    assert low.violation
    assert high.bound == pytest.approx(high.actual, rel=1e-12)
    assert not high.violation


def test_ghz_dense_sweep(sweep_service, ghz_service):
    config = SweepConfig(scenario=Scenario.GHZ, n=single(2), p=ParameterRange(min=0.0, max=0.9, steps=2))
    silent, strong = asyncio.run(sweep_service.run(config))
    assert not silent.violation_at_dt
    assert strong.violation_at_dt
    assert strong.qfi_dense == pytest.approx(strong.qfi_closed, rel=1e-9)
    assert strong.p_c == pytest.approx(ghz_service.critical_visibility(2))


def test_ghz_closed_form_only_skips_dense_columns(sweep_service):
    config = SweepConfig(
        scenario=Scenario.GHZ,
        n=single(20),
        p=single(0.5),
        dt=single(1e-6),
        closed_form_only=True,
    )
    (row,) = asyncio.run(sweep_service.run(config))
    assert math.isnan(row.qfi_dense) and math.isnan(row.var_dense)
    assert row.violation_at_dt
    assert row.N == 20


def test_ghz_dense_guard_points_to_closed_form_path(sweep_service):
    config = SweepConfig(scenario=Scenario.GHZ, n=single(12), p=single(0.5))
    with pytest.raises(DenseSizeError, match="--closed-form-only"):
        asyncio.run(sweep_service.run(config))


def test_ghz_grid_validation(sweep_service):
    with pytest.raises(SweepConfigError):
        asyncio.run(
            sweep_service.run(
                SweepConfig(scenario=Scenario.GHZ, n=single(2), p=single(0.5), dt=ParameterRange(min=0.1, max=0.2, steps=2))
            )
        )
    with pytest.raises(SweepConfigError, match="N=1.5"):
        asyncio.run(sweep_service.run(SweepConfig(scenario=Scenario.GHZ, n=single(1.5), p=single(0.5))))


def test_run_and_save_writes_csv(sweep_service, tmp_path):
    destination = tmp_path / "gamma.csv"
    config = SweepConfig(
        scenario=Scenario.FREE_PARTICLE,
        z=single(1.0),
        r=single(1.0),
        theta=single(0.0),
        output=str(destination),
    )
    text = asyncio.run(sweep_service.run_and_save(config))
    assert destination.read_text(encoding="utf-8") == text
    header, row = text.splitlines()
    assert header == "z,R,theta,k,gamma,violation"
    assert row == "1,1,0,0,2.44948974278,0"

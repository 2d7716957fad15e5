"""Factory for creating moment oracles."""

from typing import Optional

from application.ports.driven.oracles.moment_oracle_port import MomentOraclePort
from config.settings import OracleSettings
from domain.entities.oracle import McConfig, OracleKind
from infrastructure.oracles.monte_carlo_oracle import MonteCarloMomentOracle
from infrastructure.oracles.quadrature_oracle import QuadratureMomentOracle


class OracleFactory:
    """Factory for creating moment oracles."""

    @staticmethod
    def create_moment_oracle(
        kind: OracleKind,
        oracle_settings: Optional[OracleSettings] = None,
        stream: int = 0,
    ) -> MomentOraclePort:
        """
        Create the oracle of the requested kind.

        Args:
            kind: Oracle kind
            oracle_settings: Quadrature order and Monte Carlo sizes
            stream: Monte Carlo stream index

        Returns:
            Moment oracle instance

        Raises:
            ValueError: If the oracle kind is not supported
        """
        oracle_settings = oracle_settings or OracleSettings()
        if kind == OracleKind.QUADRATURE:
            return QuadratureMomentOracle(
                order=oracle_settings.quadrature_order,
                max_order=oracle_settings.max_quadrature_order,
                rtol=oracle_settings.quadrature_rtol,
            )
        elif kind == OracleKind.MONTE_CARLO:
            return MonteCarloMomentOracle(
                McConfig(samples=oracle_settings.mc_samples, seed=oracle_settings.seed),
                stream=stream,
            )
        else:
            raise ValueError(
                f"Unsupported oracle kind: {kind}. "
                f"Supported kinds: quadrature, monte_carlo"
            )

    @staticmethod
    def get_supported_oracles() -> list[str]:
        return [OracleKind.QUADRATURE, OracleKind.MONTE_CARLO]

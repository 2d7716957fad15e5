from typing import Any, Callable, Dict, List, Optional

from application.ports.driven.oracles.moment_oracle_port import MomentOraclePort
from application.services.assemblage_service import AssemblageService
from application.services.density_matrix_service import DensityMatrixService
from application.services.gaussian_service import GaussianService
from application.services.ghz_service import GhzService
from application.services.sweep_service import SweepService
from application.services.verification_service import VerificationService
from config.settings import Settings, settings as default_settings
from domain.entities.oracle import OracleKind
from driven.files.reports.adapter import JsonReportRepositoryAdapter
from driven.files.sweeps.adapter import CsvSweepRepositoryAdapter
from infrastructure.oracles.oracle_factory import OracleFactory


class ServiceManager:
    """Concrete implementation of service manager for dependency injection"""

    def __init__(self, app_settings: Optional[Settings] = None):
        self.settings = app_settings or default_settings
        self._service_cache: Dict[str, Any] = {}
        self._repository_cache: Dict[str, Any] = {}
        self.services: Dict[str, Callable[..., Any]] = {
            "density": lambda: DensityMatrixService(self.settings.tolerances),
            "assemblage": lambda: AssemblageService(
                self._get_or_create_service("density"), self.settings.tolerances
            ),
            "gaussian": lambda: GaussianService(
                self.settings, self._get_or_create_service("assemblage")
            ),
            "ghz": lambda: GhzService(
                self.settings, self._get_or_create_service("assemblage")
            ),
            "sweep": lambda sweeps: SweepService(
                self._get_or_create_service("gaussian"),
                self._get_or_create_service("ghz"),
                sweeps,
                self.settings,
            ),
            "verification": lambda reports: VerificationService(
                self._get_or_create_service("assemblage"),
                self._get_or_create_service("gaussian"),
                self._get_or_create_service("ghz"),
                reports,
                self.settings,
            ),
        }
        self.repositories = {
            "sweeps": CsvSweepRepositoryAdapter,
            "reports": JsonReportRepositoryAdapter,
        }
        # Repositories injected into each service, in constructor order
        self.service_repositories: Dict[str, List[str]] = {
            "sweep": ["sweeps"],
            "verification": ["reports"],
        }

    def _get_or_create_repository(self, repositories_type: List[str]) -> List[Any]:
        """Get or create a repository instance with caching"""
        repos = []
        for repository_type in repositories_type:
            if repository_type not in self._repository_cache:
                if repository_type not in self.repositories:
                    raise ValueError(f"Unknown repository type: {repository_type}")
                self._repository_cache[repository_type] = self.repositories[
                    repository_type
                ]()

            repos.append(self._repository_cache[repository_type])
        return repos

    def _get_or_create_service(self, service_type: str) -> Any:
        """Get or create a service instance with caching"""
        if service_type not in self._service_cache:
            if service_type not in self.services:
                raise ValueError(f"Unknown service type: {service_type}")

            repos = self._get_or_create_repository(
                self.service_repositories.get(service_type, [])
            )
            self._service_cache[service_type] = self.services[service_type](*repos)
        return self._service_cache[service_type]

    def get_assemblage_service(self) -> AssemblageService:
        """Get assemblage service instance"""
        return self._get_or_create_service("assemblage")

    def get_gaussian_service(self) -> GaussianService:
        """Get Gaussian service instance"""
        return self._get_or_create_service("gaussian")

    def get_ghz_service(self) -> GhzService:
        """Get GHZ service instance"""
        return self._get_or_create_service("ghz")

    def get_sweep_service(self) -> SweepService:
        """Get sweep service instance"""
        return self._get_or_create_service("sweep")

    def get_verification_service(self) -> VerificationService:
        """Get verification service instance"""
        return self._get_or_create_service("verification")

    def get_moment_oracle(self, kind: OracleKind, stream: int = 0) -> MomentOraclePort:
        """Get a fresh moment oracle (oracles are cheap and hold a stream index)"""
        return OracleFactory.create_moment_oracle(kind, self.settings.oracle, stream)

    def get_service(self, service_type: str) -> Any:
        """Get service instance by type"""
        return self._get_or_create_service(service_type)

    def clear_cache(self) -> None:
        """Clear all cached instances (useful for testing)"""
        self._service_cache.clear()
        self._repository_cache.clear()


# Global service manager instance
_service_manager: Optional[ServiceManager] = None


def get_service_manager(app_settings: Optional[Settings] = None) -> ServiceManager:
    """Get global service manager instance (singleton pattern)"""
    global _service_manager
    if _service_manager is None:
        _service_manager = ServiceManager(app_settings)
    return _service_manager


def reset_service_manager() -> None:
    """Reset global service manager (useful for testing)"""
    global _service_manager
    _service_manager = None

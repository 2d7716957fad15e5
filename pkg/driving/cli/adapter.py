"""Argparse adapter for sweeps and verification runs."""

import argparse
import asyncio
import json
import logging
import sys
from pathlib import Path
from typing import Callable, Optional

from application.di.service_manager import ServiceManager
from application.ports.driving.cli.cli_port import CommandLinePort
from config.logging import configure_logging
from config.settings import Settings, settings as default_settings
from domain.entities.sweep import Scenario, SweepConfig
from domain.entities.verification import VerificationReport
from driving.cli.mapper import SweepCliMapper
from driving.cli.schemas.sweep_schemas import SWEPT_PARAMETERS, VerifyRequest

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2

PARAMETER_HELP = {
    "z": "squeezing z in (0, 1]",
    "r": "ratio R = dp0/|p0|",
    "theta": "mixing angle in radians",
    "k": "thermal excess",
    "n": "Bob's qubit count N",
    "p": "GHZ visibility",
    "dt": "evolution time",
}

SWEEP_COMMANDS = {
    "free-particle": Scenario.FREE_PARTICLE,
    "displacement": Scenario.DISPLACEMENT,
    "ghz": Scenario.GHZ,
}


class SweepCommandLineAdapter(CommandLinePort):
    """Command-line adapter; every command returns a process exit code."""

    def __init__(
        self,
        app_settings: Optional[Settings] = None,
        manager_factory: Callable[[Settings], ServiceManager] = ServiceManager,
    ):
        self.settings = app_settings or default_settings
        self.manager_factory = manager_factory
        self.mapper = SweepCliMapper()
        self.parser = argparse.ArgumentParser(
            prog="speed-steering",
            description="Steering witnesses from quantum speed limits.",
        )
        self._register_commands()

    def _register_commands(self) -> None:
        """Register all subcommands."""
        self.parser.add_argument("--log-level", default=None, help="logging level")
        commands = self.parser.add_subparsers(dest="command", required=True)

        for name, scenario in SWEEP_COMMANDS.items():
            command = commands.add_parser(name, help=f"{name} sweep to CSV")
            command.set_defaults(scenario=scenario)
            command.add_argument("--config", type=Path, help="JSON file of SweepConfig fields")
            for parameter in SWEPT_PARAMETERS:
                flag = parameter.replace("_", "-")
                label = PARAMETER_HELP[parameter]
                command.add_argument(f"--{flag}", type=float, help=f"single {label}")
                command.add_argument(f"--{flag}-min", type=float, help=f"smallest {label}")
                command.add_argument(f"--{flag}-max", type=float, help=f"largest {label}")
                command.add_argument(f"--{flag}-steps", type=int, help="grid points")
            command.add_argument("--d-mean", type=float, help="mean displacement")
            command.add_argument("--out", help='output CSV path, "-" for stdout')
            command.add_argument("--seed", type=int)
            command.add_argument("--hbar", type=float)
            command.add_argument("--m", type=float)
            command.add_argument("--mu", type=float)
            command.add_argument("--gamma-convention", choices=["printed", "physical"])
            command.add_argument("--printed-cross-prefactor", action="store_true")
            command.add_argument(
                "--closed-form-only",
                action="store_true",
                help="skip dense GHZ columns (written as nan)",
            )

        verify = commands.add_parser("verify", help="run every verification suite")
        verify.set_defaults(scenario=None)
        verify.add_argument("--out", help='JSON report path, "-" for stdout')
        verify.add_argument("--seed", type=int)
        verify.add_argument(
            "--check", action="append", help="run only this check (repeatable)"
        )
        verify.add_argument("--printed-cross-prefactor", action="store_true")

    def _settings_for(
        self, gamma_convention: Optional[str], printed_cross_prefactor: bool
    ) -> Settings:
        gaussian = self.settings.gaussian.model_copy(
            update={
                "gamma_convention": gamma_convention or self.settings.gaussian.gamma_convention,
                "printed_cross_prefactor": printed_cross_prefactor
                or self.settings.gaussian.printed_cross_prefactor,
            }
        )
        return self.settings.model_copy(update={"gaussian": gaussian})

    @staticmethod
    def _load_config(path: Optional[Path]) -> dict:
        if path is None:
            return {}
        data = json.loads(path.read_text(encoding="utf-8"))
        if not isinstance(data, dict):
            raise ValueError(f"{path} must hold a JSON object")
        return data

    async def cmd_sweep(self, config: SweepConfig) -> int:
        manager = self.manager_factory(
            self._settings_for(config.gamma_convention, config.printed_cross_prefactor)
        )
        await manager.get_sweep_service().run_and_save(config)
        return EXIT_OK

    async def cmd_free_particle(self, config: SweepConfig) -> int:
        return await self.cmd_sweep(config)

    async def cmd_displacement(self, config: SweepConfig) -> int:
        return await self.cmd_sweep(config)

    async def cmd_ghz(self, config: SweepConfig) -> int:
        return await self.cmd_sweep(config)

    async def cmd_verify(self, request: VerifyRequest) -> int:
        manager = self.manager_factory(
            self._settings_for(None, request.printed_cross_prefactor)
        )
        report = await manager.get_verification_service().run_and_save(
            request.output, request.seed, request.checks
        )
        self._summarize(report)
        return EXIT_OK if report.passed else EXIT_VERIFICATION_FAILED

    @staticmethod
    def _summarize(report: VerificationReport) -> None:
        for check in report.checks:
            status = "PASS" if check.passed else "FAIL"
            print(
                f"{status} {check.check_id}: measured={check.measured:.6g} "
                f"tolerance={check.tolerance:.3g} {check.detail}".rstrip(),
                file=sys.stderr,
            )
        failed = ", ".join(check.check_id for check in report.failed)
        print(
            f"{len(report.checks) - len(report.failed)}/{len(report.checks)} checks passed"
            + (f"; failed: {failed}" if failed else ""),
            file=sys.stderr,
        )

    async def dispatch(self, args: argparse.Namespace) -> int:
        """Run the parsed command; configuration errors exit with code 2."""
        try:
            if args.command == "verify":
                return await self.cmd_verify(self.mapper.args_to_verify_request(args))
            config = self.mapper.request_to_entity(
                self.mapper.args_to_request(args), self._load_config(args.config)
            )
            handlers = {
                Scenario.FREE_PARTICLE: self.cmd_free_particle,
                Scenario.DISPLACEMENT: self.cmd_displacement,
                Scenario.GHZ: self.cmd_ghz,
            }
            return await handlers[config.scenario](config)
        except (ValueError, OSError) as exc:
            logger.error("%s: %s", type(exc).__name__, exc)
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE

    def run(self, argv: Optional[list[str]] = None) -> int:
        args = self.parser.parse_args(argv)
        configure_logging(args.log_level)
        return asyncio.run(self.dispatch(args))

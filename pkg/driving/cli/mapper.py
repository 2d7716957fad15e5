"""Mapper between command-line arguments and sweep entities."""

import argparse
from typing import Any, Optional

from domain.entities.sweep import SweepConfig
from domain.exceptions import SweepConfigError
from driving.cli.schemas.sweep_schemas import (
    SWEPT_PARAMETERS,
    RangeFlags,
    SweepRequest,
    VerifyRequest,
)


class SweepCliMapper:
    """Maps parsed arguments and JSON config files to SweepConfig entities."""

    def args_to_request(self, args: argparse.Namespace) -> SweepRequest:
        ranges = {
            name: RangeFlags(
                value=getattr(args, name, None),
                min=getattr(args, f"{name}_min", None),
                max=getattr(args, f"{name}_max", None),
                steps=getattr(args, f"{name}_steps", None),
            )
            for name in SWEPT_PARAMETERS
        }
        return SweepRequest(
            scenario=args.scenario,
            config_path=args.config,
            ranges={name: flags for name, flags in ranges.items() if not flags.is_empty},
            d_mean=args.d_mean,
            output=args.out,
            seed=args.seed,
            hbar=args.hbar,
            m=args.m,
            mu=args.mu,
            gamma_convention=args.gamma_convention,
            printed_cross_prefactor=args.printed_cross_prefactor,
            closed_form_only=args.closed_form_only,
        )

    def args_to_verify_request(self, args: argparse.Namespace) -> VerifyRequest:
        return VerifyRequest(
            output=args.out or "-",
            seed=args.seed,
            checks=args.check,
            printed_cross_prefactor=args.printed_cross_prefactor,
        )

    @staticmethod
    def _merge_range(name: str, base: Any, flags: RangeFlags) -> dict:
        """Flags override the file; a single value replaces the whole range."""
        if flags.value is not None:
            if flags.min is not None or flags.max is not None or flags.steps is not None:
                raise SweepConfigError(f"--{name} cannot be combined with a {name} range")
            return {"min": flags.value, "max": flags.value, "steps": 1}
        if isinstance(base, (int, float)):
            base = {"min": base, "max": base, "steps": 1}
        merged = dict(base or {})
        for field in ("min", "max", "steps"):
            value = getattr(flags, field)
            if value is not None:
                merged[field] = value
        if "min" not in merged or "max" not in merged:
            raise SweepConfigError(f"The {name} range needs both a minimum and a maximum")
        merged.setdefault("steps", 1)
        return merged

    def request_to_entity(
        self, request: SweepRequest, file_config: Optional[dict] = None
    ) -> SweepConfig:
        """Overlay the command-line request on the JSON config file."""
        data = dict(file_config or {})
        file_scenario = data.pop("scenario", None)
        if file_scenario is not None and file_scenario != request.scenario.value:
            raise SweepConfigError(
                f"Config file is for '{file_scenario}', not '{request.scenario.value}'"
            )
        data["scenario"] = request.scenario

        for name in SWEPT_PARAMETERS:
            base = data.get(name)
            flags = request.ranges.get(name)
            if flags is not None:
                data[name] = self._merge_range(name, base, flags)
            elif isinstance(base, (int, float)):
                data[name] = {"min": base, "max": base, "steps": 1}

        units = dict(data.get("units") or {})
        for field in ("hbar", "m", "mu"):
            value = getattr(request, field)
            if value is not None:
                units[field] = value
        data["units"] = units

        for field in ("d_mean", "output", "seed", "gamma_convention"):
            value = getattr(request, field)
            if value is not None:
                data[field] = value
        if request.printed_cross_prefactor:
            data["printed_cross_prefactor"] = True
        if request.closed_form_only:
            data["closed_form_only"] = True
        return SweepConfig.model_validate(data)

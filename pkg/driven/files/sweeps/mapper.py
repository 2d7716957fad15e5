"""Mapper between sweep rows and CSV records."""

import math
from typing import Union

from domain.entities.sweep import DisplacementRow, FreeParticleRow, GhzRow

HEADERS = {
    FreeParticleRow: ["z", "R", "theta", "k", "gamma", "violation"],
    DisplacementRow: ["z", "theta", "k", "bound", "actual", "violation"],
    GhzRow: [
        "N",
        "p",
        "mu",
        "p_c",
        "time_bound",
        "qfi_closed",
        "qfi_dense",
        "var_bound",
        "var_dense",
        "violation_at_dt",
    ],
}


def format_number(value: Union[float, int, bool]) -> str:
    """12 significant digits, locale independent; inf and nan spelled out."""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, int):
        return str(value)
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return format(value, ".12g")


class SweepRowMapper:
    """Maps sweep row entities to CSV records."""

    @staticmethod
    def header(row_type: type) -> list[str]:
        if row_type not in HEADERS:
            raise ValueError(f"Unknown sweep row type: {row_type.__name__}")
        return list(HEADERS[row_type])

    def entity_to_record(
        self, row: Union[FreeParticleRow, DisplacementRow, GhzRow]
    ) -> list[str]:
        data = row.model_dump()
        return [format_number(data[column]) for column in self.header(type(row))]

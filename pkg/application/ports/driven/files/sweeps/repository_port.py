"""Sweep result repository port interface."""

from abc import ABC, abstractmethod
from typing import Sequence, Union

from domain.entities.sweep import DisplacementRow, FreeParticleRow, GhzRow

SweepRow = Union[FreeParticleRow, DisplacementRow, GhzRow]


class SweepRepositoryPort(ABC):
    """Port interface for persisting sweep tables."""

    @abstractmethod
    async def save_rows(self, rows: Sequence[SweepRow], destination: str) -> str:
        """
        Write a sweep table.

        Args:
            rows: Rows in grid order, all of the same type
            destination: Output path, or "-" for standard output

        Returns:
            The rendered table
        """
        raise NotImplementedError

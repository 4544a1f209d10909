from dataclasses import dataclass, field
from functools import cached_property
from typing import Tuple

import numpy as np

from dslab.enums.types import FieldSpace
from dslab.core.exceptions import UsageError


@dataclass(frozen=True, eq=False)
class SpectralGrid:
    """
    周期计算网格 D·[-π,π]²，N×N 点

    Axes are the single source of truth for coordinates and wavenumbers; the
    wavenumber axes follow the FFT layout (zero mode first, -N/2 at index N/2).
    """

    D: float
    N: int
    x_axis: np.ndarray = field(repr=False)
    y_axis: np.ndarray = field(repr=False)
    xi1_axis: np.ndarray = field(repr=False)
    xi2_axis: np.ndarray = field(repr=False)

    @property
    def m(self) -> float:
        """Minimal resolved distance 2πD/N (also the grid spacing)."""
        return 2.0 * np.pi * self.D / self.N

    @property
    def dx(self) -> float:
        return self.m

    @property
    def cell_area(self) -> float:
        return self.m * self.m

    @property
    def length(self) -> float:
        return 2.0 * np.pi * self.D

    @property
    def max_wavenumber(self) -> float:
        return self.N / (2.0 * self.D)

    @cached_property
    def coords(self) -> Tuple[np.ndarray, np.ndarray]:
        """(X, Y) arrays of shape (N, N); row index i ↔ y_i, column j ↔ x_j."""
        X, Y = np.meshgrid(self.x_axis, self.y_axis, indexing="xy")
        return X, Y

    @cached_property
    def wavenumbers(self) -> Tuple[np.ndarray, np.ndarray]:
        """(ξ₁, ξ₂) arrays of shape (N, N) in the same layout as ``coords``."""
        XI1, XI2 = np.meshgrid(self.xi1_axis, self.xi2_axis, indexing="xy")
        return XI1, XI2


class ComplexField2D:
    """
    网格上的复场 (物理空间或谱空间)
    """

    def __init__(self, grid: SpectralGrid, data: np.ndarray, space: FieldSpace = FieldSpace.PHYSICAL):
        data = np.asarray(data, dtype=np.complex128)
        if data.shape != (grid.N, grid.N):
            raise UsageError(
                f"Field shape {data.shape} does not match grid N={grid.N}",
                details={"shape": list(data.shape), "N": grid.N},
            )
        self.grid = grid
        self.data = data
        self.space = space

    def require(self, space: FieldSpace) -> "ComplexField2D":
        if self.space != space:
            raise UsageError(f"Expected a {space.value} field, got {self.space.value}")
        return self

    def with_data(self, data: np.ndarray) -> "ComplexField2D":
        return ComplexField2D(self.grid, data, self.space)

    def copy(self) -> "ComplexField2D":
        return ComplexField2D(self.grid, self.data.copy(), self.space)

    def __repr__(self):
        return f"ComplexField2D(N={self.grid.N}, D={self.grid.D}, space={self.space.value})"

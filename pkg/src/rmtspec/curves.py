"""Sampled density curves: strictly increasing grid, non-negative ordinates,
optional point mass at the origin."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["DensityCurve", "resample"]


@dataclass(frozen=True)
class DensityCurve:
    xs: np.ndarray
    ys: np.ndarray
    point_mass_at_zero: float = 0.0

    def __post_init__(self):
        xs = np.asarray(self.xs, dtype=np.float64)
        ys = np.asarray(self.ys, dtype=np.float64)
        if xs.ndim != 1 or xs.shape != ys.shape or xs.size < 2:
            raise ValueError("xs and ys must be equal-length 1-d arrays (>= 2 points)")
        if np.any(np.diff(xs) <= 0):
            raise ValueError("xs must be strictly increasing")
        if np.any(ys < 0):
            raise ValueError("ys must be non-negative")
        if not 0.0 <= self.point_mass_at_zero < 1.0 + 1e-12:
            raise ValueError("point mass must lie in [0, 1)")
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)

    def continuous_mass(self) -> float:
        return float(np.trapezoid(self.ys, self.xs))

    def total_mass(self) -> float:
        return self.continuous_mass() + self.point_mass_at_zero

    def __call__(self, x) -> np.ndarray:
        """Linear interpolation, zero outside the grid."""
        return np.interp(np.asarray(x, dtype=np.float64), self.xs, self.ys,
                         left=0.0, right=0.0)


def resample(curve: DensityCurve, grid: np.ndarray) -> DensityCurve:
    """Linear-interpolation resampling onto `grid` (zero outside support)."""
    return DensityCurve(np.asarray(grid, float), curve(grid),
                        point_mass_at_zero=curve.point_mass_at_zero)

"""Uniform time grids and sampled probability curves."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

SLACK = 1e-12


@dataclass(frozen=True)
class TimeGrid:
    dt: float
    steps: int
    t_start: float = 0.0

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if self.steps < 2:
            raise ValueError(f"a grid needs at least 2 samples, got {self.steps}")

    @classmethod
    def span(cls, T: float, dt: float, t_start: float = 0.0) -> "TimeGrid":
        """Grid from ``t_start`` to ``T`` (inclusive) with spacing ``dt``."""
        if not 0 < dt < T - t_start:
            raise ValueError(f"need 0 < dt < T - t_start, got dt={dt}, T={T}")
        steps = int(round((T - t_start) / dt)) + 1
        return cls(dt=dt, steps=steps, t_start=t_start)

    @property
    def T(self) -> float:
        return self.t_start + (self.steps - 1) * self.dt

    @property
    def duration(self) -> float:
        return (self.steps - 1) * self.dt

    @property
    def times(self) -> np.ndarray:
        return self.t_start + self.dt * np.arange(self.steps)


@dataclass(frozen=True, eq=False)
class ProbabilitySeries:
    """Probability samples on a :class:`TimeGrid`.

    Values within ``1e-12`` outside ``[0, 1]`` are clamped; anything further
    out is rejected.
    """

    grid: TimeGrid
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.shape != (self.grid.steps,):
            raise ValueError(f"expected {self.grid.steps} values, got shape {v.shape}")
        if not np.all(np.isfinite(v)) or v.min() < -SLACK or v.max() > 1 + SLACK:
            raise ValueError("probability values outside [0, 1]")
        v = np.clip(v, 0.0, 1.0)
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    @property
    def times(self) -> np.ndarray:
        return self.grid.times

    def __len__(self):
        return self.grid.steps

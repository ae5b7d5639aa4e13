"""Characteristic times of probability curves and parameter sweeps."""

from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .dynamics import decompose
from .errors import EmptySeries, SweepPointError
from .graphspec import GraphSpec, build_hamiltonian
from .multiparticle import Statistics, initial_pair, p_perp_series
from .series import ProbabilitySeries, TimeGrid

log = logging.getLogger(__name__)

LN_FLOOR = 1e-15
LN2 = math.log(2.0)


def _check(series: ProbabilitySeries):
    if series is None or len(series) < 2:
        raise EmptySeries("need at least two samples")


def count_below_floor(series: ProbabilitySeries, floor: float = LN_FLOOR) -> int:
    return int(np.count_nonzero(series.values < floor))


def log_mean_rate(series: ProbabilitySeries, floor: float = LN_FLOOR) -> float:
    """Time average of ``ln P(t)`` over the grid, by the trapezoid rule.

    Samples below ``floor`` are raised to it so accidental zeros stay finite.
    """
    _check(series)
    logs = np.log(np.maximum(series.values, floor))
    integral = np.trapezoid(logs, dx=series.grid.dt)
    return float(integral / series.grid.duration)


def half_passage_time(series: ProbabilitySeries, floor: float = LN_FLOOR) -> float:
    """``ln 2 / |log_mean_rate|``; ``inf`` when the rate is exactly zero.

    Returned as a positive time even though the mean log is non-positive.
    """
    lam = log_mean_rate(series, floor)
    return math.inf if lam == 0.0 else LN2 / abs(lam)


def first_peak_time(series: ProbabilitySeries, min_height: float) -> float | None:
    """Time of the first local maximum reaching ``min_height``, or None.

    A maximum must rise strictly above both neighbours; a flat top counts
    once, at its earliest sample.  Grid endpoints never qualify.
    """
    if not 0 < min_height <= 1:
        raise ValueError(f"min_height must lie in (0, 1], got {min_height}")
    v = series.values
    i, n = 1, len(v)
    while i < n - 1:
        if v[i] > v[i - 1]:
            j = i
            while j + 1 < n and v[j + 1] == v[i]:
                j += 1
            if j + 1 < n and v[j + 1] < v[i] and v[i] >= min_height:
                return float(series.grid.t_start + i * series.grid.dt)
            i = j + 1
        else:
            i += 1
    return None


@dataclass(frozen=True)
class SweepRow:
    value: float
    statistics: Statistics
    lam: float
    tau: float
    below_floor: int = 0


@dataclass(frozen=True)
class SweepSpec:
    parameter: str
    values: Sequence[float]
    graph: GraphSpec
    grid: TimeGrid
    subset: Sequence[int] = tuple(range(8))
    statistics: Sequence[Statistics] = (Statistics.FERMION, Statistics.BOSON)
    initial_sites: tuple[int, int] = (0, 1)

    def __post_init__(self):
        values = tuple(float(v) for v in self.values)
        if not values or not all(math.isfinite(v) for v in values):
            raise ValueError("sweep values must be a non-empty list of finite numbers")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "subset", tuple(self.subset))
        object.__setattr__(self, "statistics", tuple(self.statistics))


def run_point(
    graph: GraphSpec,
    overrides: dict,
    statistics: Sequence[Statistics],
    subset: Sequence[int],
    grid: TimeGrid,
    initial_sites: tuple[int, int] = (0, 1),
) -> list[tuple[Statistics, ProbabilitySeries]]:
    """P(both confined) series for one Hamiltonian, one per statistics."""
    dec = decompose(build_hamiltonian(graph, overrides))
    i, j = initial_sites
    return [
        (stats, p_perp_series(dec, initial_pair(i, j, stats, graph.n), subset, grid))
        for stats in statistics
    ]


def _sweep_value(spec: SweepSpec, value: float) -> list[SweepRow]:
    try:
        results = run_point(
            spec.graph, {spec.parameter: value}, spec.statistics,
            spec.subset, spec.grid, spec.initial_sites,
        )
    except Exception as exc:
        raise SweepPointError(spec.parameter, value, exc) from exc
    rows = []
    for stats, series in results:
        below = count_below_floor(series)
        if below:
            log.warning("%s=%g %s: %d samples below ln floor", spec.parameter, value,
                        stats.label, below)
        rows.append(SweepRow(value, stats, log_mean_rate(series),
                             half_passage_time(series), below))
    return rows


def default_workers() -> int:
    cap = os.environ.get("QGW_THREADS")
    n = os.cpu_count() or 1
    if cap:
        n = min(n, max(1, int(cap)))
    return n


def sweep(spec: SweepSpec, workers: int | None = None) -> list[SweepRow]:
    """Half-passage times over a range of one parameter.

    Rows come back ordered by parameter value, then statistics in the order
    given; parallel evaluation does not affect the result.
    """
    if not spec.statistics:
        return []
    values = sorted(spec.values)
    workers = workers or default_workers()
    if workers == 1 or len(values) == 1:
        chunks = [_sweep_value(spec, v) for v in values]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(lambda v: _sweep_value(spec, v), values))
    return [row for chunk in chunks for row in chunk]


def parse_range(text: str) -> list[float]:
    """``start:step:end`` with the end point included (to 1e-9 of a step)."""
    try:
        start, step, end = (float(x) for x in text.split(":"))
    except ValueError:
        raise ValueError(f"expected start:step:end, got {text!r}") from None
    if step <= 0 or end < start:
        raise ValueError(f"empty or ill-formed range {text!r}")
    count = int(math.floor((end - start) / step + 1e-9)) + 1
    return [round(start + k * step, 12) for k in range(count)]

"""(T, h) grid evaluation and 1D feature detection on the resulting curves."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, fields

import numpy as np

from .entanglement import concurrence_at
from .model import ModelParams
from .rungstate import magnetization_rdm
from .transfer import log_partition_per_rung, magnetization_tm, susceptibility_tm

PLATEAU_LEVELS = (-0.5, -0.25, 0.0, 0.25, 0.5)
SNAP_TOL = 1e-3
PEAK_PROMINENCE = 5.0


class SweepError(RuntimeError):
    pass


@dataclass(frozen=True)
class GridSpec:
    t_range: tuple[float, float, int]
    h_range: tuple[float, float, int]
    j_heisenberg: float
    j_ising: float

    def __post_init__(self):
        t_min, t_max, t_count = self.t_range
        h_min, h_max, h_count = self.h_range
        if not t_min > 0:
            raise ValueError(f"minimum temperature must be > 0, got {t_min!r}")
        if t_count < 2 or h_count < 2:
            raise ValueError("grid counts must be >= 2")
        if t_max < t_min or h_max < h_min:
            raise ValueError("grid ranges must be ordered (min <= max)")
        for v in (*self.t_range[:2], *self.h_range[:2], self.j_heisenberg, self.j_ising):
            if not np.isfinite(v):
                raise ValueError(f"grid parameters must be finite, got {v!r}")

    @property
    def temperatures(self) -> np.ndarray:
        return np.linspace(*self.t_range)

    @property
    def fields(self) -> np.ndarray:
        return np.linspace(*self.h_range)


@dataclass(frozen=True)
class ObservablePoint:
    temperature: float
    field: float
    log_partition_per_rung: float
    m_tm: float
    m_rdm: float
    chi: float
    concurrence: float

    @property
    def m_residual(self) -> float:
        return abs(self.m_tm - self.m_rdm)

    def as_tuple(self) -> tuple[float, ...]:
        return astuple(self)


OBSERVABLE_FIELDS = tuple(f.name for f in fields(ObservablePoint))


def evaluate_point(params: ModelParams) -> ObservablePoint:
    return ObservablePoint(
        temperature=params.temperature,
        field=params.field,
        log_partition_per_rung=log_partition_per_rung(params),
        m_tm=magnetization_tm(params),
        m_rdm=magnetization_rdm(params),
        chi=susceptibility_tm(params),
        concurrence=concurrence_at(params),
    )


def _evaluate_row(args) -> list[ObservablePoint]:
    jh, ji, temperature, fields_ = args
    row = []
    for h in fields_:
        try:
            row.append(evaluate_point(ModelParams(jh, ji, float(h), float(temperature))))
        except (ArithmeticError, ValueError) as exc:
            raise SweepError(f"evaluation failed at T={temperature!r}, h={h!r}: {exc}") from exc
    return row


def sweep_grid(spec: GridSpec, workers: int | None = 1) -> list[ObservablePoint]:
    """Evaluate every grid point, T outer and h inner.

    Rows are farmed out to worker processes; results are assembled in grid
    order, so the output does not depend on ``workers``.
    """
    fields_ = spec.fields
    tasks = [(spec.j_heisenberg, spec.j_ising, t, fields_) for t in spec.temperatures]
    if workers is None:
        workers = os.cpu_count() or 1
    if workers <= 1:
        rows = [_evaluate_row(task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_evaluate_row, tasks))
    return [point for row in rows for point in row]


def field_curve(j_heisenberg, j_ising, temperature, fields_, observable=magnetization_tm):
    """(h, observable) pairs along one isotherm."""
    return [
        (float(h), observable(ModelParams(j_heisenberg, j_ising, float(h), temperature)))
        for h in fields_
    ]


# ----------------------------------------------------------------- plateaus


@dataclass(frozen=True)
class Plateau:
    h_start: float
    h_end: float
    value: float
    snapped: bool

    @property
    def width(self) -> float:
        return self.h_end - self.h_start


@dataclass(frozen=True)
class PlateauReport:
    plateaus: tuple[Plateau, ...]
    # field where m crosses the midpoint between consecutive plateau values
    transitions: tuple[float, ...]

    @property
    def values(self) -> tuple[float, ...]:
        return tuple(p.value for p in self.plateaus)


def _as_arrays(curve, min_points: int):
    arr = np.asarray(curve, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2 or len(arr) < min_points:
        raise ValueError(f"curve needs at least {min_points} (h, value) points")
    h, y = arr[:, 0], arr[:, 1]
    if np.any(np.diff(h) <= 0):
        raise ValueError("curve must be strictly increasing in h")
    return h, y


def _snap(value: float, snap_tol: float) -> tuple[float, bool]:
    nearest = min(PLATEAU_LEVELS, key=lambda level: abs(level - value))
    if abs(nearest - value) <= snap_tol:
        return nearest, True
    return value, False


def _crossing(h: np.ndarray, y: np.ndarray, lo: int, hi: int, level: float) -> float:
    for k in range(lo, hi):
        y0, y1 = y[k], y[k + 1]
        if (y0 - level) * (y1 - level) <= 0 and y1 != y0:
            return float(h[k] + (level - y0) * (h[k + 1] - h[k]) / (y1 - y0))
    return float("nan")


def detect_plateaus(
    curve, flatness_tol: float = 1e-3, min_width: float = 0.3, snap_tol: float = SNAP_TOL
) -> PlateauReport:
    """Maximal runs with |dm/dh| < flatness_tol spanning at least min_width."""
    h, m = _as_arrays(curve, 8)
    flat = np.abs(np.diff(m) / np.diff(h)) < flatness_tol

    runs = []
    k = 0
    while k < len(flat):
        if not flat[k]:
            k += 1
            continue
        start = k
        while k < len(flat) and flat[k]:
            k += 1
        # segments start..k-1 span points start..k
        if h[k] - h[start] >= min_width:
            runs.append((start, k))

    plateaus = []
    for start, end in runs:
        value, snapped = _snap(float(np.mean(m[start : end + 1])), snap_tol)
        plateaus.append(Plateau(float(h[start]), float(h[end]), value, snapped))

    transitions = tuple(
        _crossing(h, m, a_end, b_start, 0.5 * (a.value + b.value))
        for (_, a_end), (b_start, _), a, b in zip(runs, runs[1:], plateaus, plateaus[1:])
    )
    return PlateauReport(tuple(plateaus), transitions)


# -------------------------------------------------------------------- peaks


def detect_peaks(curve, prominence: float = PEAK_PROMINENCE) -> list[tuple[float, float]]:
    """Strict local maxima exceeding ``prominence`` x the median, parabola-refined."""
    h, y = _as_arrays(curve, 5)
    threshold = prominence * abs(float(np.median(y)))
    peaks = []
    for k in range(1, len(y) - 1):
        if not (y[k] > y[k - 1] and y[k] > y[k + 1] and y[k] > threshold):
            continue
        h0, h1, h2 = h[k - 1 : k + 2]
        y0, y1, y2 = y[k - 1 : k + 2]
        # vertex of the parabola through the three points
        d01, d12 = (y1 - y0) / (h1 - h0), (y2 - y1) / (h2 - h1)
        curvature = (d12 - d01) / (h2 - h0)
        hv = 0.5 * (h0 + h1) - d01 / (2.0 * curvature)
        yv = y1 + d01 * (hv - h1) + curvature * (hv - h0) * (hv - h1)
        peaks.append((float(hv), float(yv)))
    return peaks

"""Parameter sweeps, figure datasets, CSV output, critical temperature."""

from __future__ import annotations

import csv
import dataclasses
import enum
import itertools
import math
import multiprocessing

import numpy as np

from . import dynamics, entanglement, params as params_mod, steady_state
from .config import PARAM_NAMES
from .errors import (
    ConfigError,
    DegenerateNormalMode,
    EigenFailure,
    NoDeathBelowCeiling,
    NoEntanglementAtFloor,
    NonPhysicalState,
    SingularSolve,
    ThresholdSingularity,
    UnstableSystem,
)
from .params import SystemParams

__all__ = [
    "ErrorCode",
    "PointResult",
    "SweepRow",
    "SweepSpec",
    "CSV_COLUMNS",
    "evaluate_point",
    "run_sweep",
    "write_csv",
    "figure_spec",
    "figure_dataset",
    "FIGURE_NAMES",
    "critical_temperature",
]


class ErrorCode(enum.IntEnum):
    """Per-row outcome; nonzero rows carry empty entanglement columns."""

    OK = 0
    INVALID_PARAMS = 1
    THRESHOLD_SINGULARITY = 2
    DEGENERATE_NORMAL_MODE = 3
    EIGEN_FAILURE = 4
    UNSTABLE = 5
    SINGULAR_SOLVE = 6
    NONPHYSICAL_STATE = 7


@dataclasses.dataclass(frozen=True)
class PointResult:
    """Derived columns of one grid point; None marks an empty CSV cell."""

    error_code: int
    nbar: float | None = None
    abs_c_s: float | None = None
    q1s: float | None = None
    g_m: float | None = None
    stable: bool | None = None
    max_real_part: float | None = None
    sigma: float | None = None
    varrho: float | None = None
    log_negativity: float | None = None


@dataclasses.dataclass(frozen=True)
class SweepRow:
    """One grid point: swept axis values plus the evaluated columns."""

    axis_values: tuple[float, ...]
    result: PointResult


@dataclasses.dataclass(frozen=True)
class SweepSpec:
    """A grid to evaluate: base point, ordered axes, output, workers."""

    base: SystemParams
    axes: tuple[tuple[str, tuple[float, ...]], ...]
    output_path: str | None = None
    parallel: int = 1


CSV_COLUMNS = (
    "nbar",
    "abs_c_s",
    "q1s",
    "g_m",
    "stable",
    "max_real_part",
    "sigma",
    "varrho",
    "log_negativity",
    "error_code",
)


def evaluate_point(p: SystemParams) -> PointResult:
    """Run the full pipeline at one operating point.

    Stages: steady state, drift/diffusion, stability, steady
    covariance, reduction, negativity. A failing stage flags the row
    with its error code and leaves every later column empty; columns
    already computed stay filled.
    """
    nbar = params_mod.thermal_occupation(p.omega_m1, p.temperature)
    omega_laser = 2.0 * math.pi * params_mod.C_LIGHT / p.laser_wavelength
    drive_e = params_mod.drive_amplitude(p.power, p.kappa, omega_laser)
    g0 = params_mod.single_photon_coupling(
        omega_laser, p.cavity_length, p.mass, p.omega_m1
    )
    try:
        c_s = steady_state.cavity_amplitude(
            p.detuning, p.kappa, p.opa_gain, p.opa_phase, drive_e
        )
    except ThresholdSingularity:
        return PointResult(error_code=ErrorCode.THRESHOLD_SINGULARITY, nbar=nbar)
    abs_c_s = abs(c_s)
    g_m = steady_state.effective_coupling(g0, c_s)
    try:
        q1s, _ = steady_state.displacements(
            g0, c_s, p.omega_m1, p.omega_m2, p.coulomb_lambda
        )
    except DegenerateNormalMode:
        return PointResult(
            error_code=ErrorCode.DEGENERATE_NORMAL_MODE,
            nbar=nbar,
            abs_c_s=abs_c_s,
            g_m=g_m,
        )
    filled = dict(nbar=nbar, abs_c_s=abs_c_s, q1s=q1s, g_m=g_m)
    m = dynamics.build_drift(p, g_m)
    d = dynamics.build_diffusion(p, nbar)
    try:
        report = dynamics.stability(m, omega_scale=p.omega_m1)
    except EigenFailure:
        return PointResult(error_code=ErrorCode.EIGEN_FAILURE, **filled)
    filled.update(stable=report.stable, max_real_part=report.max_real_part)
    if not report.stable:
        return PointResult(error_code=ErrorCode.UNSTABLE, **filled)
    try:
        v = dynamics.steady_covariance(m, d, omega_scale=p.omega_m1)
    except UnstableSystem:
        return PointResult(error_code=ErrorCode.UNSTABLE, **filled)
    except SingularSolve:
        return PointResult(error_code=ErrorCode.SINGULAR_SOLVE, **filled)
    reduced = entanglement.reduce_mechanical(v)
    try:
        ent = entanglement.log_negativity(reduced)
    except NonPhysicalState:
        return PointResult(error_code=ErrorCode.NONPHYSICAL_STATE, **filled)
    return PointResult(
        error_code=ErrorCode.OK,
        sigma=ent.sigma,
        varrho=ent.varrho,
        log_negativity=ent.log_negativity,
        **filled,
    )


def _grid_task(task) -> PointResult:
    """Worker body: apply one grid point's overrides and evaluate."""
    base, items = task
    try:
        point = dataclasses.replace(base, **dict(items))
    except ValueError:
        return PointResult(error_code=ErrorCode.INVALID_PARAMS)
    return evaluate_point(point)


def _validate_spec(spec: SweepSpec) -> None:
    for name, values in spec.axes:
        if name not in PARAM_NAMES:
            raise ConfigError(f"unknown axis parameter {name!r}")
        if not values:
            raise ConfigError(f"axis {name!r} has no values")
    if not isinstance(spec.parallel, int) or spec.parallel < 1:
        raise ConfigError(f"parallel must be an integer >= 1, got {spec.parallel!r}")


def run_sweep(spec: SweepSpec) -> list[SweepRow]:
    """Evaluate the grid in lexicographic axis order and return its rows.

    The row order is the itertools.product order of the axes (first
    axis slowest) regardless of worker count, and each point is a pure
    function of its parameters, so reruns with different parallelism
    produce identical tables. With output_path set the table is also
    written as CSV; I/O failures propagate as OSError.
    """
    _validate_spec(spec)
    names = tuple(name for name, _ in spec.axes)
    combos = list(itertools.product(*(values for _, values in spec.axes)))
    tasks = [(spec.base, tuple(zip(names, combo))) for combo in combos]
    if spec.parallel > 1 and len(tasks) > 1:
        with multiprocessing.Pool(spec.parallel) as pool:
            results = pool.map(_grid_task, tasks)
    else:
        results = [_grid_task(t) for t in tasks]
    rows = [
        SweepRow(axis_values=tuple(combo), result=res)
        for combo, res in zip(combos, results)
    ]
    if spec.output_path is not None:
        write_csv(spec.output_path, names, rows)
    return rows


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, (int, enum.IntEnum)) and not isinstance(value, bool):
        return str(int(value))
    return f"{value:.17g}"


def write_csv(path, axis_names, rows) -> None:
    """Write rows as RFC-4180 CSV: header, 17-digit floats, \\n endings."""
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(list(axis_names) + list(CSV_COLUMNS))
        for row in rows:
            res = row.result
            writer.writerow(
                [_fmt(v) for v in row.axis_values]
                + [
                    _fmt(res.nbar),
                    _fmt(res.abs_c_s),
                    _fmt(res.q1s),
                    _fmt(res.g_m),
                    _fmt(res.stable),
                    _fmt(res.max_real_part),
                    _fmt(res.sigma),
                    _fmt(res.varrho),
                    _fmt(res.log_negativity),
                    _fmt(int(res.error_code)),
                ]
            )


FIGURE_NAMES = ("fig2", "fig3", "fig4", "fig5a", "fig5b")

_DETUNING_GRID_POINTS = 401
_TEMP_GRID_POINTS = 201
_TEMP_FLOOR = 1e-3
_TEMP_CEILING_START = 8e-3
_TEMP_CEILING_CAP = 1.0
_FIG5_POWERS = (0.03, 0.05, 0.08, 0.10)


def _detuning_grid(omega_m1: float) -> tuple[float, ...]:
    grid = np.linspace(0.0, 2.0, _DETUNING_GRID_POINTS) * omega_m1
    return tuple(float(v) for v in grid)


def _point_log_negativity(p: SystemParams) -> float:
    """E_N through the full pipeline; pipeline errors propagate."""
    derived = params_mod.derive(p)
    m = dynamics.build_drift(p, derived.g_m)
    d = dynamics.build_diffusion(p, derived.nbar)
    v = dynamics.steady_covariance(m, d, omega_scale=p.omega_m1)
    ent = entanglement.log_negativity(entanglement.reduce_mechanical(v))
    return ent.log_negativity


def _fig5_ceiling(base: SystemParams) -> float:
    """Smallest doubling of 8 mK at which every power family is dead.

    Doubles until either all four drive powers give E_N = 0 or the 1 K
    cap is hit, so the temperature grid always brackets each family's
    entanglement death when one exists below the cap.
    """
    ceiling = _TEMP_CEILING_START
    while ceiling < _TEMP_CEILING_CAP:
        dead = all(
            _point_log_negativity(
                dataclasses.replace(base, power=p, temperature=ceiling)
            )
            == 0.0
            for p in _FIG5_POWERS
        )
        if dead:
            return ceiling
        ceiling *= 2.0
    return _TEMP_CEILING_CAP


def figure_spec(which: str, parallel: int = 1, output_path=None) -> SweepSpec:
    """SweepSpec for one of the published curve families.

    fig2 sweeps the Coulomb coupling with the pump off; fig3 the pump
    gain at theta = 0; fig4 the pump phase at the strongest fig3 gain;
    fig5a/fig5b sweep drive power against temperature at fixed detuning
    0.75*omega_m1 and gains 2e7 / 8e7. Detuning grids hold 401 points
    over [0, 2]*omega_m1; temperature grids 201 points from 1 mK to an
    auto-extended ceiling.
    """
    base = params_mod.reference_params()
    w = base.omega_m1
    dgrid = _detuning_grid(w)
    if which == "fig2":
        axes = (
            ("coulomb_lambda", (0.3 * w, 0.5 * w, 0.95 * w)),
            ("detuning", dgrid),
        )
    elif which == "fig3":
        base = dataclasses.replace(base, coulomb_lambda=0.95 * w, opa_phase=0.0)
        axes = (
            ("opa_gain", (0.0, 2e7, 5e7, 8e7, 10e7, 12e7)),
            ("detuning", dgrid),
        )
    elif which == "fig4":
        base = dataclasses.replace(base, coulomb_lambda=0.95 * w, opa_gain=12e7)
        axes = (
            ("opa_phase", (0.0, math.pi / 16, math.pi / 6, math.pi / 4)),
            ("detuning", dgrid),
        )
    elif which in ("fig5a", "fig5b"):
        gain = 2e7 if which == "fig5a" else 8e7
        base = dataclasses.replace(
            base,
            coulomb_lambda=0.95 * w,
            detuning=0.75 * w,
            opa_phase=math.pi / 16,
            opa_gain=gain,
        )
        ceiling = _fig5_ceiling(base)
        tgrid = np.linspace(_TEMP_FLOOR, ceiling, _TEMP_GRID_POINTS)
        axes = (
            ("power", _FIG5_POWERS),
            ("temperature", tuple(float(t) for t in tgrid)),
        )
    else:
        raise ConfigError(f"unknown figure {which!r}; expected one of {FIGURE_NAMES}")
    return SweepSpec(base=base, axes=axes, output_path=output_path, parallel=parallel)


def figure_dataset(which: str, parallel: int = 1, output_path=None) -> list[SweepRow]:
    """Evaluate one figure family and return (optionally write) its rows."""
    return run_sweep(figure_spec(which, parallel=parallel, output_path=output_path))


_COARSE_SCAN_POINTS = 32


def critical_temperature(
    p: SystemParams, t_lo: float, t_hi: float, tol: float
) -> float:
    """Temperature where steady-state E_N falls to zero.

    A 32-point coarse scan over [t_lo, t_hi] brackets the last
    positive-to-zero crossing, then bisection narrows it to width tol;
    the bracket midpoint comes back. Raises NoEntanglementAtFloor when
    E_N(t_lo) = 0 and NoDeathBelowCeiling when E_N(t_hi) > 0; pipeline
    failures at any probed temperature propagate.
    """
    if not (0.0 < t_lo < t_hi):
        raise ValueError(f"need 0 < t_lo < t_hi, got {t_lo}, {t_hi}")
    if tol <= 0.0:
        raise ValueError(f"tol must be positive, got {tol}")

    def en_at(temperature: float) -> float:
        return _point_log_negativity(
            dataclasses.replace(p, temperature=temperature)
        )

    if en_at(t_lo) <= 0.0:
        raise NoEntanglementAtFloor(
            f"no entanglement at the floor temperature {t_lo} K"
        )
    if en_at(t_hi) > 0.0:
        raise NoDeathBelowCeiling(
            f"entanglement survives at the ceiling temperature {t_hi} K"
        )
    grid = np.linspace(t_lo, t_hi, _COARSE_SCAN_POINTS)
    values = [en_at(float(t)) for t in grid]
    bracket = None
    for i in range(_COARSE_SCAN_POINTS - 1):
        if values[i] > 0.0 and values[i + 1] <= 0.0:
            bracket = (float(grid[i]), float(grid[i + 1]))
    if bracket is None:
        # unreachable once the floor/ceiling checks pass
        raise RuntimeError("coarse scan found no positive-to-zero crossing")
    lo, hi = bracket
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if en_at(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)

"""Studies built on the force kernel: distance sweeps, parameter contour
grids, sign-change equilibria, and static impedance diagnostics."""

from __future__ import annotations

import dataclasses
import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .lifshitz import (
    LAMBDA0,
    ConvergenceError,
    ForceResult,
    QuadratureSpec,
    Scene,
    Slab,
    casimir_force,
)
from .materials import Constant, DrudeLorentz, ZLimit, impedance

__all__ = [
    "SweepResult",
    "ParamAxis",
    "GridResult",
    "Stability",
    "Crossing",
    "EquilibriumReport",
    "SignPrediction",
    "ImpedanceReport",
    "GRID_PARAMS",
    "sweep_distance",
    "grid_scan",
    "find_equilibria",
    "static_impedance_report",
]


@dataclass(frozen=True)
class SweepResult:
    """Force along an increasing ladder of gaps; converged flags mark points
    whose quadrature exhausted its budget (their results are best estimates)."""

    slab_a: Slab
    slab_b: Slab
    gaps: tuple[float, ...]
    forces: tuple[ForceResult, ...]
    converged: tuple[bool, ...]

    @property
    def gaps_lambda0(self) -> tuple[float, ...]:
        return tuple(g / LAMBDA0 for g in self.gaps)


@dataclass(frozen=True)
class ParamAxis:
    param: str
    points: tuple[float, ...]


@dataclass(frozen=True, eq=False)
class GridResult:
    """Relative force F_r on a tensor grid; values[i, j] pairs x_axis.points[i]
    with y_axis.points[j]. Failed cells hold NaN and converged False."""

    x_axis: ParamAxis
    y_axis: ParamAxis
    values: np.ndarray
    converged: np.ndarray


class Stability(enum.Enum):
    STABLE = "stable"      # repulsive below, attractive above: restoring
    UNSTABLE = "unstable"  # attractive below, repulsive above


@dataclass(frozen=True)
class Crossing:
    gap: float
    kind: Stability
    bracket_width: float
    refined: bool = True  # False: refinement hit a non-convergent evaluation


@dataclass(frozen=True)
class EquilibriumReport:
    crossings: tuple[Crossing, ...]


class SignPrediction(enum.Enum):
    ATTRACTIVE = "attractive"
    REPULSIVE = "repulsive"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class ImpedanceReport:
    """Static impedances and the large-separation sign heuristic: impedances
    straddling vacuum (one < 1 < other) predict repulsion, same side predicts
    attraction. A heuristic about the large-gap limit, not an invariant."""

    z_a0: object  # float or ZLimit
    z_b0: object
    prediction: SignPrediction


def _force_point(args):
    """(Scene, QuadratureSpec) -> (ForceResult, converged); module-level so
    process pools can pickle it."""
    scene, quad = args
    try:
        return casimir_force(scene, quad), True
    except ConvergenceError as err:
        return err.result, False


def _map_points(tasks, jobs):
    """Evaluate force tasks, keyed by position regardless of worker order."""
    if jobs is None or jobs <= 1:
        return [_force_point(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_force_point, tasks, chunksize=1))


def sweep_distance(slab_a: Slab, slab_b: Slab, gap_min: float, gap_max: float,
                   n_points: int, spacing: str = "log",
                   quad: QuadratureSpec = QuadratureSpec(),
                   jobs: int | None = None) -> SweepResult:
    """Force at n_points gaps in [gap_min, gap_max] (units c/w0).

    Non-convergent points are kept and flagged rather than aborting the sweep.
    """
    if not (0.0 < gap_min < gap_max):
        raise ValueError(f"need 0 < gap_min < gap_max, got {gap_min!r}, {gap_max!r}")
    if n_points < 2:
        raise ValueError(f"n_points must be >= 2, got {n_points!r}")
    if spacing == "log":
        gaps = np.geomspace(gap_min, gap_max, n_points)
    elif spacing == "linear":
        gaps = np.linspace(gap_min, gap_max, n_points)
    else:
        raise ValueError(f"spacing must be 'log' or 'linear', got {spacing!r}")
    tasks = [(Scene(slab_a, slab_b, float(g)), quad) for g in gaps]
    done = _map_points(tasks, jobs)
    return SweepResult(
        slab_a=slab_a,
        slab_b=slab_b,
        gaps=tuple(float(g) for g in gaps),
        forces=tuple(r for r, _ in done),
        converged=tuple(ok for _, ok in done),
    )


# the closed set of scannable parameters: the twelve oscillator frequencies,
# the constant-medium eps/mu on either side, and the gap itself
_OSC_FIELDS = {
    "omega_pe": ("electric", "omega_p"), "omega_te": ("electric", "omega_t"),
    "gamma_e": ("electric", "gamma"), "omega_pm": ("magnetic", "omega_p"),
    "omega_tm": ("magnetic", "omega_t"), "gamma_m": ("magnetic", "gamma"),
}
GRID_PARAMS = tuple(
    [f"{side}.{f}" for side in "ab" for f in (*_OSC_FIELDS, "eps", "mu")] + ["gap"]
)


def _apply_param(scene: Scene, param: str, value: float) -> Scene:
    if param == "gap":
        return dataclasses.replace(scene, gap=value)
    side, _, field = param.partition(".")
    if side not in ("a", "b") or not field:
        raise ValueError(f"unknown grid parameter {param!r}")
    slab = scene.slab_a if side == "a" else scene.slab_b
    material = slab.material
    if field in ("eps", "mu"):
        if not isinstance(material, Constant):
            raise ValueError(f"{param!r} needs a constant-medium slab, got {material!r}")
        new_mat = dataclasses.replace(material, **{field: value})
    elif field in _OSC_FIELDS:
        if not isinstance(material, DrudeLorentz):
            raise ValueError(f"{param!r} needs a dispersive slab, got {material!r}")
        osc_name, osc_field = _OSC_FIELDS[field]
        osc = dataclasses.replace(getattr(material, osc_name), **{osc_field: value})
        new_mat = dataclasses.replace(material, **{osc_name: osc})
    else:
        raise ValueError(f"unknown grid parameter {param!r}")
    new_slab = dataclasses.replace(slab, material=new_mat)
    return dataclasses.replace(
        scene, **{"slab_a" if side == "a" else "slab_b": new_slab})


def grid_scan(template_scene: Scene, x_param: str, y_param: str,
              x_range: tuple[float, float], y_range: tuple[float, float],
              nx: int, ny: int, quad: QuadratureSpec = QuadratureSpec(),
              jobs: int | None = None) -> GridResult:
    """F_r over the tensor grid of two scanned parameters.

    Every cell is an independent scene derived from the template; invalid
    parameter values fail fast at scene construction, non-convergent cells
    are marked NaN and the scan continues.
    """
    if nx < 1 or ny < 1:
        raise ValueError("grid must be at least 1x1")
    if x_param == y_param:
        raise ValueError(f"grid axes must differ, both are {x_param!r}")
    xs = np.linspace(x_range[0], x_range[1], nx) if nx > 1 else np.array([x_range[0]])
    ys = np.linspace(y_range[0], y_range[1], ny) if ny > 1 else np.array([y_range[0]])
    tasks = []
    for x in xs:
        scene_x = _apply_param(template_scene, x_param, float(x))
        for y in ys:
            tasks.append((_apply_param(scene_x, y_param, float(y)), quad))
    done = _map_points(tasks, jobs)
    values = np.empty((nx, ny))
    converged = np.empty((nx, ny), dtype=bool)
    for idx, (res, ok) in enumerate(done):
        i, j = divmod(idx, ny)
        values[i, j] = res.relative if ok else math.nan
        converged[i, j] = ok
    return GridResult(
        x_axis=ParamAxis(x_param, tuple(float(v) for v in xs)),
        y_axis=ParamAxis(y_param, tuple(float(v) for v in ys)),
        values=values,
        converged=converged,
    )


def _sign(x: float) -> float:
    return math.copysign(1.0, x)


def find_equilibria(sweep: SweepResult, refine_tol: float,
                    quad: QuadratureSpec = QuadratureSpec()) -> EquilibriumReport:
    """Bracket every sign change between adjacent valid sweep points and
    refine it by bisection on the force until the bracket is narrower than
    refine_tol (gap units).

    Bisection rather than a faster local method: each force evaluation is
    expensive but its sign is robust, and bracketing never escapes. Crossings
    finer than the sweep grid are missed by construction. A crossing whose
    refinement hits a non-convergent force evaluation is reported with the
    bracket achieved so far and refined=False.
    """
    if not (refine_tol > 0.0):
        raise ValueError(f"refine_tol must be > 0, got {refine_tol!r}")
    valid = [(g, r.force) for g, r, ok in
             zip(sweep.gaps, sweep.forces, sweep.converged) if ok]
    if len(valid) < 2:
        raise ValueError("need at least 2 valid sweep points")

    crossings = []
    for (g_lo, f_lo), (g_hi, f_hi) in zip(valid, valid[1:]):
        if _sign(f_lo) == _sign(f_hi):
            continue
        kind = Stability.STABLE if f_lo < 0.0 else Stability.UNSTABLE
        lo, hi, s_lo = g_lo, g_hi, _sign(f_lo)
        refined = True
        while hi - lo > refine_tol:
            mid = 0.5 * (lo + hi)
            try:
                f_mid = casimir_force(
                    Scene(sweep.slab_a, sweep.slab_b, mid), quad).force
            except ConvergenceError as err:
                f_mid = err.result.force
                if err.result.error_estimate >= abs(f_mid):
                    refined = False  # sign itself is uncertain; stop here
                    break
            if _sign(f_mid) == s_lo:
                lo = mid
            else:
                hi = mid
        crossings.append(Crossing(
            gap=0.5 * (lo + hi),
            kind=kind,
            bracket_width=hi - lo,
            refined=refined,
        ))
    return EquilibriumReport(crossings=tuple(crossings))


def _impedance_side(z) -> str:
    if z is ZLimit.ZERO:
        return "below"
    if z is ZLimit.INFINITE:
        return "above"
    if abs(z - 1.0) < 1e-9:
        return "vacuum"
    return "below" if z < 1.0 else "above"


def static_impedance_report(slab_a: Slab, slab_b: Slab) -> ImpedanceReport:
    """Zero-frequency impedances of both slabs and the large-gap sign
    heuristic built on them."""
    z_a = impedance(slab_a.material, 0.0)
    z_b = impedance(slab_b.material, 0.0)
    side_a, side_b = _impedance_side(z_a), _impedance_side(z_b)
    if "vacuum" in (side_a, side_b):
        prediction = SignPrediction.INDETERMINATE
    elif side_a == side_b:
        prediction = SignPrediction.ATTRACTIVE
    else:
        prediction = SignPrediction.REPULSIVE
    return ImpedanceReport(z_a0=z_a, z_b0=z_b, prediction=prediction)

"""Sweeps, grids, equilibrium finding, and the impedance heuristic."""

import math

import numpy as np
import pytest

from casimir_slabs import (
    Constant,
    ConvergenceError,
    ForceResult,
    GRID_PARAMS,
    InfinitelyPermeable,
    PerfectConductor,
    QuadratureSpec,
    Scene,
    SignPrediction,
    Slab,
    Stability,
    SweepResult,
    Vacuum,
    ZLimit,
    find_equilibria,
    grid_scan,
    static_impedance_report,
    sweep_distance,
)

from scenes import CONDUCTOR_PARTNER, METAMAT_A, METAMAT_B

LOOSE = QuadratureSpec(rel_tol=1e-3, abs_tol=1e-9)


def _fr(force, err=1e-15):
    return ForceResult(force=force, force_te=0.5 * force, force_tm=0.5 * force,
                       relative=0.1, error_estimate=err, evaluations=15)


def _parabola(gap):
    # zero at 2.5 (rising) and at 7.5 (falling)
    return (gap - 2.5) * (7.5 - gap) * 1e-3


def _synthetic_sweep(gaps, force_fn, converged=None):
    gaps = tuple(float(g) for g in gaps)
    if converged is None:
        converged = (True,) * len(gaps)
    return SweepResult(
        slab_a=Slab(Vacuum()),
        slab_b=Slab(Vacuum()),
        gaps=gaps,
        forces=tuple(_fr(force_fn(g)) for g in gaps),
        converged=converged,
    )


# equilibrium finding against a synthetic force law

def test_find_equilibria_two_crossings(monkeypatch):
    monkeypatch.setattr("casimir_slabs.analysis.casimir_force",
                        lambda scene, quad: _fr(_parabola(scene.gap)))
    sweep = _synthetic_sweep(range(1, 10), _parabola)
    report = find_equilibria(sweep, refine_tol=1e-6)
    assert len(report.crossings) == 2
    stable, unstable = report.crossings
    assert stable.kind is Stability.STABLE
    assert stable.gap == pytest.approx(2.5, abs=1e-6)
    assert unstable.kind is Stability.UNSTABLE
    assert unstable.gap == pytest.approx(7.5, abs=1e-6)
    for c in report.crossings:
        assert c.refined
        assert c.bracket_width <= 1e-6


def test_find_equilibria_no_crossing(monkeypatch):
    monkeypatch.setattr("casimir_slabs.analysis.casimir_force",
                        lambda scene, quad: _fr(1.0))
    sweep = _synthetic_sweep([1.0, 2.0, 3.0], lambda g: 1.0)
    assert find_equilibria(sweep, refine_tol=1e-3).crossings == ()


def test_find_equilibria_skips_unconverged_points(monkeypatch):
    monkeypatch.setattr("casimir_slabs.analysis.casimir_force",
                        lambda scene, quad: _fr(_parabola(scene.gap)))
    # the point at gap 3 is flagged, so the bracket widens to (2, 4)
    sweep = _synthetic_sweep([2.0, 3.0, 4.0], _parabola,
                             converged=(True, False, True))
    report = find_equilibria(sweep, refine_tol=1e-6)
    assert len(report.crossings) == 1
    assert report.crossings[0].gap == pytest.approx(2.5, abs=1e-6)


def test_find_equilibria_uncertain_sign_stops_refinement(monkeypatch):
    def shaky(scene, quad):
        raise ConvergenceError("quadrature error estimate",
                               _fr(_parabola(scene.gap), err=1.0))

    monkeypatch.setattr("casimir_slabs.analysis.casimir_force", shaky)
    sweep = _synthetic_sweep([2.0, 4.0], _parabola)
    report = find_equilibria(sweep, refine_tol=1e-6)
    assert len(report.crossings) == 1
    crossing = report.crossings[0]
    assert not crossing.refined
    assert crossing.bracket_width == pytest.approx(2.0)
    assert crossing.kind is Stability.STABLE


def test_find_equilibria_tolerates_flagged_but_confident_sign(monkeypatch):
    def flagged(scene, quad):
        # misses its tolerance, but the sign is still trustworthy
        raise ConvergenceError("quadrature error estimate",
                               _fr(_parabola(scene.gap), err=1e-9))

    monkeypatch.setattr("casimir_slabs.analysis.casimir_force", flagged)
    # on this bracket no midpoint comes close enough to the zero for the
    # 1e-9 error bar to swallow the sign before the tolerance is reached
    sweep = _synthetic_sweep([2.0, 4.1], _parabola)
    report = find_equilibria(sweep, refine_tol=1e-4)
    assert report.crossings[0].refined
    assert report.crossings[0].gap == pytest.approx(2.5, abs=1e-4)


def test_find_equilibria_validation():
    sweep = _synthetic_sweep([1.0, 2.0], lambda g: 1.0)
    with pytest.raises(ValueError, match="refine_tol"):
        find_equilibria(sweep, refine_tol=0.0)
    starved = _synthetic_sweep([1.0, 2.0], lambda g: 1.0,
                               converged=(True, False))
    with pytest.raises(ValueError, match="2 valid sweep points"):
        find_equilibria(starved, refine_tol=1e-3)


# distance sweeps

def test_sweep_spacing(monkeypatch):
    monkeypatch.setattr("casimir_slabs.analysis.casimir_force",
                        lambda scene, quad: _fr(1.0 / scene.gap))
    a, b = Slab(Vacuum()), Slab(Vacuum())
    log = sweep_distance(a, b, 0.1, 10.0, 5)
    assert np.allclose(log.gaps, np.geomspace(0.1, 10.0, 5))
    lin = sweep_distance(a, b, 0.1, 10.0, 5, spacing="linear")
    assert np.allclose(lin.gaps, np.linspace(0.1, 10.0, 5))
    assert np.allclose(lin.gaps_lambda0, np.array(lin.gaps) / (2.0 * math.pi))
    assert all(lin.converged)


def test_sweep_validation():
    a, b = Slab(Vacuum()), Slab(Vacuum())
    with pytest.raises(ValueError, match="gap_min"):
        sweep_distance(a, b, 0.0, 1.0, 4)
    with pytest.raises(ValueError, match="gap_min"):
        sweep_distance(a, b, 2.0, 1.0, 4)
    with pytest.raises(ValueError, match="n_points"):
        sweep_distance(a, b, 0.5, 1.0, 1)
    with pytest.raises(ValueError, match="spacing"):
        sweep_distance(a, b, 0.5, 1.0, 4, spacing="cubic")


def test_sweep_flags_unconverged_and_keeps_estimate(monkeypatch):
    def moody(scene, quad):
        if scene.gap < 1.5:
            raise ConvergenceError("quadrature error estimate",
                                   _fr(123.0, err=1.0))
        return _fr(scene.gap)

    monkeypatch.setattr("casimir_slabs.analysis.casimir_force", moody)
    sweep = sweep_distance(Slab(Vacuum()), Slab(Vacuum()), 1.0, 2.0, 3,
                           spacing="linear")
    assert sweep.converged == (False, True, True)
    assert sweep.forces[0].force == 123.0  # best estimate survives the flag


def test_sweep_real_ideal_mirrors():
    sweep = sweep_distance(Slab(PerfectConductor()), Slab(PerfectConductor()),
                           0.5, 2.0, 3, quad=LOOSE)
    forces = [r.force for r in sweep.forces]
    assert forces[0] > forces[1] > forces[2] > 0.0
    for r in sweep.forces:
        assert r.relative == pytest.approx(1.0, rel=1e-6)


def test_parallel_jobs_match_serial():
    a, b = Slab(PerfectConductor()), Slab(CONDUCTOR_PARTNER)
    serial = sweep_distance(a, b, 0.5, 1.0, 2, quad=LOOSE)
    parallel = sweep_distance(a, b, 0.5, 1.0, 2, quad=LOOSE, jobs=2)
    assert serial.forces == parallel.forces
    assert serial.converged == parallel.converged


# parameter grids

def test_grid_param_catalogue():
    assert "gap" in GRID_PARAMS
    assert "a.omega_pe" in GRID_PARAMS
    assert "b.mu" in GRID_PARAMS
    assert len(GRID_PARAMS) == 17


def _template():
    return Scene(Slab(Constant(2.0, 1.0)), Slab(METAMAT_B), 1.0)


def test_grid_scan_applies_both_axes(monkeypatch):
    def probe(scene, quad):
        eps = scene.slab_a.material.eps
        wpm = scene.slab_b.material.magnetic.omega_p
        return ForceResult(force=1.0, force_te=0.5, force_tm=0.5,
                           relative=1000.0 * eps + wpm,
                           error_estimate=0.0, evaluations=1)

    monkeypatch.setattr("casimir_slabs.analysis.casimir_force", probe)
    grid = grid_scan(_template(), "a.eps", "b.omega_pm",
                     (1.0, 3.0), (0.5, 2.5), nx=3, ny=5)
    assert grid.values.shape == (3, 5)
    assert grid.x_axis.points == (1.0, 2.0, 3.0)
    assert len(grid.y_axis.points) == 5
    for i, x in enumerate(grid.x_axis.points):
        for j, y in enumerate(grid.y_axis.points):
            assert grid.values[i, j] == pytest.approx(1000.0 * x + y)
    assert grid.converged.all()


def test_grid_scan_gap_axis(monkeypatch):
    monkeypatch.setattr(
        "casimir_slabs.analysis.casimir_force",
        lambda scene, quad: ForceResult(1.0, 0.5, 0.5, scene.gap, 0.0, 1))
    grid = grid_scan(_template(), "gap", "a.eps", (1.0, 2.0), (1.0, 1.0),
                     nx=2, ny=1)
    assert grid.values[:, 0] == pytest.approx([1.0, 2.0])


def test_grid_scan_marks_failed_cells(monkeypatch):
    def moody(scene, quad):
        if scene.slab_a.material.eps > 2.5:
            raise ConvergenceError("quadrature error estimate", _fr(0.0, 1.0))
        return _fr(1.0)

    monkeypatch.setattr("casimir_slabs.analysis.casimir_force", moody)
    grid = grid_scan(_template(), "a.eps", "b.omega_pm",
                     (1.0, 3.0), (1.0, 2.0), nx=3, ny=2)
    assert grid.converged[:2].all()
    assert not grid.converged[2].any()
    assert np.isnan(grid.values[2]).all()
    assert np.isfinite(grid.values[:2]).all()


def test_grid_scan_rejects_bad_axes():
    with pytest.raises(ValueError, match="axes must differ"):
        grid_scan(_template(), "a.eps", "a.eps", (1.0, 2.0), (1.0, 2.0), 2, 2)
    with pytest.raises(ValueError, match="at least 1x1"):
        grid_scan(_template(), "a.eps", "b.omega_pm", (1.0, 2.0), (1.0, 2.0), 0, 2)
    with pytest.raises(ValueError, match="unknown grid parameter"):
        grid_scan(_template(), "a.bogus", "b.omega_pm", (1.0, 2.0), (1.0, 2.0), 2, 2)
    # eps axis on a dispersive slab, oscillator axis on a constant slab
    with pytest.raises(ValueError, match="constant-medium"):
        grid_scan(_template(), "b.eps", "a.eps", (1.0, 2.0), (1.0, 2.0), 2, 2)
    with pytest.raises(ValueError, match="dispersive"):
        grid_scan(_template(), "a.omega_pe", "b.omega_pm",
                  (1.0, 2.0), (1.0, 2.0), 2, 2)


def test_grid_scan_invalid_value_fails_fast():
    with pytest.raises(ValueError, match="finite and > 0"):
        grid_scan(_template(), "a.eps", "b.omega_pm",
                  (0.0, 2.0), (1.0, 2.0), 2, 2)


def test_grid_scan_real_smoke():
    grid = grid_scan(Scene(Slab(Constant(2.0)), Slab(Constant(2.0)), 3.0),
                     "a.eps", "b.eps", (0.5, 2.0), (0.5, 2.0), 2, 2,
                     quad=LOOSE)
    assert grid.converged.all()
    # same side of vacuum attracts, opposite sides repel
    assert grid.values[0, 0] > 0.0 and grid.values[1, 1] > 0.0
    assert grid.values[0, 1] < 0.0 and grid.values[1, 0] < 0.0


# the static impedance heuristic

def test_impedance_report_ideal_mirrors():
    report = static_impedance_report(Slab(PerfectConductor()),
                                     Slab(InfinitelyPermeable()))
    assert report.z_a0 is ZLimit.ZERO
    assert report.z_b0 is ZLimit.INFINITE
    assert report.prediction is SignPrediction.REPULSIVE
    same = static_impedance_report(Slab(PerfectConductor()),
                                   Slab(PerfectConductor()))
    assert same.prediction is SignPrediction.ATTRACTIVE


def test_impedance_report_vacuum_is_indeterminate():
    report = static_impedance_report(Slab(Vacuum()), Slab(PerfectConductor()))
    assert report.prediction is SignPrediction.INDETERMINATE
    matched = static_impedance_report(Slab(Constant(2.0, 2.0)),
                                      Slab(PerfectConductor()))
    assert matched.z_a0 == pytest.approx(1.0)
    assert matched.prediction is SignPrediction.INDETERMINATE


def test_impedance_report_dispersive_pairs():
    met = static_impedance_report(Slab(METAMAT_A), Slab(METAMAT_B))
    assert met.z_a0 == pytest.approx(math.sqrt(0.4), rel=1e-12)
    assert met.z_a0 < 1.0 < met.z_b0
    assert met.prediction is SignPrediction.REPULSIVE
    cond = static_impedance_report(Slab(PerfectConductor()),
                                   Slab(CONDUCTOR_PARTNER))
    assert cond.z_b0 < 1.0
    assert cond.prediction is SignPrediction.ATTRACTIVE

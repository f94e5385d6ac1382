"""Force between two parallel slabs across a vacuum gap.

The force density per unit area is evaluated in the imaginary-frequency
representation

    F = 1/(2 pi^2) int_0^inf dxi int_xi^inf dkappa kappa^2
        sum_N  r_N^A r_N^B e^(-2 a kappa) / (1 - r_N^A r_N^B e^(-2 a kappa))

with N in {TE, TM}, kappa = sqrt(xi^2 + k^2) the vacuum decay constant and a
the gap width. This is the standard transverse-wavevector integral after the
change of variables k dk = kappa dkappa, which removes the square-root weight
and aligns the exponential decay with the integration variable. Positive
values mean attraction; F_r = F/F0 normalizes by the ideal-mirror value
F0 = pi^2/(240 a^4).

Units: hbar = c = w0 = 1; gaps and thicknesses in c/w0, forces in
hbar w0^4 / c^3. The display wavelength lambda0 = 2 pi c/w0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _quad
from .materials import (
    InfinitelyPermeable,
    Material,
    PerfectConductor,
    eval_imaginary_axis,
    kappa1_sq_shift,
)

__all__ = [
    "LAMBDA0",
    "Slab",
    "Scene",
    "QuadratureSpec",
    "ForceResult",
    "ConvergenceError",
    "f0",
    "interface_reflection",
    "slab_reflection",
    "integrand",
    "casimir_force",
]

# one display wavelength, in units of c/w0
LAMBDA0 = 2.0 * math.pi

POLARIZATIONS = ("TE", "TM")


@dataclass(frozen=True)
class Slab:
    """A material with a thickness; thickness None means semi-infinite."""

    material: Material
    thickness: float | None = None

    def __post_init__(self):
        if self.thickness is not None:
            if isinstance(self.material, (PerfectConductor, InfinitelyPermeable)):
                # a finite ideal mirror reflects identically to a semi-infinite
                # one; reject the false generality
                raise ValueError("ideal mirrors must be semi-infinite (thickness=None)")
            if not (math.isfinite(self.thickness) and self.thickness > 0.0):
                raise ValueError(f"thickness must be > 0, got {self.thickness!r}")


@dataclass(frozen=True)
class Scene:
    """Two slabs facing each other across a vacuum gap (units c/w0)."""

    slab_a: Slab
    slab_b: Slab
    gap: float

    def __post_init__(self):
        if not (math.isfinite(self.gap) and self.gap > 0.0):
            raise ValueError(f"gap must be > 0, got {self.gap!r}")


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and budgets for the double quadrature.

    tail_cutoff truncates both integrals where e^(-2 a kappa) drops below it;
    the neglected tail is bounded analytically and folded into the error
    estimate.
    """

    rel_tol: float = 1e-6
    abs_tol: float = 1e-12
    max_subdivisions: int = 200
    tail_cutoff: float = 1e-16

    def __post_init__(self):
        if not (0.0 < self.rel_tol < 1.0):
            raise ValueError(f"rel_tol must be in (0, 1), got {self.rel_tol!r}")
        if not (self.abs_tol >= 0.0):
            raise ValueError(f"abs_tol must be >= 0, got {self.abs_tol!r}")
        if not (isinstance(self.max_subdivisions, int) and self.max_subdivisions > 0):
            raise ValueError(f"max_subdivisions must be a positive int, got {self.max_subdivisions!r}")
        if not (0.0 < self.tail_cutoff < 1.0):
            raise ValueError(f"tail_cutoff must be in (0, 1), got {self.tail_cutoff!r}")


@dataclass(frozen=True)
class ForceResult:
    """Force density and diagnostics. force = force_te + force_tm; positive
    means attraction; relative is F/F0(gap)."""

    force: float
    force_te: float
    force_tm: float
    relative: float
    error_estimate: float
    evaluations: int


class ConvergenceError(RuntimeError):
    """Quadrature budget exhausted; .result carries the best estimate."""

    def __init__(self, message: str, result: ForceResult):
        super().__init__(message)
        self.result = result


def f0(gap: float) -> float:
    """Ideal-mirror attraction pi^2/(240 a^4), the F_r normalizer."""
    if not (math.isfinite(gap) and gap > 0.0):
        raise ValueError(f"gap must be > 0, got {gap!r}")
    return math.pi ** 2 / (240.0 * gap ** 4)


def _check_domain(xi: float, kappa: float) -> None:
    if not (kappa > 0.0):
        raise ValueError(f"kappa must be > 0, got {kappa!r}")
    if kappa < xi:
        raise ValueError(f"kappa must be >= xi (kappa={kappa!r}, xi={xi!r})")


def interface_reflection(material: Material, xi: float, kappa: float,
                         polarization: str) -> float:
    """Single vacuum/medium interface reflection at imaginary frequency.

    With kappa_1 = sqrt((eps mu - 1) xi^2 + kappa^2):

        TE: (mu kappa - kappa_1) / (mu kappa + kappa_1)
        TM: (eps kappa - kappa_1) / (eps kappa + kappa_1)

    Ideal mirrors are the fixed points TE/TM = -1/+1 (conductor) and +1/-1
    (permeable). Finite media give values strictly inside (-1, 1).
    """
    _check_domain(xi, kappa)
    if polarization not in POLARIZATIONS:
        raise ValueError(f"polarization must be 'TE' or 'TM', got {polarization!r}")
    if isinstance(material, PerfectConductor):
        return -1.0 if polarization == "TE" else 1.0
    if isinstance(material, InfinitelyPermeable):
        return 1.0 if polarization == "TE" else -1.0
    eps, mu = eval_imaginary_axis(material, xi)
    kappa1 = math.sqrt(kappa * kappa + kappa1_sq_shift(material, xi))
    ratio = mu if polarization == "TE" else eps
    if math.isinf(ratio):
        return 1.0  # plasma limit at xi = 0: the interface turns mirror-like
    return (ratio * kappa - kappa1) / (ratio * kappa + kappa1)


def slab_reflection(slab: Slab, xi: float, kappa: float, polarization: str) -> float:
    """Reflection of a slab of finite or semi-infinite thickness.

    A finite slab backed by vacuum sums the two interfaces:
    r (1 - e^(-2 kappa_1 d)) / (1 - r^2 e^(-2 kappa_1 d)).
    """
    r = interface_reflection(slab.material, xi, kappa, polarization)
    if slab.thickness is None:
        return r
    kappa1 = math.sqrt(kappa * kappa + kappa1_sq_shift(slab.material, xi))
    decay = math.exp(-2.0 * kappa1 * slab.thickness)
    return r * (1.0 - decay) / (1.0 - r * r * decay)


def integrand(scene: Scene, xi: float, kappa: float) -> tuple[float, float]:
    """(TE, TM) integrand rows kappa^2 r_A r_B e^(-2 a kappa) / (1 - ...).

    The denominator stays positive because |r_A r_B e^(-2 a kappa)| < 1 for
    every material pair at kappa > 0.
    """
    _check_domain(xi, kappa)
    weight = kappa * kappa
    decay = math.exp(-2.0 * scene.gap * kappa)
    out = []
    for pol in POLARIZATIONS:
        product = (slab_reflection(scene.slab_a, xi, kappa, pol)
                   * slab_reflection(scene.slab_b, xi, kappa, pol) * decay)
        out.append(weight * product / (1.0 - product))
    return (out[0], out[1])


def _slab_r_arrays(slab: Slab, xi: float, kappa: np.ndarray):
    """(r_TE, r_TM) arrays over a kappa grid at fixed xi."""
    m = slab.material
    if isinstance(m, PerfectConductor):
        ones = np.ones_like(kappa)
        return -ones, ones
    if isinstance(m, InfinitelyPermeable):
        ones = np.ones_like(kappa)
        return ones, -ones
    eps, mu = eval_imaginary_axis(m, xi)
    kappa1 = np.sqrt(kappa * kappa + kappa1_sq_shift(m, xi))
    if math.isinf(mu):
        r_te = np.ones_like(kappa)
    else:
        r_te = (mu * kappa - kappa1) / (mu * kappa + kappa1)
    if math.isinf(eps):
        r_tm = np.ones_like(kappa)
    else:
        r_tm = (eps * kappa - kappa1) / (eps * kappa + kappa1)
    if slab.thickness is not None:
        decay = np.exp(-2.0 * kappa1 * slab.thickness)
        r_te = r_te * (1.0 - decay) / (1.0 - r_te * r_te * decay)
        r_tm = r_tm * (1.0 - decay) / (1.0 - r_tm * r_tm * decay)
    return r_te, r_tm


def _integrand_rows(scene: Scene, xi: float, kappa: np.ndarray) -> np.ndarray:
    """(2, n) stacked TE and TM integrand values at fixed xi."""
    a_te, a_tm = _slab_r_arrays(scene.slab_a, xi, kappa)
    b_te, b_tm = _slab_r_arrays(scene.slab_b, xi, kappa)
    decay = np.exp(-2.0 * scene.gap * kappa)
    weight = kappa * kappa
    p_te = a_te * b_te * decay
    p_tm = a_tm * b_tm * decay
    return np.stack([weight * p_te / (1.0 - p_te), weight * p_tm / (1.0 - p_tm)])


# interior break points (fractions of the span) seeding each adaptive pass;
# geometric toward the lower end where the integrand structure lives
_SEED_BREAKS = (1.0 / 256.0, 1.0 / 64.0, 1.0 / 16.0, 0.25)


def _tail_bound(gap: float, kappa_max: float, cutoff: float) -> float:
    """Bound on the neglected kappa > kappa_max region, |r_A r_B| <= 1.

    With beta = 2a and X = kappa_max:
        I2(X) = int_X^inf kappa^2 e^(-beta kappa) dkappa
              = e^(-beta X) (X^2/beta + 2X/beta^2 + 2/beta^3)
        J(X)  = int_X^inf I2(xi) dxi
              = e^(-beta X) (X^2/beta^2 + 4X/beta^3 + 6/beta^4)
    and the discarded double integral is bounded by X*I2(X) + J(X) per
    polarization pair, geometric-series factor 1/(1 - cutoff).
    """
    beta = 2.0 * gap
    x = kappa_max
    damp = math.exp(-beta * x)
    i2 = damp * (x * x / beta + 2.0 * x / beta ** 2 + 2.0 / beta ** 3)
    j = damp * (x * x / beta ** 2 + 4.0 * x / beta ** 3 + 6.0 / beta ** 4)
    return (x * i2 + j) / (math.pi ** 2 * (1.0 - cutoff))


def casimir_force(scene: Scene, quad: QuadratureSpec = QuadratureSpec()) -> ForceResult:
    """Evaluate the double integral adaptively.

    The outer xi integral treats 0 as an open endpoint (the lossless plasma
    response may diverge there); each outer node fully converges its inner
    kappa integral, whose error estimate is integrated alongside the values
    and added to the outer rule error and the analytic tail bound.

    Raises ConvergenceError (carrying the best result) when the final error
    estimate misses max(abs_tol, rel_tol * |force|).
    """
    a = scene.gap
    kappa_max = -math.log(quad.tail_cutoff) / (2.0 * a)
    evaluations = [0]

    # budget split: outer rule takes half the tolerance, the integrated
    # inner estimates a quarter, leaving headroom so a converged pass
    # cannot miss the final check by its own bookkeeping
    def inner(xi: float):
        res = _quad.integrate(
            lambda kap: _integrand_rows(scene, xi, kap),
            xi, kappa_max,
            rel_tol=0.25 * quad.rel_tol,
            abs_tol=0.25 * quad.abs_tol / kappa_max,
            max_subdivisions=quad.max_subdivisions,
            initial_edges=_SEED_BREAKS,
        )
        evaluations[0] += res.evaluations
        return res

    def outer_rows(xis: np.ndarray) -> np.ndarray:
        out = np.empty((3, len(xis)))
        for i, xi in enumerate(xis):
            res = inner(float(xi))
            out[0, i] = res.values[0]
            out[1, i] = res.values[1]
            out[2, i] = res.error
        return out

    outer = _quad.integrate(
        outer_rows, 0.0, kappa_max,
        rel_tol=0.5 * quad.rel_tol,
        abs_tol=0.5 * quad.abs_tol,
        max_subdivisions=quad.max_subdivisions,
        n_control=2,
        initial_edges=_SEED_BREAKS,
    )

    norm = 1.0 / (2.0 * math.pi ** 2)
    force_te = norm * float(outer.values[0])
    force_tm = norm * float(outer.values[1])
    force = force_te + force_tm
    error = norm * (outer.error + float(outer.values[2]))
    error += _tail_bound(a, kappa_max, quad.tail_cutoff)
    result = ForceResult(
        force=force,
        force_te=force_te,
        force_tm=force_tm,
        relative=force / f0(a),
        error_estimate=error,
        evaluations=evaluations[0],
    )
    if error > max(quad.abs_tol, quad.rel_tol * abs(force)):
        raise ConvergenceError(
            f"quadrature error estimate {error:.3e} misses the requested "
            f"tolerance at gap {a!r}", result)
    return result

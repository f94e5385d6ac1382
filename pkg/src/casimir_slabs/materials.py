"""Dispersion models for the slab media.

Natural units everywhere: hbar = c = 1, frequencies in a reference unit w0,
lengths in c/w0. The force integral consumes the response on the imaginary
frequency axis (w = i*xi), where a causal single-resonance oscillator is
real, >= 1 and monotone non-increasing in xi. The real axis is only used
for response-curve output.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple, Union

__all__ = [
    "OscillatorParams",
    "DrudeLorentz",
    "Constant",
    "PerfectConductor",
    "InfinitelyPermeable",
    "Vacuum",
    "Material",
    "AxisResponse",
    "ZLimit",
    "IdealMaterialError",
    "eval_imaginary_axis",
    "eval_real_frequency",
    "impedance",
    "kappa1_sq_shift",
]


class IdealMaterialError(ValueError):
    """An ideal mirror was asked for a finite material response."""


class ZLimit(enum.Enum):
    """Impedance limit of an ideal mirror (instead of the numbers 0 / inf)."""

    ZERO = "zero"
    INFINITE = "infinite"


@dataclass(frozen=True)
class OscillatorParams:
    """Single resonance: plasma frequency omega_p, resonant frequency omega_t,
    damping gamma, all in units of w0 and all >= 0.

    omega_p = 0 switches the response off exactly (vacuum-like). omega_t = 0
    with gamma = 0 is the lossless plasma limit, whose imaginary-axis response
    1 + omega_p^2/xi^2 diverges at xi = 0; that divergence is integrable and
    deliberately permitted.
    """

    omega_p: float
    omega_t: float
    gamma: float = 0.0

    def __post_init__(self):
        for name in ("omega_p", "omega_t", "gamma"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0.0):
                raise ValueError(f"{name} must be finite and >= 0, got {value!r}")

    def response(self, xi: float) -> float:
        """1 + omega_p^2 / (omega_t^2 + xi^2 + gamma*xi) at imaginary frequency.

        Returns +inf at xi = 0 in the lossless plasma case.
        """
        if self.omega_p == 0.0:
            return 1.0
        denom = self.omega_t * self.omega_t + xi * xi + self.gamma * xi
        if denom == 0.0:
            return math.inf
        return 1.0 + self.omega_p * self.omega_p / denom

    def response_shift(self, xi: float) -> float:
        """xi^2 * (response(xi) - 1), finite for every xi >= 0.

        In the lossless plasma case this is omega_p^2 for all xi (including
        xi = 0), which is why the reflection kernel uses it instead of the
        raw response.
        """
        if self.omega_p == 0.0:
            return 0.0
        denom = self.omega_t * self.omega_t + xi * xi + self.gamma * xi
        if denom == 0.0:
            return self.omega_p * self.omega_p
        return self.omega_p * self.omega_p * xi * xi / denom


_VACUUM_OSCILLATOR = OscillatorParams(0.0, 0.0, 0.0)


@dataclass(frozen=True)
class DrudeLorentz:
    """Dispersive medium with independent electric and magnetic resonances."""

    electric: OscillatorParams
    magnetic: OscillatorParams = _VACUUM_OSCILLATOR


@dataclass(frozen=True)
class Constant:
    """Non-dispersive medium with fixed eps > 0 and mu > 0."""

    eps: float
    mu: float = 1.0

    def __post_init__(self):
        for name in ("eps", "mu"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0.0):
                raise ValueError(f"{name} must be finite and > 0, got {value!r}")


@dataclass(frozen=True)
class PerfectConductor:
    """Ideal electric mirror: r_TE = -1, r_TM = +1 at every frequency."""


@dataclass(frozen=True)
class InfinitelyPermeable:
    """Ideal magnetic mirror: r_TE = +1, r_TM = -1 at every frequency."""


@dataclass(frozen=True)
class Vacuum:
    """eps = mu = 1; reflects nothing."""


Material = Union[DrudeLorentz, Constant, PerfectConductor, InfinitelyPermeable, Vacuum]

_IDEAL_KINDS = (PerfectConductor, InfinitelyPermeable)


class AxisResponse(NamedTuple):
    eps: float
    mu: float


def _check_xi(xi: float) -> None:
    if not (xi >= 0.0):
        raise ValueError(f"xi must be >= 0, got {xi!r}")


def eval_imaginary_axis(material: Material, xi: float) -> AxisResponse:
    """(eps, mu) at imaginary frequency i*xi.

    Both are real and >= 1 for DrudeLorentz media (with +inf permitted at
    exactly xi = 0 in the lossless plasma limit), the stored constants for
    Constant, and (1, 1) for Vacuum. Ideal mirrors carry no finite response;
    their reflection coefficients are hard-coded at the reflection level.
    """
    _check_xi(xi)
    if isinstance(material, _IDEAL_KINDS):
        raise IdealMaterialError("ideal material has no finite axis response")
    if isinstance(material, DrudeLorentz):
        return AxisResponse(material.electric.response(xi), material.magnetic.response(xi))
    if isinstance(material, Constant):
        return AxisResponse(material.eps, material.mu)
    if isinstance(material, Vacuum):
        return AxisResponse(1.0, 1.0)
    raise TypeError(f"not a material: {material!r}")


def eval_real_frequency(material: Material, omega: float) -> tuple[complex, complex]:
    """Complex (eps, mu) on the real frequency axis.

    For an oscillator: 1 + omega_p^2 / (omega_t^2 - omega^2 - i*gamma*omega).
    Imaginary parts are >= 0 for omega > 0 (passivity).
    """
    if not (omega > 0.0):
        raise ValueError(f"omega must be > 0, got {omega!r}")
    if isinstance(material, _IDEAL_KINDS):
        raise IdealMaterialError("ideal material has no finite axis response")
    if isinstance(material, DrudeLorentz):
        return (
            _oscillator_real(material.electric, omega),
            _oscillator_real(material.magnetic, omega),
        )
    if isinstance(material, Constant):
        return (complex(material.eps), complex(material.mu))
    if isinstance(material, Vacuum):
        return (1.0 + 0.0j, 1.0 + 0.0j)
    raise TypeError(f"not a material: {material!r}")


def _oscillator_real(osc: OscillatorParams, omega: float) -> complex:
    if osc.omega_p == 0.0:
        return 1.0 + 0.0j
    denom = complex(osc.omega_t * osc.omega_t - omega * omega, -osc.gamma * omega)
    if denom == 0.0:
        # lossless oscillator driven exactly at resonance: a pole, with no
        # single-valued limit (+inf below, -inf above); NaN marks the gap
        return complex(math.nan, math.nan)
    return 1.0 + osc.omega_p * osc.omega_p / denom


def impedance(material: Material, xi: float):
    """Wave impedance sqrt(mu/eps) at imaginary frequency i*xi.

    Ideal mirrors return a ZLimit member rather than 0 or inf. The lossless
    plasma limit at xi = 0 comes out 0.0 (electric) / inf (magnetic) by the
    same limit; if both responses diverge the finite ratio omega_pm/omega_pe
    is returned.
    """
    if isinstance(material, PerfectConductor):
        return ZLimit.ZERO
    if isinstance(material, InfinitelyPermeable):
        return ZLimit.INFINITE
    eps, mu = eval_imaginary_axis(material, xi)
    if math.isinf(eps) and math.isinf(mu):
        return material.magnetic.omega_p / material.electric.omega_p
    if math.isinf(eps):
        return 0.0
    if math.isinf(mu):
        return math.inf
    return math.sqrt(mu / eps)


def kappa1_sq_shift(material: Material, xi: float) -> float:
    """(eps*mu - 1) * xi^2, assembled so it stays finite wherever the physics is.

    This is the shift between the squared decay constants inside and outside
    the medium: kappa_1 = sqrt(kappa^2 + shift). Computing it from the
    oscillator parameters directly (rather than from a possibly huge eps)
    keeps the xi -> 0 plasma limit exact: shift -> omega_p^2 there.
    """
    _check_xi(xi)
    if isinstance(material, _IDEAL_KINDS):
        raise IdealMaterialError("ideal material has no finite axis response")
    if isinstance(material, Vacuum):
        return 0.0
    if isinstance(material, Constant):
        return (material.eps * material.mu - 1.0) * xi * xi
    if isinstance(material, DrudeLorentz):
        e, m = material.electric, material.magnetic
        se = e.response_shift(xi)  # xi^2 (eps - 1)
        sm = m.response_shift(xi)  # xi^2 (mu - 1)
        if xi * xi > 0.0:  # squared so subnormal xi takes the limit branch
            cross = se * sm / (xi * xi)
        else:
            # xi = 0 limit of xi^2 (eps-1)(mu-1), nonzero only with a
            # lossless plasma on at least one response
            e_plasma = e.omega_p > 0.0 and e.omega_t == 0.0 and e.gamma == 0.0
            m_plasma = m.omega_p > 0.0 and m.omega_t == 0.0 and m.gamma == 0.0
            if e_plasma and m_plasma:
                cross = math.inf
            elif e_plasma:
                cross = se * (m.response(0.0) - 1.0)
            elif m_plasma:
                cross = sm * (e.response(0.0) - 1.0)
            else:
                cross = 0.0
        return se + sm + cross
    raise TypeError(f"not a material: {material!r}")

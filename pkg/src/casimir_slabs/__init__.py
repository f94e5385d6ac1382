"""Casimir forces between parallel material slabs from imaginary-frequency
Lifshitz theory, with dispersive magnetodielectric media.

Natural units throughout: hbar = c = 1 and frequencies are measured against
a reference w0, so lengths are in c/w0 and forces per unit area in
hbar w0^4 / c^3. Positive force means attraction.
"""

__version__ = "0.1.0"

from .materials import (
    AxisResponse,
    Constant,
    DrudeLorentz,
    IdealMaterialError,
    InfinitelyPermeable,
    Material,
    OscillatorParams,
    PerfectConductor,
    Vacuum,
    ZLimit,
    eval_imaginary_axis,
    eval_real_frequency,
    impedance,
)
from .lifshitz import (
    LAMBDA0,
    POLARIZATIONS,
    ConvergenceError,
    ForceResult,
    QuadratureSpec,
    Scene,
    Slab,
    casimir_force,
    f0,
    integrand,
    interface_reflection,
    slab_reflection,
)
from .analysis import (
    GRID_PARAMS,
    Crossing,
    EquilibriumReport,
    GridResult,
    ImpedanceReport,
    ParamAxis,
    SignPrediction,
    Stability,
    SweepResult,
    find_equilibria,
    grid_scan,
    static_impedance_report,
    sweep_distance,
)
from .config import ConfigError, RunConfig, parse_config

__all__ = [
    "__version__",
    # materials
    "AxisResponse", "Constant", "DrudeLorentz", "IdealMaterialError",
    "InfinitelyPermeable", "Material", "OscillatorParams", "PerfectConductor",
    "Vacuum", "ZLimit", "eval_imaginary_axis", "eval_real_frequency",
    "impedance",
    # force kernel
    "LAMBDA0", "POLARIZATIONS", "ConvergenceError", "ForceResult",
    "QuadratureSpec", "Scene", "Slab", "casimir_force", "f0", "integrand",
    "interface_reflection", "slab_reflection",
    # studies
    "GRID_PARAMS", "Crossing", "EquilibriumReport", "GridResult",
    "ImpedanceReport", "ParamAxis", "SignPrediction", "Stability",
    "SweepResult", "find_equilibria", "grid_scan",
    "static_impedance_report", "sweep_distance",
    # run files
    "ConfigError", "RunConfig", "parse_config",
]

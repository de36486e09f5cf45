"""Relativistic spin-0 scattering and bound states for the deformed
Woods-Saxon potential family.

The heavy lifting lives in the compiled extension; this package re-exports
its surface.
"""

from ._kgws import (  # noqa: F401
    BoundState,
    ConfigData,
    Parity,
    PotentialParams,
    ScatteringResult,
    SideParams,
    SolverError,
    Spectrum,
    UnitSystem,
    bound_wavefunction,
    derive_v0,
    hyp2f1,
    ln_gamma,
    load_config,
    make_symmetric,
    oracle_spectrum,
    oracle_transmission,
    potential,
    scan_spectrum,
    transmission_reflection,
)

__all__ = [
    "BoundState",
    "ConfigData",
    "Parity",
    "PotentialParams",
    "ScatteringResult",
    "SideParams",
    "SolverError",
    "Spectrum",
    "UnitSystem",
    "bound_wavefunction",
    "derive_v0",
    "hyp2f1",
    "ln_gamma",
    "load_config",
    "make_symmetric",
    "oracle_spectrum",
    "oracle_transmission",
    "potential",
    "scan_spectrum",
    "transmission_reflection",
]

__version__ = "0.1.0"

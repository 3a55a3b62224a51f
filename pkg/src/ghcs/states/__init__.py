"""
ghcs.states
===========

Energy spectra, coherent-state families (BG, KP, GK), Fock expansions,
ladder operators and overlaps.
"""

from .families import (
    CSFamily,
    FockExpansion,
    GKLabel,
    fock_expansion,
    harmonic_oscillator,
    overlap,
    pho_bg,
    pho_gk,
    pho_kp,
    quadratic,
)
from .spectra import EnergySpectrum, GKScaled, Linear, Quadratic, energy_eigenvalue

__all__ = [
    "CSFamily",
    "EnergySpectrum",
    "FockExpansion",
    "GKLabel",
    "GKScaled",
    "Linear",
    "Quadratic",
    "energy_eigenvalue",
    "fock_expansion",
    "harmonic_oscillator",
    "overlap",
    "pho_bg",
    "pho_gk",
    "pho_kp",
    "quadratic",
]

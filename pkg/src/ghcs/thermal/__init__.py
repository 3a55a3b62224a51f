"""
ghcs.thermal
============

Canonical density-matrix elements in coherent-state labels, partition
functions and Husimi functions.
"""

from .density import (
    OmegaResult,
    Route,
    ThermalQuery,
    husimi_q,
    omega_boundary,
    omega_element,
    partition_function,
)

__all__ = [
    "OmegaResult",
    "Route",
    "ThermalQuery",
    "husimi_q",
    "omega_boundary",
    "omega_element",
    "partition_function",
]

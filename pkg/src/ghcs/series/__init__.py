"""
ghcs.series
===========

Pochhammer symbols, structure constants, pFq summation and power-series arithmetic.
"""

from .pfq import (
    HypergeometricParams,
    Kind,
    closed_form,
    convergence_radius,
    eval_pfq,
    pochhammer,
    structure_constant,
    structure_constant_log,
)
from .power_series import PowerSeries, cauchy_product

__all__ = [
    "HypergeometricParams",
    "Kind",
    "PowerSeries",
    "cauchy_product",
    "closed_form",
    "convergence_radius",
    "eval_pfq",
    "pochhammer",
    "structure_constant",
    "structure_constant_log",
]

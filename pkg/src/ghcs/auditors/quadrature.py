"""
ghcs.auditors.quadrature
========================

Gauss rules for the resolution-of-unity checks:

    semi-infinite   ∫₀^∞ t^α e^{−t} f(t) dt   (generalized Gauss-Laguerre)
    finite-interval ∫₀^1 (1−t)^α f(t) dt      (Gauss-Jacobi mapped to [0, 1])

Rules come from the Golub-Welsch eigenvalue method in scipy.special and are
cached; returned arrays are read-only.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Callable, Tuple

import numpy as np
from scipy.special import roots_genlaguerre, roots_jacobi

from ghcs.core.config import QUADRATURE_NODES
from ghcs.core.errors import InvalidParameters, NumericalFailure

logger = logging.getLogger("ghcs.quadrature")


class Scheme(str, Enum):
    FINITE = "finite-interval"
    SEMI_INFINITE = "semi-infinite"


@dataclass(frozen=True)
class QuadratureSpec:
    node_count: int = QUADRATURE_NODES
    scheme: Scheme = Scheme.SEMI_INFINITE

    def __post_init__(self):
        if self.node_count < 2:
            raise InvalidParameters(f"node_count must be at least 2 (got {self.node_count})")
        object.__setattr__(self, "scheme", Scheme(self.scheme))

    def doubled(self) -> "QuadratureSpec":
        return QuadratureSpec(2 * self.node_count, self.scheme)


@lru_cache(maxsize=64)
def gauss_rule(
    scheme: Scheme, node_count: int, alpha: float = 0.0
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Nodes and weights of the ``scheme`` rule with endpoint exponent ``alpha``.
    Nodes lie strictly inside the support and weights are nonnegative.
    """
    scheme = Scheme(scheme)
    if not alpha > -1:
        raise InvalidParameters(f"endpoint exponent must exceed -1 (got {alpha:g})")
    if scheme == Scheme.SEMI_INFINITE:
        nodes, weights = roots_genlaguerre(node_count, alpha)
        inside = np.all(nodes > 0)
    else:
        x, w = roots_jacobi(node_count, alpha, 0.0)
        nodes = (x + 1.0) / 2.0
        weights = w / 2.0 ** (alpha + 1.0)
        inside = np.all((nodes > 0) & (nodes < 1))
    if not (np.all(np.isfinite(nodes)) and np.all(np.isfinite(weights))):
        raise NumericalFailure(f"{scheme.value} rule with {node_count} nodes is not finite")
    if not inside:
        raise NumericalFailure(f"{scheme.value} rule with {node_count} nodes leaves the support")
    if np.any(weights < 0):
        raise NumericalFailure(f"{scheme.value} rule with {node_count} nodes has negative weights")
    nodes = np.asarray(nodes, dtype=float)
    weights = np.asarray(weights, dtype=float)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    logger.debug("built %s rule: %d nodes, alpha=%g", scheme.value, node_count, alpha)
    return nodes, weights


def integrate(
    spec: QuadratureSpec, f: Callable[[np.ndarray], np.ndarray], alpha: float = 0.0
) -> float:
    """Σ w_i f(t_i) for the rule described by ``spec``."""
    nodes, weights = gauss_rule(spec.scheme, spec.node_count, float(alpha))
    return float(np.dot(weights, f(nodes)))

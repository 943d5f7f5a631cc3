"""Cross-entropy and MSE energies on the simplex and their local curvature.

The energies accept any positive probability vector, not only validated
Beliefs, so that finite-difference checks can perturb coordinates off the
simplex.
"""

from dataclasses import dataclass

import numpy as np
from scipy import special

from .errors import OutOfRange
from .simplex import ArrayLike, Belief, Target, as_probs, check_same_dim

Point = Belief | ArrayLike


@dataclass(frozen=True)
class CurvaturePair:
    """
    Local strong-convexity and smoothness constants of the CE proxy Hessian.

    mu = 1/max_i p_i and ell = 1/min_i p_i, so 0 < mu <= ell.
    """

    mu: float
    ell: float

    def __post_init__(self) -> None:
        if not (self.mu > 0 and self.ell > 0):
            raise OutOfRange(f"curvature constants must be > 0, got mu={self.mu}, ell={self.ell}")
        if self.mu > self.ell * (1 + 1e-12):
            raise OutOfRange(f"mu must not exceed ell, got mu={self.mu}, ell={self.ell}")


def ce_energy(p: Point, q: Target | Point) -> float:
    """Cross-entropy E(p) = -sum q_i log p_i."""
    check_same_dim(p, q)
    return -float(np.sum(special.xlogy(as_probs(q), as_probs(p))))


def ce_gradient(p: Point, q: Target | Point) -> np.ndarray:
    """Gradient of the cross-entropy: -q_i / p_i."""
    check_same_dim(p, q)
    return -as_probs(q) / as_probs(p)


def ce_hessian_diag_full(p: Point, q: Target | Point) -> np.ndarray:
    """Exact (target-dependent) Hessian diagonal q_i / p_i^2."""
    check_same_dim(p, q)
    pa = as_probs(p)
    return as_probs(q) / (pa * pa)


def ce_hessian_diag_proxy(p: Point) -> np.ndarray:
    """One-hot / locally normalized curvature proxy 1 / p_i."""
    return 1.0 / as_probs(p)


def curvature_constants(p: Point) -> CurvaturePair:
    """(mu, L) = (1/max p, 1/min p), the extremes of the proxy Hessian."""
    pa = as_probs(p)
    return CurvaturePair(mu=float(1.0 / pa.max()), ell=float(1.0 / pa.min()))


def mse_energy(p: Point, y: Target | Point) -> float:
    """Squared Euclidean distance ||p - y||^2."""
    check_same_dim(p, y)
    diff = as_probs(p) - as_probs(y)
    return float(np.dot(diff, diff))

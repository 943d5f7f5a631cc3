"""KL divergence as the Bregman divergence of negative entropy.

All logarithms are natural, so divergences are in nats.
"""

import numpy as np
from scipy import special

from .simplex import ArrayLike, Belief, as_probs, check_same_dim

Point = Belief | ArrayLike


def negentropy(p: Point) -> float:
    """Mirror potential phi(p) = sum p_i log p_i (equals -entropy(p))."""
    return float(np.sum(special.xlogy(as_probs(p), as_probs(p))))


def negentropy_gradient(q: Point) -> np.ndarray:
    """Gradient of phi: 1 + log q_i."""
    return 1.0 + np.log(as_probs(q))


def kl(p: Point, q: Point) -> float:
    """
    D(p || q) = sum p_i log(p_i / q_i).

    Summed elementwise as p log(p/q) - p + q, which is nonnegative term by
    term and equal to the KL divergence on the simplex; this keeps nearby
    pairs free of cancellation.

    Raises:
        DimensionMismatch: p and q have different sizes
    """
    check_same_dim(p, q)
    return float(np.sum(special.kl_div(as_probs(p), as_probs(q))))


def bregman_divergence(p: Point, q: Point) -> float:
    """phi(p) - phi(q) - <grad phi(q), p - q>, the generator form of kl."""
    check_same_dim(p, q)
    pa, qa = as_probs(p), as_probs(q)
    return negentropy(pa) - negentropy(qa) - float(np.dot(negentropy_gradient(qa), pa - qa))


def three_point_residual(p: Point, r: Point, q: Point) -> float:
    """
    D(p||q) - D(p||r) - D(r||q) + <grad phi(q) - grad phi(r), p - r>.

    The three-point identity makes this exactly zero; the return value is
    the floating-point residual.

    Raises:
        DimensionMismatch: the three points differ in size
    """
    check_same_dim(p, r, q)
    pa, ra, qa = as_probs(p), as_probs(r), as_probs(q)
    cross = float(np.dot(negentropy_gradient(qa) - negentropy_gradient(ra), pa - ra))
    return kl(pa, qa) - kl(pa, ra) - kl(ra, qa) + cross

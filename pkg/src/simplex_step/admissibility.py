"""Closed-form admissible step sizes and the entropy backoff.

The cross-entropy endpoint is ``2 mu / L^2 = 2 min(p)^2 / max(p)``; the
entropy barrier supplies a multiplicative retreat ``1 / (1 + alpha(B))``
from whichever endpoint the loss geometry provides. For the normalized MSE
compensation path that endpoint is 1.
"""

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .config import Config
from .energy import curvature_constants, mse_energy
from .errors import NegativeStep, OutOfRange
from .simplex import Belief, Target, check_same_dim, entropy, make_belief


@dataclass(frozen=True)
class BarrierConfig:
    """
    Domain restriction for the logarithmic barrier.

    Invariants:
    - 0 < b_max < 1 (normalized entropy is clamped to b_max before the log)
    - eta_floor >= 0 (smallest step ce_step will return)
    """

    b_max: float = field(default_factory=lambda: Config.B_MAX)
    eta_floor: float = field(default_factory=lambda: Config.ETA_FLOOR)

    def __post_init__(self) -> None:
        if not 0 < self.b_max < 1:
            raise OutOfRange(f"b_max must be in (0, 1), got {self.b_max}")
        if not (self.eta_floor >= 0 and math.isfinite(self.eta_floor)):
            raise OutOfRange(f"eta_floor must be finite and >= 0, got {self.eta_floor}")


DEFAULT_BARRIER = BarrierConfig()


class Admissibility(NamedTuple):
    """Result of is_admissible: open-interval flag and the gap eta(2mu - eta L^2)."""

    flag: bool
    gap: float


def normalized_entropy(p: Belief) -> float:
    """
    B(p) = H(p) / log C, in (0, 1].

    Clipped to 1 so rounding at the uniform belief never leaves the
    barrier's domain.
    """
    return min(entropy(p) / math.log(p.dim), 1.0)


def _check_b(b: float) -> None:
    if not 0.0 <= b <= 1.0:
        raise OutOfRange(f"normalized entropy B must be in [0, 1], got {b!r}")


def barrier(b: float, cfg: BarrierConfig = DEFAULT_BARRIER) -> float:
    """
    Logarithmic barrier alpha(B) = -log(1 - min(B, b_max)).

    Raises:
        OutOfRange: B outside [0, 1]
    """
    _check_b(b)
    return -math.log1p(-min(b, cfg.b_max))


def backoff(b: float, cfg: BarrierConfig = DEFAULT_BARRIER) -> float:
    """Entropy backoff 1 / (1 + alpha(B)), in (0, 1]."""
    return 1.0 / (1.0 + barrier(b, cfg))


def ce_step_bound(p: Belief) -> float:
    """Closed-form cross-entropy endpoint 2 min(p)^2 / max(p)."""
    lo = float(p.probs.min())
    return 2.0 * lo * lo / float(p.probs.max())


def ce_step_bound_from_curvature(p: Belief) -> float:
    """The same endpoint computed as 2 mu / L^2 from curvature_constants."""
    pair = curvature_constants(p)
    return 2.0 * pair.mu / (pair.ell * pair.ell)


def ce_step(p: Belief, cfg: BarrierConfig = DEFAULT_BARRIER) -> float:
    """
    Entropy-aware cross-entropy step: bound(p) * backoff(B(p)).

    Floored at cfg.eta_floor but never above the bound itself.
    """
    bound = ce_step_bound(p)
    step = bound * backoff(normalized_entropy(p), cfg)
    return min(max(step, cfg.eta_floor), bound)


def mse_step(b: float, cfg: BarrierConfig = DEFAULT_BARRIER) -> float:
    """MSE step: the backoff itself, since the normalized MSE endpoint is 1."""
    return backoff(b, cfg)


def mse_step_for(p: Belief, cfg: BarrierConfig = DEFAULT_BARRIER) -> float:
    """mse_step with B computed from a Belief."""
    return mse_step(normalized_entropy(p), cfg)


def mse_compensate(p: Belief, y: Target, eta: float) -> Belief:
    """
    Point (1 - eta) p + eta y on the compensation path from p to y.

    Raises:
        OutOfRange: eta outside [0, 1]
        DimensionMismatch: p and y differ in size
    """
    if not 0.0 <= eta <= 1.0:
        raise OutOfRange(f"compensation step must be in [0, 1], got {eta!r}")
    check_same_dim(p, y)
    if eta == 0.0:
        return p
    if eta == 1.0:
        return make_belief(y.probs)
    return make_belief((1.0 - eta) * p.probs + eta * y.probs)


def mse_residual_after_ads(
    b: float,
    p: Belief,
    y: Target,
    cfg: BarrierConfig = DEFAULT_BARRIER,
) -> float:
    """Closed-form MSE left after the entropy-backed step: (alpha/(1+alpha))^2 ||p - y||^2."""
    alpha = barrier(b, cfg)
    shrink = alpha / (1.0 + alpha)
    return shrink * shrink * mse_energy(p, y)


def is_admissible(eta: float, p: Belief) -> Admissibility:
    """
    Whether eta lies in the open interval (0, 2 mu / L^2).

    The gap eta (2 mu - eta L^2) is positive exactly on that interval; the
    flag excludes the endpoint with a relative margin so that rounding at
    eta == ce_step_bound(p) never reports it as admissible.

    Raises:
        NegativeStep: eta < 0
    """
    if eta < 0 or np.isnan(eta):
        raise NegativeStep(f"step size must be >= 0, got {eta!r}")
    pair = curvature_constants(p)
    gap = eta * (2.0 * pair.mu - eta * pair.ell * pair.ell)
    bound = ce_step_bound(p)
    flag = 0.0 < eta < bound * (1.0 - Config.ADMISSIBLE_RELATIVE_MARGIN)
    return Admissibility(flag=bool(flag), gap=float(gap))

"""Belief update maps, contraction measurement and fixed-point iteration.

Two step maps move a belief toward a target under the cross-entropy energy:

- ``projected``: Euclidean projected gradient step, the map the contraction
  argument is about;
- ``mirror``: entropic mirror descent (multiplicative weights), the map the
  distribution-shift experiment uses.

Contraction is asserted only for the projected map; for the mirror map the
ratio is measured and reported.
"""

import math
from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum
from typing import Protocol

import numpy as np
from loguru import logger

from .admissibility import is_admissible
from .config import Config
from .divergence import kl
from .energy import ce_gradient, curvature_constants
from .errors import (
    EmptyInput,
    IdenticalInputs,
    IndexOutOfRange,
    NegativeStep,
    NumericOverflow,
    OutOfRange,
)
from .simplex import Belief, Target, check_same_dim, make_belief, project_simplex


class StepMap(str, Enum):
    """Which update map to apply."""

    PROJECTED = "projected"
    MIRROR = "mirror"


class StepRule(Protocol):
    """Anything that chooses a step size from the current belief."""

    def effective_step(self, p: Belief) -> float: ...


@dataclass(frozen=True)
class ContractionConfig:
    """
    Constants for the local contraction rate k(eta) = 1 - eta(2mu - eta L^2)/C.

    c_norm is the constant C of the local KL / Euclidean equivalence;
    pair_radius bounds the separation of sampled pairs.
    """

    c_norm: float
    pair_radius: float = Config.PAIR_RADIUS

    def __post_init__(self) -> None:
        for name in ("c_norm", "pair_radius"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise OutOfRange(f"{name} must be finite and > 0, got {value!r}")

    @classmethod
    def for_anchor(cls, q: Belief, pair_radius: float = Config.PAIR_RADIUS) -> "ContractionConfig":
        """Default constant 1 / min_i q_i at the anchor."""
        return cls(c_norm=float(1.0 / q.probs.min()), pair_radius=pair_radius)


@dataclass(frozen=True)
class Trajectory:
    """
    Iterates p_0..p_N of a step map and the N effective steps between them.

    Invariants:
    - len(points) == len(steps) + 1
    """

    points: tuple[Belief, ...]
    steps: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.points) != len(self.steps) + 1:
            raise OutOfRange(
                f"trajectory needs one more point than steps, got {len(self.points)} points "
                f"and {len(self.steps)} steps"
            )

    @property
    def final(self) -> Belief:
        return self.points[-1]

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class RateEnvelopeReport:
    """Outcome of checking kl(p_t, q) against the product of contraction factors."""

    holds: bool
    c_norm: float
    worst_slack: float  # min over t of envelope_t - kl_t; negative when violated
    first_violation: int | None


def _check_step(p: Belief, q: Belief, eta: float) -> None:
    check_same_dim(p, q)
    if eta < 0 or math.isnan(eta):
        raise NegativeStep(f"step size must be >= 0, got {eta!r}")


def projected_gradient_step(p: Belief, q: Target, eta: float) -> Belief:
    """
    F_eta(p) = Pi(p - eta * grad E(p)) with E the cross-entropy to q.

    Raises:
        DimensionMismatch: p and q differ in size
        NegativeStep: eta < 0
    """
    _check_step(p, q, eta)
    if eta == 0:
        return p
    return project_simplex(p.probs - eta * ce_gradient(p, q))


def mirror_descent_step(p: Belief, q: Target, eta: float) -> Belief:
    """
    Multiplicative-weights update p_i <- p_i exp(-eta grad E(p)_i), normalized.

    Computed in the log domain and shifted by the maximum before
    exponentiating. Coordinates whose shifted exponent falls below
    -EXPONENT_SPREAD_LIMIT underflow to zero and are restored to the
    interior floor by make_belief.

    Raises:
        DimensionMismatch: p and q differ in size
        NegativeStep: eta < 0
        NumericOverflow: an exponent argument is not finite
    """
    _check_step(p, q, eta)
    if eta == 0:
        return p
    args = np.log(p.probs) - eta * ce_gradient(p, q)
    if not np.all(np.isfinite(args)):
        raise NumericOverflow(f"mirror step exponent is not finite for eta={eta!r}: {args.tolist()}")
    shifted = args - args.max()
    weights = np.where(shifted < -Config.EXPONENT_SPREAD_LIMIT, 0.0, np.exp(shifted))
    return make_belief(weights)


def apply_step(step_map: StepMap, p: Belief, q: Target, eta: float) -> Belief:
    """Dispatch to the chosen step map."""
    if StepMap(step_map) is StepMap.PROJECTED:
        return projected_gradient_step(p, q, eta)
    return mirror_descent_step(p, q, eta)


def contraction_ratio(
    p1: Belief,
    p2: Belief,
    q: Target,
    eta: float,
    step_map: StepMap = StepMap.PROJECTED,
) -> float:
    """
    D(F(p1) || F(p2)) / D(p1 || p2) for one application of the step map.

    Raises:
        IdenticalInputs: D(p1 || p2) is zero
        OutOfRange: eta <= 0
    """
    if not eta > 0:
        raise OutOfRange(f"contraction ratio needs eta > 0, got {eta!r}")
    before = kl(p1, p2)
    if before <= 0.0:
        raise IdenticalInputs("contraction ratio is undefined for identical points")
    after = kl(apply_step(step_map, p1, q, eta), apply_step(step_map, p2, q, eta))
    return after / before


def contraction_factor(p: Belief, eta: float, cfg: ContractionConfig) -> float:
    """
    Local rate k(eta) = 1 - eta (2 mu - eta L^2) / C at p.

    k < 1 exactly when eta is admissible at p.

    Raises:
        OutOfRange: eta <= 0
    """
    if not eta > 0:
        raise OutOfRange(f"contraction factor needs eta > 0, got {eta!r}")
    pair = curvature_constants(p)
    gap = eta * (2.0 * pair.mu - eta * pair.ell * pair.ell)
    return 1.0 - gap / cfg.c_norm


def empirical_anchor(labels: Sequence[int], c: int) -> Belief:
    """
    Empirical label distribution over c classes, interior-clamped.

    Raises:
        EmptyInput: no labels
        IndexOutOfRange: a label outside [0, c)
    """
    if len(labels) == 0:
        raise EmptyInput("empirical anchor needs at least one label")
    idx = np.asarray(labels)
    if not np.issubdtype(idx.dtype, np.integer):
        raise IndexOutOfRange(f"labels must be integers, got dtype {idx.dtype}")
    if idx.min() < 0 or idx.max() >= c:
        raise IndexOutOfRange(f"labels must lie in [0, {c}), got min={idx.min()} max={idx.max()}")
    return make_belief(np.bincount(idx, minlength=c).astype(np.float64))


def iterate(
    p0: Belief,
    q: Target,
    rule: StepRule,
    step_map: StepMap = StepMap.MIRROR,
    max_steps: int = 1000,
    tol: float = 0.0,
) -> Trajectory:
    """
    Apply the step map until kl(p_t, q) < tol or max_steps steps are taken.

    The step size is re-evaluated by ``rule`` at every iterate.

    Raises:
        OutOfRange: max_steps < 1 or tol < 0
    """
    if max_steps < 1:
        raise OutOfRange(f"max_steps must be >= 1, got {max_steps}")
    if tol < 0:
        raise OutOfRange(f"tol must be >= 0, got {tol}")
    check_same_dim(p0, q)

    points = [p0]
    steps: list[float] = []
    p = p0
    for _ in range(max_steps):
        if kl(p, q) < tol:
            break
        eta = rule.effective_step(p)
        p = apply_step(step_map, p, q, eta)
        points.append(p)
        steps.append(eta)

    logger.debug(f"iterate: {len(steps)} {StepMap(step_map).value} steps, final kl={kl(p, q):.3e}")
    return Trajectory(points=tuple(points), steps=tuple(steps))


def rate_envelope(
    trajectory: Trajectory,
    q: Target,
    cfg: ContractionConfig | None = None,
) -> RateEnvelopeReport:
    """
    Check kl(p_t, q) <= (prod_{s<t} k_s) kl(p_0, q) (1 + 1e-6) along a trajectory.

    The default constant is 1 / min over q and all iterates of the smallest
    coordinate. A violation is logged and reported, never raised.
    """
    if cfg is None:
        floor = min(float(q.probs.min()), min(float(p.probs.min()) for p in trajectory.points))
        cfg = ContractionConfig(c_norm=1.0 / floor)

    start = kl(trajectory.points[0], q)
    envelope = start
    worst = math.inf
    first: int | None = None
    for t, (p, eta) in enumerate(zip(trajectory.points[:-1], trajectory.steps), start=1):
        k = contraction_factor(p, eta, cfg) if eta > 0 else 1.0
        envelope *= k
        slack = envelope * (1.0 + 1e-6) - kl(trajectory.points[t], q)
        worst = min(worst, slack)
        if slack < 0 and first is None:
            first = t

    holds = first is None
    if not holds:
        logger.warning(
            f"Rate envelope violated at step {first} with c_norm={cfg.c_norm:.6g} "
            f"(worst slack {worst:.3e})"
        )
    return RateEnvelopeReport(
        holds=holds,
        c_norm=cfg.c_norm,
        worst_slack=worst if math.isfinite(worst) else 0.0,
        first_violation=first,
    )


def admissible_steps(trajectory: Trajectory) -> list[bool]:
    """is_admissible flag of every step taken along a trajectory."""
    return [is_admissible(eta, p).flag for p, eta in zip(trajectory.points[:-1], trajectory.steps)]

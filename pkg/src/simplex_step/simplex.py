"""Interior points of the probability simplex and the two projections onto it.

A ``Belief`` is a strictly interior distribution over C >= 2 classes. Every
constructor in this module returns points whose coordinates are at least
``Config.EPS_INTERIOR`` and sum to one; logs and reciprocals of beliefs are
therefore always finite.
"""

from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any, cast

import numpy as np
from loguru import logger
from scipy import special

from .config import Config
from .errors import (
    DimensionMismatch,
    EmptyInput,
    NonFiniteInput,
    NonPositiveSum,
    OutOfRange,
)

ArrayLike = Sequence[float] | np.ndarray


def _readonly(values: Any) -> np.ndarray:
    arr = np.array(values, dtype=np.float64)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Belief:
    """
    Strictly interior point of the probability simplex.

    Invariants:
    - at least 2 coordinates
    - every coordinate in [EPS_INTERIOR, 1]
    - coordinates sum to 1 within SUM_TOLERANCE

    Use ``make_belief`` to build one from raw weights; the constructor
    only validates.
    """

    probs: np.ndarray

    def __post_init__(self) -> None:
        probs = _readonly(self.probs)
        if probs.ndim != 1 or probs.size < 2:
            raise EmptyInput(f"{type(self).__name__} needs at least 2 coordinates, got shape {probs.shape}")
        if not np.all(np.isfinite(probs)):
            raise NonFiniteInput(f"{type(self).__name__} coordinates must be finite, got {probs.tolist()}")
        if probs.min() < Config.EPS_INTERIOR or probs.max() > 1.0:
            raise OutOfRange(
                f"{type(self).__name__} coordinates must lie in [{Config.EPS_INTERIOR}, 1], "
                f"got min={probs.min()!r} max={probs.max()!r}"
            )
        total = float(probs.sum())
        if abs(total - 1.0) > Config.SUM_TOLERANCE:
            raise NonPositiveSum(f"{type(self).__name__} must sum to 1, got {total!r}")
        object.__setattr__(self, "probs", probs)

    @property
    def dim(self) -> int:
        """Number of classes C."""
        return int(self.probs.size)

    def __len__(self) -> int:
        return self.dim

    def __array__(self, dtype: Any = None, copy: Any = None) -> np.ndarray:
        return np.array(self.probs, dtype=dtype)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Belief):
            return NotImplemented
        return np.array_equal(self.probs, other.probs)

    __hash__ = None  # type: ignore[assignment]

    def tolist(self) -> list[float]:
        return [float(x) for x in self.probs]

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.tolist()})"


class Target(Belief):
    """Reference distribution q (cross-entropy) or y (MSE); same invariants as Belief."""


@dataclass(frozen=True, eq=False)
class Logits:
    """Unconstrained real scores; softmax maps them onto the simplex."""

    values: np.ndarray

    def __post_init__(self) -> None:
        values = _readonly(self.values)
        if values.ndim != 1 or values.size < 2:
            raise EmptyInput(f"Logits need at least 2 entries, got shape {values.shape}")
        if not np.all(np.isfinite(values)):
            raise NonFiniteInput(f"Logits must be finite, got {values.tolist()}")
        object.__setattr__(self, "values", values)


def as_probs(p: Belief | ArrayLike) -> np.ndarray:
    """Return the coordinate array of a Belief, or the input as a float array."""
    if isinstance(p, Belief):
        return p.probs
    return np.asarray(p, dtype=np.float64)


def _clamp_interior(weights: np.ndarray, eps: float) -> np.ndarray:
    """
    Normalize nonnegative weights and lift coordinates below eps to eps.

    Clamped coordinates are pinned at eps; the remaining mass is shared
    proportionally among the free coordinates. Repeats until no free
    coordinate falls below eps, which takes at most C rounds.
    """
    w = weights / weights.sum()
    fixed = np.zeros(w.size, dtype=bool)
    for _ in range(w.size):
        low = (w < eps) & ~fixed
        if not low.any():
            break
        fixed |= low
        w[fixed] = eps
        free = ~fixed
        w[free] *= (1.0 - eps * fixed.sum()) / w[free].sum()
    return w


def _to_belief(weights: np.ndarray, cls: type[Belief] = Belief) -> Belief:
    w = _clamp_interior(np.array(weights, dtype=np.float64), Config.EPS_INTERIOR)
    return cls(w)


def _check_raw(raw: ArrayLike, what: str) -> np.ndarray:
    arr = np.asarray(raw, dtype=np.float64)
    if arr.ndim != 1 or arr.size < 2:
        raise EmptyInput(f"{what} needs at least 2 entries, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteInput(f"{what} entries must be finite, got {arr.tolist()}")
    return arr


def make_belief(raw: ArrayLike, cls: type[Belief] = Belief) -> Belief:
    """
    Normalize nonnegative weights into a strictly interior Belief.

    Args:
        raw: At least 2 finite, nonnegative weights with positive sum
        cls: Belief or Target

    Returns:
        Weights divided by their sum, clamped to EPS_INTERIOR and renormalized

    Raises:
        EmptyInput: fewer than 2 entries
        NonFiniteInput: NaN or infinite entry
        OutOfRange: negative entry
        NonPositiveSum: weights sum to zero
    """
    arr = _check_raw(raw, cls.__name__)
    if np.any(arr < 0):
        raise OutOfRange(f"{cls.__name__} weights must be >= 0, got {arr.tolist()}")
    total = float(arr.sum())
    if total <= 0:
        raise NonPositiveSum(f"{cls.__name__} weights must have positive sum, got {total!r}")
    if arr.min() / total < Config.EPS_INTERIOR:
        logger.debug(f"Clamping boundary point {arr.tolist()} into the simplex interior")
    return _to_belief(arr, cls)


def make_target(raw: ArrayLike) -> Target:
    """``make_belief`` producing a Target."""
    return cast(Target, make_belief(raw, Target))


def as_target(p: Belief) -> Target:
    """View a Belief as a Target with identical coordinates."""
    if isinstance(p, Target):
        return p
    return Target(p.probs)


def uniform(c: int) -> Belief:
    """Uniform belief over c classes."""
    if c < 2:
        raise EmptyInput(f"uniform belief needs c >= 2, got {c}")
    return make_belief(np.ones(c))


def euclidean_projection(v: ArrayLike) -> np.ndarray:
    """
    Exact Euclidean projection onto the closed simplex (no interior clamp).

    Sort-descending threshold method: find the largest k with
    u_k > (sum_{i<=k} u_i - 1) / k and subtract that threshold.

    The input is shifted so its maximum is 0. The projection is invariant
    under adding a constant to every entry, and after the shift the k = 1
    test reads 0 > -1 exactly, however large the input.
    """
    raw = _check_raw(v, "projection input")
    x = raw - raw.max()
    u = np.sort(x)[::-1]
    css = np.cumsum(u)
    k = np.arange(1, x.size + 1)
    rho = int(np.nonzero(u - (css - 1.0) / k > 0)[0][-1])
    tau = (css[rho] - 1.0) / (rho + 1)
    return np.maximum(x - tau, 0.0)


def project_simplex(v: ArrayLike) -> Belief:
    """
    Euclidean-nearest simplex point, then the interior clamp of make_belief.

    Raises:
        EmptyInput: fewer than 2 entries
        NonFiniteInput: NaN or infinite entry
    """
    return _to_belief(euclidean_projection(v))


def softmax(z: Logits | ArrayLike) -> Belief:
    """
    Softmax of logits as an interior Belief.

    Invariant under adding a constant to all logits; extreme logits whose
    probabilities underflow are clamped like any boundary point.
    """
    logits = z if isinstance(z, Logits) else Logits(np.asarray(z, dtype=np.float64))
    return _to_belief(special.softmax(logits.values))


def entropy(p: Belief) -> float:
    """Shannon entropy in nats, H(p) = -sum p_i log p_i."""
    return float(np.sum(special.entr(as_probs(p))))


def check_same_dim(*points: Belief | ArrayLike) -> int:
    """Return the shared dimension of the arguments or raise DimensionMismatch."""
    dims = {as_probs(p).size for p in points}
    if len(dims) != 1:
        raise DimensionMismatch(f"dimension mismatch: got sizes {sorted(dims)}")
    return dims.pop()


__all__ = [
    "ArrayLike",
    "Belief",
    "Logits",
    "Target",
    "as_probs",
    "as_target",
    "check_same_dim",
    "entropy",
    "euclidean_projection",
    "make_belief",
    "make_target",
    "project_simplex",
    "softmax",
    "uniform",
]

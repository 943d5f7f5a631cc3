"""Step-size rules evaluated at the current belief."""

from ..admissibility import backoff, ce_step_bound, normalized_entropy
from ..simplex import Belief
from .models import AdsAware, BoundClipped, EntropyOnly, FixedStep, StrategySpec


def effective_step(spec: StrategySpec, p: Belief) -> float:
    """
    Step size the strategy takes at p.

    - FixedStep: eta
    - BoundClipped: min(eta_base, ce_step_bound(p))
    - AdsAware: min(eta_base, ce_step_bound(p)) * backoff(B(p))
    - EntropyOnly: eta_base * backoff(B(p))
    """
    kind = spec.kind
    if isinstance(kind, FixedStep):
        return kind.eta
    if isinstance(kind, BoundClipped):
        return min(kind.eta_base, ce_step_bound(p))
    if isinstance(kind, AdsAware):
        return min(kind.eta_base, ce_step_bound(p)) * backoff(normalized_entropy(p), spec.barrier_cfg)
    if isinstance(kind, EntropyOnly):
        return kind.eta_base * backoff(normalized_entropy(p), spec.barrier_cfg)
    raise TypeError(f"unknown strategy kind: {kind!r}")

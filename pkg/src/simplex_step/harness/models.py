"""Data models for the distribution-shift experiment."""

import math
from dataclasses import dataclass, field

from ..admissibility import DEFAULT_BARRIER, BarrierConfig
from ..errors import ConfigError
from ..simplex import Belief, Target, make_target, uniform


@dataclass(frozen=True)
class FixedStep:
    """Constant step size regardless of the belief."""

    eta: float


@dataclass(frozen=True)
class BoundClipped:
    """min(eta_base, ce_step_bound(p)); the curvature factor without entropy backoff."""

    eta_base: float


@dataclass(frozen=True)
class AdsAware:
    """min(eta_base, ce_step_bound(p)) * backoff(B(p))."""

    eta_base: float


@dataclass(frozen=True)
class EntropyOnly:
    """eta_base * backoff(B(p)); the entropy factor without the curvature endpoint."""

    eta_base: float


StepKind = FixedStep | BoundClipped | AdsAware | EntropyOnly

KIND_NAMES: dict[type, str] = {
    FixedStep: "fixed",
    BoundClipped: "bound_clipped",
    AdsAware: "ads_aware",
    EntropyOnly: "entropy_only",
}


def _kind_parameter(kind: StepKind) -> float:
    return kind.eta if isinstance(kind, FixedStep) else kind.eta_base


@dataclass(frozen=True)
class StrategySpec:
    """
    A named step-size rule governing one trajectory.

    Invariants:
    - name is non-empty
    - the step parameter is finite and > 0
    """

    name: str
    kind: StepKind
    barrier_cfg: BarrierConfig = DEFAULT_BARRIER

    def __post_init__(self) -> None:
        if not self.name or not self.name.strip():
            raise ConfigError("strategy name must not be empty")
        value = _kind_parameter(self.kind)
        if not (math.isfinite(value) and value > 0):
            raise ConfigError(f"strategy {self.name!r}: step parameter must be > 0, got {value!r}")

    @property
    def parameter(self) -> float:
        return _kind_parameter(self.kind)

    @property
    def kind_name(self) -> str:
        return KIND_NAMES[type(self.kind)]

    def effective_step(self, p: Belief) -> float:
        """Step size this strategy takes at p."""
        from .strategies import effective_step

        return effective_step(self, p)


def default_strategies() -> tuple[StrategySpec, ...]:
    """High fixed step (over the bound), low fixed step, and the ADS-aware rule."""
    return (
        StrategySpec(name="high", kind=FixedStep(eta=2.0)),
        StrategySpec(name="low", kind=FixedStep(eta=0.1)),
        StrategySpec(name="ads", kind=AdsAware(eta_base=1.0)),
    )


@dataclass(frozen=True)
class ExperimentConfig:
    """
    Distribution-shift protocol: target q_phase1 for t < shift_step, q_phase2 after.

    Invariants:
    - shift_step < total_steps
    - p0 and both targets have c_classes coordinates
    - strategy names are unique
    """

    c_classes: int = 3
    p0: Belief | None = None
    q_phase1: Target = field(default_factory=lambda: make_target([0.7, 0.2, 0.1]))
    q_phase2: Target = field(default_factory=lambda: make_target([0.1, 0.2, 0.7]))
    shift_step: int = 200
    total_steps: int = 600
    strategies: tuple[StrategySpec, ...] = field(default_factory=default_strategies)
    seed: int = 0  # unused by the deterministic protocol

    def __post_init__(self) -> None:
        if self.c_classes < 2:
            raise ConfigError(f"c_classes must be >= 2, got {self.c_classes}")
        if self.p0 is None:
            object.__setattr__(self, "p0", uniform(self.c_classes))
        for label, point in (("p0", self.p0), ("q_phase1", self.q_phase1), ("q_phase2", self.q_phase2)):
            assert point is not None
            if point.dim != self.c_classes:
                raise ConfigError(f"{label} has {point.dim} classes, expected {self.c_classes}")
        if self.shift_step < 0:
            raise ConfigError(f"shift_step must be >= 0, got {self.shift_step}")
        if self.shift_step >= self.total_steps:
            raise ConfigError(
                f"shift_step must be < total_steps, got {self.shift_step} >= {self.total_steps}"
            )
        if not self.strategies:
            raise ConfigError("at least one strategy is required")
        names = [s.name for s in self.strategies]
        if len(set(names)) != len(names):
            raise ConfigError(f"strategy names must be unique, got {names}")

    @property
    def start(self) -> Belief:
        assert self.p0 is not None
        return self.p0

    def active_target(self, t: int) -> Target:
        """Target in force at step t."""
        return self.q_phase1 if t < self.shift_step else self.q_phase2


@dataclass(frozen=True)
class MetricsRow:
    """
    One time step of one strategy.

    Invariants:
    - ratio * eta_max == eta_eff (to rounding)
    - kl_to_target >= 0
    """

    t: int
    probs: tuple[float, ...]
    kl_to_target: float
    b_entropy: float
    eta_eff: float
    eta_max: float
    ratio: float
    admissible: bool = False


@dataclass(frozen=True)
class RunSummary:
    """Digest of one strategy's rows against a reference target."""

    final_kl: float
    converged_step: int | None
    collapsed: bool
    max_ratio: float
    admissible_fraction: float
    rows: int

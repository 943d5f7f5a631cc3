"""
Experiment configuration documents.

A document mirrors ExperimentConfig; every field is optional and falls back
to the published experiment defaults. JSON and YAML are both accepted,
chosen by file suffix.

Example (YAML):

    c_classes: 3
    q_phase1: [0.7, 0.2, 0.1]
    q_phase2: [0.1, 0.2, 0.7]
    shift_step: 200
    total_steps: 600
    strategies:
      - {name: high, kind: fixed, eta: 2.0}
      - {name: low, kind: fixed, eta: 0.1}
      - {name: ads, kind: ads_aware, eta: 1.0}
"""

import json
from pathlib import Path
from typing import Any, Literal

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from ..admissibility import BarrierConfig
from ..config import Config
from ..errors import ConfigError, SimplexStepError
from ..simplex import make_belief, make_target
from .models import (
    AdsAware,
    BoundClipped,
    EntropyOnly,
    ExperimentConfig,
    FixedStep,
    StepKind,
    StrategySpec,
)

KindName = Literal["fixed", "bound_clipped", "ads_aware", "entropy_only"]

_KIND_BUILDERS = {
    "fixed": FixedStep,
    "bound_clipped": BoundClipped,
    "ads_aware": AdsAware,
    "entropy_only": EntropyOnly,
}


class StrategyDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str
    kind: KindName
    eta: float = Field(gt=0)
    b_max: float = Field(default=Config.B_MAX, gt=0, lt=1)

    def to_spec(self) -> StrategySpec:
        step: StepKind = _KIND_BUILDERS[self.kind](self.eta)
        return StrategySpec(name=self.name, kind=step, barrier_cfg=BarrierConfig(b_max=self.b_max))


class ExperimentDocument(BaseModel):
    """Serializable form of ExperimentConfig; None fields take the defaults."""

    model_config = ConfigDict(extra="forbid")

    c_classes: int = Field(default=3, ge=2)
    p0: list[float] | None = None
    q_phase1: list[float] = Field(default_factory=lambda: [0.7, 0.2, 0.1])
    q_phase2: list[float] = Field(default_factory=lambda: [0.1, 0.2, 0.7])
    shift_step: int = Field(default=200, ge=0)
    total_steps: int = Field(default=600, ge=1)
    strategies: list[StrategyDocument] | None = None
    seed: int = 0

    def to_config(self) -> ExperimentConfig:
        """
        Build the validated ExperimentConfig.

        Raises:
            ConfigError: a probability vector or strategy violates its invariants
        """
        try:
            kwargs: dict[str, Any] = {
                "c_classes": self.c_classes,
                "p0": make_belief(self.p0) if self.p0 is not None else None,
                "q_phase1": make_target(self.q_phase1),
                "q_phase2": make_target(self.q_phase2),
                "shift_step": self.shift_step,
                "total_steps": self.total_steps,
                "seed": self.seed,
            }
            if self.strategies is not None:
                kwargs["strategies"] = tuple(s.to_spec() for s in self.strategies)
            return ExperimentConfig(**kwargs)
        except ConfigError:
            raise
        except SimplexStepError as e:
            raise ConfigError(f"invalid experiment document: {e}") from e


def parse_experiment_document(data: Any) -> ExperimentConfig:
    """
    Validate an already-decoded document.

    Raises:
        ConfigError: the document does not match the schema or its invariants
    """
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError(f"experiment document must be a mapping, got {type(data).__name__}")
    try:
        doc = ExperimentDocument.model_validate(data)
    except ValidationError as e:
        raise ConfigError(f"invalid experiment document: {e}") from e
    return doc.to_config()


def load_experiment_config(path: str | Path) -> ExperimentConfig:
    """
    Load an experiment document from a JSON or YAML file.

    Raises:
        ConfigError: the file is missing, unreadable, malformed or invalid
    """
    doc_path = Path(path)
    if not doc_path.exists():
        raise ConfigError(f"experiment config not found: {doc_path}")
    try:
        text = doc_path.read_text()
    except OSError as e:
        raise ConfigError(f"cannot read experiment config {doc_path}: {e}") from e

    try:
        if doc_path.suffix.lower() in (".yaml", ".yml"):
            data = yaml.safe_load(text)
        else:
            data = json.loads(text)
    except (yaml.YAMLError, json.JSONDecodeError) as e:
        raise ConfigError(f"malformed experiment config {doc_path}: {e}") from e

    return parse_experiment_document(data)

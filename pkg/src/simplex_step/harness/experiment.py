"""Distribution-shift tracking experiment.

Each strategy drives a belief with the mirror-descent step toward the
target active at that step. Row t records p_t and the step used to move
from p_t to p_{t+1}.
"""

from concurrent.futures import ThreadPoolExecutor

import numpy as np
from loguru import logger

from ..admissibility import ce_step_bound, is_admissible, normalized_entropy
from ..config import Config
from ..divergence import kl
from ..dynamics import mirror_descent_step
from ..errors import EmptyInput, SimplexStepError
from ..simplex import Target
from .models import ExperimentConfig, MetricsRow, RunSummary, StrategySpec


class StrategyFailed(RuntimeError):
    """A strategy's trajectory hit a numeric failure; names the strategy."""

    def __init__(self, strategy: str, cause: BaseException):
        super().__init__(f"strategy {strategy!r} failed: {cause}")
        self.strategy = strategy
        self.cause = cause


def run_strategy(spec: StrategySpec, cfg: ExperimentConfig) -> list[MetricsRow]:
    """
    Run one strategy through the full shift protocol.

    Raises:
        StrategyFailed: a dynamics error or floating-point error occurred
    """
    logger.debug(f"Running strategy {spec.name} ({spec.kind_name}, {spec.parameter})")
    rows: list[MetricsRow] = []
    p = cfg.start
    try:
        with np.errstate(over="raise", invalid="raise", divide="raise"):
            for t in range(cfg.total_steps):
                q = cfg.active_target(t)
                eta_eff = spec.effective_step(p)
                eta_max = ce_step_bound(p)
                rows.append(
                    MetricsRow(
                        t=t,
                        probs=tuple(p.tolist()),
                        kl_to_target=kl(p, q),
                        b_entropy=normalized_entropy(p),
                        eta_eff=eta_eff,
                        eta_max=eta_max,
                        ratio=eta_eff / eta_max,
                        admissible=is_admissible(eta_eff, p).flag,
                    )
                )
                p = mirror_descent_step(p, q, eta_eff)
    except (SimplexStepError, FloatingPointError) as e:
        logger.error(f"Strategy {spec.name} failed at step {len(rows)}: {e}")
        raise StrategyFailed(spec.name, e) from e

    logger.debug(f"Strategy {spec.name} done: final kl={rows[-1].kl_to_target:.3e}")
    return rows


def run_experiment(
    cfg: ExperimentConfig,
    max_workers: int | None = None,
) -> dict[str, list[MetricsRow]]:
    """
    Run every strategy of the experiment.

    Strategies share no state; with max_workers > 1 they run on a thread
    pool. The result is keyed by strategy name in configuration order, so it
    does not depend on execution order.

    Raises:
        StrategyFailed: the first strategy (in configuration order) that failed
    """
    workers = Config.MAX_WORKERS if max_workers is None else max_workers
    if workers > 1 and len(cfg.strategies) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(run_strategy, spec, cfg) for spec in cfg.strategies]
            results = [f.result() for f in futures]
    else:
        results = [run_strategy(spec, cfg) for spec in cfg.strategies]
    return {spec.name: rows for spec, rows in zip(cfg.strategies, results)}


def summarize(rows: list[MetricsRow], target: Target) -> RunSummary:
    """
    Digest a strategy's rows against a reference target.

    Reports the final KL, the first step whose KL falls below
    KL_CONVERGENCE_TOL (or None), whether any coordinate ever dropped below
    COLLAPSE_THRESHOLD, the largest eta_eff / eta_max ratio, and the
    fraction of admissible steps.

    Raises:
        EmptyInput: rows is empty
    """
    if not rows:
        raise EmptyInput("cannot summarize an empty run")
    kls = [kl(np.asarray(row.probs), target) for row in rows]
    converged = next(
        (row.t for row, value in zip(rows, kls) if value < Config.KL_CONVERGENCE_TOL),
        None,
    )
    return RunSummary(
        final_kl=kls[-1],
        converged_step=converged,
        collapsed=any(min(row.probs) < Config.COLLAPSE_THRESHOLD for row in rows),
        max_ratio=max(row.ratio for row in rows),
        admissible_fraction=sum(row.admissible for row in rows) / len(rows),
        rows=len(rows),
    )

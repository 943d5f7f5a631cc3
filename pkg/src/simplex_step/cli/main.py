"""
simplex-step command line.

Usage:
    simplex-step bound --p 0.9,0.05,0.05
    simplex-step step --p 0.2,0.3,0.5 --q 0.7,0.2,0.1 --eta 0.1 --map mirror
    simplex-step experiment [--config config/experiment.yaml] [--out results]
    simplex-step sweep --n 101 [--out sweep.csv]
    simplex-step region --nx 101 --neta 101 [--eta-top 1.0]

Exit codes: 0 success, 1 a strategy failed numerically, 2 unparseable
flags or configuration, 3 an input violates a domain invariant.
"""

import argparse
import math
import sys
from pathlib import Path

from loguru import logger

from ..admissibility import (
    BarrierConfig,
    backoff,
    barrier,
    ce_step,
    ce_step_bound,
    is_admissible,
    normalized_entropy,
)
from ..config import Config
from ..divergence import kl
from ..dynamics import StepMap, apply_step
from ..errors import ConfigError, SimplexStepError
from ..harness.document import load_experiment_config
from ..harness.experiment import StrategyFailed, run_experiment, summarize
from ..harness.models import ExperimentConfig
from ..harness.sweep import certified_region, sweep_binary_slice
from ..logging_setup import configure_logging
from ..simplex import Belief, Target, make_belief
from .tables import (
    REGION_HEADER,
    STDOUT,
    SUMMARY_HEADER,
    SWEEP_HEADER,
    OutputFormat,
    TableFormat,
    region_rows,
    summary_rows,
    sweep_rows,
    write_experiment_table,
    write_table,
)

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3


def _prob_list(text: str) -> list[float]:
    """argparse type for comma-separated reals."""
    parts = [part.strip() for part in text.split(",")]
    try:
        return [float(part) for part in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _grid_size(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if n < 3:
        raise argparse.ArgumentTypeError(f"grid needs at least 3 points, got {n}")
    return n


def _read_belief(raw: list[float], cls: type[Belief] = Belief) -> tuple[Belief, bool]:
    """Build a Belief from command-line weights; the flag is set when they did not sum to 1."""
    total = math.fsum(raw)
    normalized = abs(total - 1.0) > Config.SUM_TOLERANCE
    belief = make_belief(raw, cls)
    if normalized:
        logger.warning(f"Input {raw} sums to {total!r}; normalized to {belief.tolist()}")
    return belief, normalized


def _output(args: argparse.Namespace) -> OutputFormat:
    return OutputFormat.parse(args.format, getattr(args, "out", None))


# ============================================================================
# Commands
# ============================================================================


def cmd_bound(args: argparse.Namespace) -> int:
    """Closed-form bound, entropy, barrier and entropy-aware step at one belief."""
    cfg = BarrierConfig(b_max=args.b_max)
    p, normalized = _read_belief(args.p)
    b = normalized_entropy(p)
    header = ("eta_max", "b_entropy", "alpha", "backoff", "eta_ce", "normalized")
    row = (ce_step_bound(p), b, barrier(b, cfg), backoff(b, cfg), ce_step(p, cfg), normalized)
    write_table(header, [row], _output(args))
    return EXIT_OK


def cmd_step(args: argparse.Namespace) -> int:
    """One application of the chosen step map, with KL before and after."""
    p, p_normalized = _read_belief(args.p)
    q, q_normalized = _read_belief(args.q, Target)
    nxt = apply_step(StepMap(args.map), p, q, args.eta)
    verdict = is_admissible(args.eta, p)
    header = (
        *(f"p_{i}" for i in range(nxt.dim)),
        "kl_before",
        "kl_after",
        "admissible",
        "gap",
        "normalized",
    )
    row = (
        *nxt.tolist(),
        kl(p, q),
        kl(nxt, q),
        verdict.flag,
        verdict.gap,
        p_normalized or q_normalized,
    )
    write_table(header, [row], _output(args))
    return EXIT_OK


def cmd_experiment(args: argparse.Namespace) -> int:
    """Run every strategy; write one table per strategy plus summary."""
    cfg = load_experiment_config(args.config) if args.config else ExperimentConfig()
    out_dir = Path(args.out)
    results = run_experiment(cfg, max_workers=args.workers)

    kind = TableFormat(args.format)
    suffix = f".{kind.value}"
    for name, rows in results.items():
        write_experiment_table(rows, cfg.c_classes, OutputFormat(kind=kind, path=out_dir / f"{name}{suffix}"))

    summaries = {name: summarize(rows, cfg.q_phase2) for name, rows in results.items()}
    write_table(SUMMARY_HEADER, summary_rows(summaries), OutputFormat(kind=kind, path=out_dir / f"summary{suffix}"))

    for name, s in summaries.items():
        logger.info(
            f"{name}: final_kl={s.final_kl:.3e} converged_step={s.converged_step} "
            f"collapsed={s.collapsed} max_ratio={s.max_ratio:.3e}"
        )
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    """Binary-slice sweep of eta_max, B and eta_ce."""
    rows = sweep_binary_slice(args.n, BarrierConfig(b_max=args.b_max))
    write_table(SWEEP_HEADER, sweep_rows(rows), _output(args))
    return EXIT_OK


def cmd_region(args: argparse.Namespace) -> int:
    """Certified (x, eta) grid below the entropy-aware boundary."""
    rows = certified_region(args.nx, args.neta, BarrierConfig(b_max=args.b_max), eta_top=args.eta_top)
    write_table(REGION_HEADER, region_rows(rows), _output(args))
    return EXIT_OK


# ============================================================================
# Parser
# ============================================================================


def _add_format(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=["csv", "json"], default="csv", help="Output encoding (default: csv)")


def _add_b_max(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--b-max",
        type=float,
        default=Config.B_MAX,
        help=f"Clamp for normalized entropy before the barrier (default: {Config.B_MAX!r})",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="simplex-step",
        description="Admissible cross-entropy step sizes on the probability simplex",
    )
    parser.add_argument("--log-level", default=None, help=f"loguru level (default: {Config.LOG_LEVEL})")
    sub = parser.add_subparsers(dest="command", required=True)

    bound = sub.add_parser("bound", help="Evaluate the closed-form step bound at a belief")
    bound.add_argument("--p", type=_prob_list, required=True, help="Comma-separated probabilities")
    _add_b_max(bound)
    _add_format(bound)
    bound.set_defaults(handler=cmd_bound)

    step = sub.add_parser("step", help="Apply one update step toward a target")
    step.add_argument("--p", type=_prob_list, required=True, help="Current belief")
    step.add_argument("--q", type=_prob_list, required=True, help="Target distribution")
    step.add_argument("--eta", type=float, required=True, help="Step size (>= 0)")
    step.add_argument(
        "--map",
        choices=[m.value for m in StepMap],
        default=StepMap.PROJECTED.value,
        help="Update map (default: projected)",
    )
    _add_format(step)
    step.set_defaults(handler=cmd_step)

    experiment = sub.add_parser("experiment", help="Run the distribution-shift experiment")
    experiment.add_argument("--config", type=Path, default=None, help="JSON or YAML experiment document")
    experiment.add_argument(
        "--out",
        default=Config.DEFAULT_OUTPUT_DIR,
        help=f"Output directory (default: {Config.DEFAULT_OUTPUT_DIR})",
    )
    experiment.add_argument(
        "--workers",
        type=int,
        default=None,
        help=f"Strategies run concurrently (default: {Config.MAX_WORKERS})",
    )
    _add_format(experiment)
    experiment.set_defaults(handler=cmd_experiment)

    sweep = sub.add_parser("sweep", help="Sweep the binary slice p = (x, 1 - x)")
    sweep.add_argument("--n", type=_grid_size, default=Config.SWEEP_POINTS, help="Grid points (>= 3)")
    sweep.add_argument("--out", default=STDOUT, help="Output file (default: stdout)")
    _add_b_max(sweep)
    _add_format(sweep)
    sweep.set_defaults(handler=cmd_sweep)

    region = sub.add_parser("region", help="Certified (x, eta) region on the binary slice")
    region.add_argument("--nx", type=_grid_size, default=Config.SWEEP_POINTS, help="x grid points (>= 3)")
    region.add_argument("--neta", type=_grid_size, default=Config.SWEEP_POINTS, help="eta grid points (>= 3)")
    region.add_argument("--eta-top", type=float, default=1.0, help="Upper end of the eta grid (default: 1.0)")
    region.add_argument("--out", default=STDOUT, help="Output file (default: stdout)")
    _add_b_max(region)
    _add_format(region)
    region.set_defaults(handler=cmd_region)

    return parser


def main(argv: list[str] | None = None) -> int:
    """Entry point; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on bad flags and 0 on --help
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    try:
        configure_logging(args.log_level)
        # Fail fast on inconsistent constants
        Config.validate()
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    try:
        return args.handler(args)
    except StrategyFailed as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_RUNTIME
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SimplexStepError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())

"""Binary-slice sweeps of the admissible step, p = (x, 1 - x)."""

from typing import NamedTuple

import numpy as np

from ..admissibility import DEFAULT_BARRIER, BarrierConfig, ce_step, ce_step_bound, normalized_entropy
from ..errors import OutOfRange
from ..simplex import make_belief


class SweepRow(NamedTuple):
    x: float
    eta_max: float
    b_entropy: float
    eta_ce: float


class RegionRow(NamedTuple):
    x: float
    eta: float
    eta_ce: float
    admissible: bool


def open_grid(n_points: int) -> np.ndarray:
    """n uniformly spaced points strictly inside (0, 1): j / (n + 1), j = 1..n."""
    if n_points < 3:
        raise OutOfRange(f"sweep needs n_points >= 3, got {n_points}")
    return np.arange(1, n_points + 1, dtype=np.float64) / (n_points + 1)


def sweep_binary_slice(n_points: int, cfg: BarrierConfig = DEFAULT_BARRIER) -> list[SweepRow]:
    """
    Curvature endpoint, normalized entropy and entropy-aware step along the slice.

    Raises:
        OutOfRange: n_points < 3
    """
    rows = []
    for x in open_grid(n_points):
        p = make_belief([x, 1.0 - x])
        rows.append(
            SweepRow(
                x=float(x),
                eta_max=ce_step_bound(p),
                b_entropy=normalized_entropy(p),
                eta_ce=ce_step(p, cfg),
            )
        )
    return rows


def certified_region(
    n_x: int,
    n_eta: int,
    cfg: BarrierConfig = DEFAULT_BARRIER,
    eta_top: float = 1.0,
) -> list[RegionRow]:
    """
    Grid over (x, eta) marking which steps sit below the entropy-aware boundary.

    eta runs over an open grid of (0, eta_top); a cell is admissible when
    0 < eta < eta_ce(x).

    Raises:
        OutOfRange: n_x or n_eta < 3, or eta_top <= 0
    """
    if not eta_top > 0:
        raise OutOfRange(f"eta_top must be > 0, got {eta_top!r}")
    etas = open_grid(n_eta) * eta_top
    rows = []
    for x in open_grid(n_x):
        eta_ce = ce_step(make_belief([x, 1.0 - x]), cfg)
        rows.extend(
            RegionRow(x=float(x), eta=float(eta), eta_ce=eta_ce, admissible=bool(eta < eta_ce))
            for eta in etas
        )
    return rows

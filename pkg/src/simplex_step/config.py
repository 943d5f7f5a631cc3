"""Centralized configuration for simplex-step."""

import os


class Config:
    """
    simplex-step configuration with environment variable overrides.

    Numeric constants of the admissibility theory live here next to the
    runtime knobs. Only the runtime knobs read the environment; nothing is
    required to be set.
    """

    @staticmethod
    def _parse_positive_int(value: str, name: str) -> int:
        """Parse and validate a positive integer environment variable."""
        try:
            parsed = int(value)
            if parsed <= 0:
                raise ValueError(f"{name} must be > 0, got {parsed}")
            return parsed
        except ValueError as e:
            raise ValueError(f"Invalid {name} environment variable: {e}") from e

    @staticmethod
    def _parse_log_level(value: str) -> str:
        """Parse and validate a loguru level name."""
        level = value.strip().upper()
        if level not in {"TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"Invalid SIMPLEX_STEP_LOG_LEVEL environment variable: {value!r}")
        return level

    # ========================================================================
    # Simplex geometry
    # ========================================================================
    EPS_INTERIOR: float = 1e-12
    SUM_TOLERANCE: float = 1e-12

    # ========================================================================
    # Entropy barrier
    # ========================================================================
    B_MAX: float = 1.0 - 1e-9
    ETA_FLOOR: float = 0.0

    # ========================================================================
    # Dynamics
    # ========================================================================
    EXPONENT_SPREAD_LIMIT: float = 700.0  # zeroed below this; exp(-700) is still a normal double
    PAIR_RADIUS: float = 1e-4
    ADMISSIBLE_RELATIVE_MARGIN: float = 1e-12

    # ========================================================================
    # Experiment / reporting
    # ========================================================================
    KL_CONVERGENCE_TOL: float = 1e-3
    COLLAPSE_THRESHOLD: float = 1e-6
    SWEEP_POINTS: int = 101
    DEFAULT_OUTPUT_DIR: str = os.getenv("SIMPLEX_STEP_OUTPUT_DIR", "./results")
    LOG_LEVEL: str = _parse_log_level.__func__(os.getenv("SIMPLEX_STEP_LOG_LEVEL", "WARNING"))
    MAX_WORKERS: int = _parse_positive_int.__func__(
        os.getenv("SIMPLEX_STEP_MAX_WORKERS", "1"),
        "SIMPLEX_STEP_MAX_WORKERS",
    )

    @classmethod
    def validate(cls) -> bool:
        """
        Validate configuration consistency.

        Returns:
            True if validation passes

        Raises:
            ValueError: If validation fails
        """
        errors = []

        if not 0 < cls.EPS_INTERIOR < 1e-6:
            errors.append(f"EPS_INTERIOR must be in (0, 1e-6), got {cls.EPS_INTERIOR}")
        if not 0 < cls.B_MAX < 1:
            errors.append(f"B_MAX must be in (0, 1), got {cls.B_MAX}")
        if cls.ETA_FLOOR < 0:
            errors.append(f"ETA_FLOOR must be >= 0, got {cls.ETA_FLOOR}")
        if cls.EXPONENT_SPREAD_LIMIT <= 0:
            errors.append(
                f"EXPONENT_SPREAD_LIMIT must be > 0, got {cls.EXPONENT_SPREAD_LIMIT}"
            )
        if cls.PAIR_RADIUS <= 0:
            errors.append(f"PAIR_RADIUS must be > 0, got {cls.PAIR_RADIUS}")
        if cls.KL_CONVERGENCE_TOL <= 0:
            errors.append(f"KL_CONVERGENCE_TOL must be > 0, got {cls.KL_CONVERGENCE_TOL}")
        if cls.COLLAPSE_THRESHOLD <= cls.EPS_INTERIOR:
            errors.append(
                "COLLAPSE_THRESHOLD must exceed EPS_INTERIOR, "
                f"got {cls.COLLAPSE_THRESHOLD} <= {cls.EPS_INTERIOR}"
            )
        if cls.SWEEP_POINTS < 3:
            errors.append(f"SWEEP_POINTS must be >= 3, got {cls.SWEEP_POINTS}")

        if errors:
            raise ValueError(f"Config validation failed: {'; '.join(errors)}")

        return True

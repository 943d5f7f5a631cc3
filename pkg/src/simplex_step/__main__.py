"""
Entry point for running simplex_step as a module.

Allows running the CLI via:
    python -m simplex_step
    uv run python -m simplex_step
"""

import sys

from simplex_step.cli.main import main

if __name__ == "__main__":
    sys.exit(main())

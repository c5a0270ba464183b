"""Symbolic expansion and weight synthesis for polynomial-activation networks."""

from pathlib import Path

from ._core import *  # noqa: F401,F403
from ._core import DEFAULT_DATA_DIR, Error
from ._core import run_experiment as _run_experiment

__all__ = [name for name in dir() if not name.startswith("_")]


def data_dir() -> Path:
    """Published weights and datasets: packaged copy first, then the source tree."""
    packaged = Path(__file__).with_name("data")
    return packaged if packaged.is_dir() else Path(DEFAULT_DATA_DIR)


def run_experiment(id: int, seed: int = 0, format: str = "text", data_dir_override=None):
    """Returns (exit_status, report_text) for experiment 1..4."""
    return _run_experiment(id, str(data_dir_override or data_dir()), seed, format)

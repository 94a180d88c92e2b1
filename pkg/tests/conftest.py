import os
from pathlib import Path

import pytest

from srg.model import load_instance

DATASET_ENV = "SRG_DATASET_DIR"


def dataset_dir() -> Path | None:
    """The real benchmark dataset directory, if configured and present."""
    value = os.environ.get(DATASET_ENV)
    if not value:
        return None
    path = Path(value)
    return path if path.is_dir() else None


def load_dataset_instance(name: str):
    """Load one real dataset instance by name, or None when unavailable."""
    root = dataset_dir()
    if root is None:
        return None
    for candidate in (root / name, root / f"{name}.csv", root / f"{name}.txt"):
        if candidate.is_file():
            return load_instance(candidate)
    return None


@pytest.fixture
def tiny_instance():
    """Three students over four courses; cohort year 2."""
    from srg.model import make_instance

    return make_instance(
        "tiny",
        2,
        {"a": 2, "b": 2, "c": 1, "d": 1},
        {"s1": ["a", "c"], "s2": ["b", "c"], "s3": ["d"]},
    )

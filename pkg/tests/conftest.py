from __future__ import annotations

import os
from pathlib import Path

import pytest

DATA = Path(__file__).parent / "data"
BUNDLED_ZEROS = DATA / "zeros_100k.txt"


def zeros_file() -> Path | None:
    """Zero table from ANZB_ZEROS, else the bundled file, else None."""
    env = os.environ.get("ANZB_ZEROS")
    if env and Path(env).is_file():
        return Path(env)
    if BUNDLED_ZEROS.is_file():
        return BUNDLED_ZEROS
    return None


@pytest.fixture(scope="session")
def zero_table():
    path = zeros_file()
    if path is None:
        pytest.skip("no zero table available")
    from anzb.explicit import load_zeros

    return load_zeros(path)

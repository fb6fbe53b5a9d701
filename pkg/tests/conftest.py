"""
Tests configuration for pytest.
"""

import sys
from pathlib import Path

import pytest

# Add src to path for imports
src_path = Path(__file__).parent.parent / "src"
sys.path.insert(0, str(src_path))

from codebounds.config import packaged_known_values_path  # noqa: E402
from codebounds.oracle import AqOracle, load_known_values  # noqa: E402


@pytest.fixture(scope="module")
def oracle():
    """Oracle backed by computed bounds only."""
    return AqOracle()


@pytest.fixture(scope="module")
def table_oracle():
    """Oracle backed by the packaged binary known-values table."""
    return AqOracle(load_known_values(packaged_known_values_path()))

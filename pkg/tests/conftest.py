import pytest

from aperylab.discovery import run_table1
from aperylab.mp import Precision


@pytest.fixture(scope="session")
def table200():
    """Bootstrap state for weights 0..8 at 200 digits (shared; takes a few seconds)."""
    return run_table1(8, Precision(200))

"""
Shared pytest fixtures
"""

from pathlib import Path

import pytest

from holonomy2 import fixtures

DATA = Path(__file__).resolve().parent.parent / "holonomy2" / "data"


@pytest.fixture
def data_dir():
    """
    Directory of the shipped JSON inputs
    """
    return DATA


@pytest.fixture
def sl2():
    """
    sl2 in the h, e, f basis
    """
    return fixtures.sl2()


@pytest.fixture
def catalogue():
    """
    Named valid crossed modules
    """
    return fixtures.crossed_catalogue()

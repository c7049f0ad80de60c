"""
Shared fixtures for the tarai test suite
"""

import pytest
from hypothesis import settings

from tarai_core import IntSeq

# lazy evaluations on 5-dimensional inputs can take longer than hypothesis' default deadline
settings.register_profile("tarai", deadline=None, max_examples=150)
settings.load_profile("tarai")


@pytest.fixture
def divergent_witness() -> IntSeq:
    """The 4-dimensional input whose strict evaluation returns to itself"""
    return IntSeq.of(3, 2, 1, 5)


@pytest.fixture
def divergent_successor() -> IntSeq:
    return IntSeq.of(2, 1, 5, 4)


@pytest.fixture
def no_config(monkeypatch, tmp_path):
    """Run from an empty directory with no config file or env override"""
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("TARAI_CONFIG", raising=False)
    return tmp_path

"""
Shared pytest fixtures: the bundled starter corpus, ingested once.
"""

import pytest

from services.bounds import BoundsConfig
from services.corpus import ingest_corpus


@pytest.fixture(scope="session")
def starter():
    return ingest_corpus()


@pytest.fixture(scope="session")
def config():
    return BoundsConfig(prime_bound=2000)


@pytest.fixture(scope="session")
def qi(starter):
    return starter.field("Qi")


@pytest.fixture(scope="session")
def qi_b23(starter):
    return starter.algebra("Qi-B23")

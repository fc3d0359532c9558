import functools

import pytest
from hypothesis import settings

from braidcover.identities import CertificateEngine

settings.register_profile("suite", deadline=None, max_examples=60)
settings.load_profile("suite")


@functools.lru_cache(maxsize=None)
def seeded_engine(n: int) -> CertificateEngine:
    """Certificate engines are expensive to seed at 5 strands; share one
    per strand count across the whole session."""
    engine = CertificateEngine(n)
    engine.seed_all()
    return engine


@pytest.fixture(scope="session")
def engine_factory():
    return seeded_engine

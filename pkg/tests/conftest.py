import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("ccf", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("ccf")


@pytest.fixture(scope="session")
def corpus_contexts():
    from ccf.corpus import random_surds

    return random_surds(100)


@pytest.fixture(scope="session")
def corpus_checked(corpus_contexts):
    """Full audit of the seeded corpus: identities, growth, error bounds."""
    from ccf.corpus import run_corpus

    return run_corpus(corpus_contexts, checks=True)

import pytest

from helpers import lamplighter, mealy_corpus, moore_corpus, tm_dfao


@pytest.fixture
def lamp():
    return lamplighter()


@pytest.fixture
def tm():
    return tm_dfao()


@pytest.fixture(scope="session")
def corpus():
    return mealy_corpus()


@pytest.fixture(scope="session")
def moore_machines():
    return moore_corpus()

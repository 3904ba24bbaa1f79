import pytest

from subrigid.stallings import from_generators
from subrigid.words import Alphabet, parse


def sg(*words, rank=2):
    """Core graph of the subgroup generated by the given text words."""
    alphabet = Alphabet(rank)
    return from_generators([parse(w, alphabet) for w in words], alphabet)


def w(text, rank=2):
    return parse(text, Alphabet(rank))


@pytest.fixture
def F2():
    return sg("a", "b")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    setattr(item, "rep_" + rep.when, rep)

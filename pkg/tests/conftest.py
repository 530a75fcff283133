import random

import pytest

from twistconj.homomorphism import parse_hom
from twistconj.words import parse_word


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", help="run the long exhaustive sweeps")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long exhaustive sweep, needs --runslow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def rng():
    return random.Random(20240917)


@pytest.fixture
def example_phi():
    # a -> baba^2, b -> a^2 b^-1 a b^3
    return parse_hom("babaa,aaBabbb", 2)


@pytest.fixture
def example_psi():
    # a -> b^-2, b -> a
    return parse_hom("BB,a", 2)


def w(text, rank=2):
    return parse_word(text, rank)

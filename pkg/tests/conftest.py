import pathlib

import pytest

from crowdsmell.java import parse_project

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def corpus_model():
    return parse_project(FIXTURES / "corpus")


@pytest.fixture()
def corpus_root():
    return FIXTURES / "corpus"

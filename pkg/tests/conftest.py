import pytest

from ncja.fixtures import load_agenda, load_profile
from ncja.judgment import Agenda
from ncja.logics import LOGICS


@pytest.fixture
def cl():
    return LOGICS["CL"]


@pytest.fixture
def dilemma_cl():
    return load_agenda("dilemma-cl")


@pytest.fixture
def all_dilemma():
    return load_agenda("all-dilemma")


@pytest.fixture
def lambek_agenda():
    return load_agenda("dilemma-lambek")


@pytest.fixture
def dilemma_profile():
    return load_profile("dilemma-cl")


@pytest.fixture
def two_pair():
    """A, ~A, B, ~B over classical logic: no interaction between the issues."""
    return Agenda.build("CL", ["A", "B"], close=True)

from pathlib import Path

import pytest

from edclattice.corpus import mixed_corpus
from edclattice.models import RelationalSystem, full_discrete_edc, index_of_set, parse_set_label, sub_discrete_edc

FIXTURES = Path(__file__).parent / "fixtures"

W3 = RelationalSystem.from_edges(3, [(0, 1)], symmetrize=True)
PATH3 = RelationalSystem.from_edges(3, [(0, 1), (1, 2)], symmetrize=True)
CHAIN = [0b000, 0b001, 0b011, 0b111]


def el(E, label: str) -> int:
    """Element index of a set written as ``{1,2}``."""
    return index_of_set(E, parse_set_label(label))


@pytest.fixture(scope="session")
def w3():
    return full_discrete_edc(W3)


@pytest.fixture(scope="session")
def chain_model():
    return sub_discrete_edc(W3, CHAIN)


@pytest.fixture(scope="session")
def path3():
    return full_discrete_edc(PATH3)


@pytest.fixture(scope="session")
def corpus():
    return mixed_corpus(seed=2026, count=80)

import pytest
from hypothesis import HealthCheck, settings

from covlat import Covering, ElementSet, SetFamily, Universe, as_covering, parse_family

settings.register_profile(
    "suite",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


MIXED5 = """\
universe: 1 2 3 4 5
block K1: 1 2
block K2: 1 3
block K3: 2 3
block K4: 4 5
"""

DOUBLED9 = """\
universe: a b c d e f g h i
block K1: a b i
block K2: a b c d e f
block K3: f g h
block K4: c d e g h i
"""

NESTED3 = """\
universe: 1 2 3
block K1: 1 2
block K2: 1 3
block K3: 1 2 3
"""

CHAIN_A = """\
universe: 1 2 3
block K1: 1
block K2: 1 2
block K3: 2 3
block K4: 3
"""

CHAIN_B = """\
universe: 1 2 3
block K1: 1
block K2: 1 2
block K3: 2 3
block K5: 1 2 3
"""

FAMILY4 = """\
universe: 1 2 3 4
block F1: 2 3
block F2: 4
block F3: 2 4
"""

FAMILY3 = """\
universe: 1 2 3
block K1: 1 2
block K2: 1 3
block K3: 3
"""


def cov(text: str) -> Covering:
    return as_covering(parse_family(text))


def fam(text: str) -> SetFamily:
    return parse_family(text)


def subsets(universe: Universe):
    for mask in range(1 << universe.n):
        yield ElementSet(universe, mask)


@pytest.fixture
def mixed5() -> Covering:
    return cov(MIXED5)


@pytest.fixture
def doubled9() -> Covering:
    return cov(DOUBLED9)


@pytest.fixture
def nested3() -> Covering:
    return cov(NESTED3)


@pytest.fixture
def chain_a() -> Covering:
    return cov(CHAIN_A)


@pytest.fixture
def chain_b() -> Covering:
    return cov(CHAIN_B)


@pytest.fixture
def family4() -> SetFamily:
    return fam(FAMILY4)


@pytest.fixture
def family3() -> SetFamily:
    return fam(FAMILY3)

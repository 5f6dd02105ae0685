import pytest

from slopestab import GF, QQ, enumerate_subrep_classes, sl2_block, sl2_slope

from helpers import sl2_f2_universe


@pytest.fixture(scope="session")
def sl2_q():
    return sl2_block(QQ)


@pytest.fixture(scope="session")
def sl2_f2():
    return sl2_block(GF(2))


@pytest.fixture(scope="session")
def sl2_f3():
    return sl2_block(GF(3))


def x2_slope(x2):
    return sl2_slope((0, x2))


@pytest.fixture(scope="session")
def f2_universe(sl2_f2):
    """Every valid representation of the block with dims <= (2,2) over GF(2)."""
    return sl2_f2_universe(sl2_f2.algebra)


@pytest.fixture(scope="session")
def f2_universe_classes(f2_universe):
    """Subobject class sets for the whole universe, computed once."""
    return [
        (rep, list(enumerate_subrep_classes(rep))) for rep in f2_universe
    ]

import pytest

from horofan.roots import RootSystem
from horofan.spaces import HoroSpace, toric_space


@pytest.fixture(scope="session")
def sl2u():
    rs = RootSystem([("A", 1)])
    return HoroSpace(rs, [], [rs.fundamental_weight(0)])


@pytest.fixture(scope="session")
def sl2c():
    rs = RootSystem([("A", 1)], torus_rank=1)
    return HoroSpace(rs, [], [rs.fundamental_weight(0), rs.torus_character(0)])


@pytest.fixture(scope="session")
def sl2sl2():
    rs = RootSystem([("A", 1), ("A", 1)])
    return HoroSpace(rs, [], [rs.fundamental_weight(0), rs.fundamental_weight(1)])


@pytest.fixture(scope="session")
def sl3u():
    rs = RootSystem([("A", 2)])
    return HoroSpace(rs, [], [rs.fundamental_weight(0), rs.fundamental_weight(1)])


@pytest.fixture(scope="session")
def torus1():
    return toric_space(1)


@pytest.fixture(scope="session")
def torus2():
    return toric_space(2)


@pytest.fixture(scope="session")
def enumerated(sl2u, sl2c, sl2sl2, sl3u, torus2):
    """Reflexive-class lists for the five desk-scale spaces, computed once."""
    from horofan.enumeration import enumerate_reflexive

    return {
        "sl2u": (sl2u, enumerate_reflexive(sl2u)),
        "toric2": (torus2, enumerate_reflexive(torus2)),
        "sl2c": (sl2c, enumerate_reflexive(sl2c)),
        "sl2sl2": (sl2sl2, enumerate_reflexive(sl2sl2)),
        "sl3u": (sl3u, enumerate_reflexive(sl3u)),
    }

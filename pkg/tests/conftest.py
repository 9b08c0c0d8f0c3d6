import pytest

from laguerre import (DeltaGroup, GroupSpace, LaguerrePlane, canonical_pencil)


@pytest.fixture(scope="session")
def plane5():
    return LaguerrePlane(5)


@pytest.fixture(scope="session")
def plane3():
    return LaguerrePlane(3)


@pytest.fixture(scope="session")
def plane7():
    return LaguerrePlane(7)


@pytest.fixture(scope="session")
def plane2():
    return LaguerrePlane(2)


@pytest.fixture(scope="session")
def delta5(plane5):
    return DeltaGroup.build(plane5, canonical_pencil(plane5))


@pytest.fixture(scope="session")
def space5(plane5, delta5):
    return GroupSpace.build(plane5, canonical_pencil(plane5), delta5,
                            check_preconditions=False)


@pytest.fixture(scope="session")
def space3(plane3):
    delta = DeltaGroup.build(plane3, canonical_pencil(plane3))
    return GroupSpace.build(plane3, canonical_pencil(plane3), delta,
                            check_preconditions=False)


@pytest.fixture(scope="session")
def space7(plane7):
    delta = DeltaGroup.build(plane7, canonical_pencil(plane7))
    return GroupSpace.build(plane7, canonical_pencil(plane7), delta,
                            check_preconditions=False)

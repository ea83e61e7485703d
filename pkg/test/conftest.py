import pytest
from fusionkit import AlgebraData, build_algebra


@pytest.fixture(scope="session")
def a1() -> AlgebraData:
    return build_algebra("A", 1)


@pytest.fixture(scope="session")
def a2() -> AlgebraData:
    return build_algebra("A", 2)


@pytest.fixture(scope="session")
def b2() -> AlgebraData:
    return build_algebra("B", 2)


@pytest.fixture(scope="session")
def g2() -> AlgebraData:
    return build_algebra("G", 2)

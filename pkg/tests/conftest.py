import pytest

from rbundles.fields import QQ
from rbundles.moduli import Direction, SheafMatrix


@pytest.fixture
def nodal():
    return SheafMatrix.parse(QQ, "x1", "x2*(x0+x2)", "x2", "x1*x0")


@pytest.fixture
def cusp():
    return SheafMatrix.parse(QQ, "x1", "x2^2", "x2", "x1*x0")


@pytest.fixture
def three_lines():
    return SheafMatrix.parse(QQ, "x1", "0", "x2", "x2*(x1+x2)")


@pytest.fixture
def xi00():
    return Direction.named(QQ, xi00=1)

import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from utils.field_linalg import prime_field  # noqa: E402
from utils.quiver_file import named_quiver  # noqa: E402


@pytest.fixture
def a1():
    return named_quiver('a1')


@pytest.fixture
def a2():
    return named_quiver('a2')


@pytest.fixture
def a3():
    return named_quiver('a3')


@pytest.fixture
def d4():
    return named_quiver('d4')


@pytest.fixture
def kronecker():
    return named_quiver('kronecker')


@pytest.fixture
def f2():
    return prime_field(2)


@pytest.fixture
def f3():
    return prime_field(3)


@pytest.fixture
def f5():
    return prime_field(5)


@pytest.fixture
def small_primes():
    return [2, 3, 5, 7, 11, 13]

import pytest

from services.epsilon_algebra import (EpsilonAlgebra, verify_affine, verify_affine_realization, verify_delta_count,
                                      verify_tube_orthogonality)
from services.lie_table import verify_jacobi
from utils.errors import NotTameError
from utils.quiver_file import named_quiver


@pytest.fixture(scope='module')
def algebra():
    return EpsilonAlgebra(named_quiver('kronecker'), 2)


def test_basis(algebra):
    names = [b.name for b in algebra.table.basis]
    assert names == ['a_1', 'a_2', 'e(0,1)', 'e(1,0)', 'x_1(1)', 'e(0,-1)', 'e(-1,0)', 'x_1(-1)']
    assert algebra.loops == {4: (0, 1), 7: (0, -1)}


def test_brackets(algebra):
    assert algebra.bracket('e(1,0)', 'e(0,1)') == {'x_1(1)': 1}
    assert algebra.bracket('x_1(1)', 'x_1(-1)') == {'a_1': 2, 'a_2': 2}
    assert algebra.bracket('e(1,0)', 'e(-1,0)') == {'a_1': -1}
    assert algebra.bracket('a_1', 'e(1,0)') == {'e(1,0)': 2}
    assert algebra.bracket('x_1(1)', 'e(1,0)') is None


def test_quotient_coordinates(algebra):
    assert algebra.quotient_coordinates((1, 1)) == {}
    assert algebra.quotient_coordinates((1, 0)) == {0: 1}
    assert algebra.quotient_coordinates((0, 1)) == {0: -1}


def test_jacobi(algebra):
    report = verify_jacobi(algebra.table)
    assert report.ok
    assert report.checked > 0


def test_dynkin_refused(a2):
    with pytest.raises(NotTameError):
        EpsilonAlgebra(a2)
    with pytest.raises(NotTameError):
        verify_affine(a2)


def test_delta_count(kronecker):
    report = verify_delta_count(kronecker, [2, 3])
    assert report.ok
    assert 'kac count: q + 1' in report.lines


def test_tube_orthogonality(kronecker):
    assert verify_tube_orthogonality(kronecker, (2,), 1).ok


@pytest.mark.slow
def test_realization_on_kronecker(kronecker):
    report = verify_affine_realization(kronecker, 2)
    assert report.ok, report.render()
    assert 'non-homogeneous tube rows: not exercised' in report.lines

import pytest

from services.quiver import (Arrow, Quiver, Relation, cartan_datum, enumerate_roots, euler_cocycle, euler_form,
                             imaginary_root, is_delta_multiple, is_real_root, quiver_type, reflect,
                             symmetric_form)
from utils.errors import DisconnectedQuiverError, RelationsPresentError


@pytest.mark.parametrize('name,count', [('a1', 1), ('a2', 3), ('a3', 6), ('d4', 12)])
def test_dynkin_root_counts(name, count, request):
    q = request.getfixturevalue(name)
    assert quiver_type(q) == 'finite'
    assert len(enumerate_roots(q).real_roots) == count


def test_a2_roots_sorted_by_height(a2):
    assert enumerate_roots(a2).real_roots == ((0, 1), (1, 0), (1, 1))


def test_kronecker_is_affine(kronecker):
    assert quiver_type(kronecker) == 'affine'
    assert imaginary_root(kronecker) == (1, 1)
    roots = enumerate_roots(kronecker, 3)
    assert set(roots.real_roots) == {(1, 0), (0, 1), (2, 1), (1, 2)}
    assert roots.imaginary_roots(4) == [(1, 1), (2, 2)]
    assert (1, 1) not in roots


def test_three_arrows_are_wild():
    q = Quiver(('1', '2'), tuple(Arrow(label, 0, 1) for label in 'abc'))
    assert quiver_type(q) == 'wild'
    assert imaginary_root(q) is None


def test_euler_form_a2(a2):
    assert euler_form(a2, (1, 0), (0, 1)) == -1
    assert euler_form(a2, (0, 1), (1, 0)) == 0
    assert symmetric_form(a2, (1, 1), (1, 1)) == 2
    assert cartan_datum(a2).matrix == ((2, -1), (-1, 2))


def test_reflection(a2, kronecker):
    assert reflect(a2, 0, (0, 1)) == (1, 1)
    assert reflect(a2, 0, (1, 0)) == (-1, 0)
    assert reflect(kronecker, 0, (0, 1)) == (2, 1)


def test_real_and_imaginary_membership(kronecker):
    assert is_real_root(kronecker, (2, 1))
    assert is_real_root(kronecker, (-1, -2))
    assert not is_real_root(kronecker, (1, 1))
    assert is_delta_multiple(kronecker, (2, 2)) == 2
    assert is_delta_multiple(kronecker, (2, 1)) == 0


def test_euler_cocycle_conventions(a2):
    assert euler_cocycle(a2, (1, 0), (0, 1)) == -1
    assert euler_cocycle(a2, (0, 1), (1, 0)) == 1
    assert euler_cocycle(a2, (1, 0), (0, 1), 'transpose') == 1
    assert euler_cocycle(a2, (1, 0), (0, 1), 'trivial') == 1
    with pytest.raises(ValueError):
        euler_cocycle(a2, (1, 0), (0, 1), 'other')


def test_disconnected_quiver_refused():
    q = Quiver(('1', '2'), ())
    with pytest.raises(DisconnectedQuiverError):
        enumerate_roots(q)


def test_relations_refused():
    q = Quiver(('1', '2', '3'), (Arrow('a', 0, 1), Arrow('b', 1, 2)), (Relation(((1, ('a', 'b')),)),))
    with pytest.raises(RelationsPresentError):
        euler_form(q, (1, 0, 0), (0, 1, 0))


def test_reflected_quiver(a2):
    r = a2.reflected_at(0)
    assert r.arrows[0].source == 1 and r.arrows[0].target == 0
    assert r.is_source(1)

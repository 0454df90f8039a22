import itertools

import pytest

from services.quiver import enumerate_roots, euler_form
from services.representations import (Rep, RepMorphism, aut_order, decompose, direct_sum, enumerate_indecomposables,
                                      ext_dimension, hom_dimension, hom_space, is_absolutely_indecomposable,
                                      is_indecomposable, is_isomorphic, kernel_cokernel, submodule_tuples)
from services.tame import rational_members, regular_representative, tube_points
from utils.errors import BudgetExceededError
from utils.field_linalg import FMatrix


def _dims(n, total):
    return [d for d in itertools.product(range(total + 1), repeat=n) if 0 < sum(d) <= total]


@pytest.mark.parametrize('name,field', [
    ('a2', 'f2'), ('a3', 'f2'), ('a2', 'f3'), ('a3', 'f3'), ('a2', 'f5'),
    pytest.param('a3', 'f5', marks=pytest.mark.slow),
])
def test_indecomposables_are_positive_roots(name, field, request):
    q = request.getfixturevalue(name)
    fld = request.getfixturevalue(field)
    roots = set(enumerate_roots(q).real_roots)
    for d in _dims(q.n, 4):
        found = enumerate_indecomposables(q, d, fld)
        assert len(found) == (1 if d in roots else 0), d


def test_a2_indecomposables_over_f3(a2, f3):
    assert len(enumerate_indecomposables(a2, (1, 1), f3)) == 1
    assert enumerate_indecomposables(a2, (2, 1), f3) == []


def test_hom_and_ext_match_euler_form(a2, f3):
    s1, s2 = Rep.simple(a2, f3, 0), Rep.simple(a2, f3, 1)
    p12 = Rep.from_lists(a2, f3, (1, 1), [[[1]]])
    for x, y in itertools.product([s1, s2, p12], repeat=2):
        assert hom_dimension(x, y) - ext_dimension(x, y) == euler_form(a2, x.dim, y.dim)
    assert ext_dimension(s1, s2) == 1
    assert ext_dimension(s2, s1) == 0


def test_kernel_cokernel_of_inclusion(a2, f2):
    s2 = Rep.simple(a2, f2, 1)
    p12 = Rep.from_lists(a2, f2, (1, 1), [[[1]]])
    f = hom_space(s2, p12)[0]
    ker, _, coker, _ = kernel_cokernel(f)
    assert ker.is_zero()
    assert coker.dim == (1, 0)


def test_morphism_must_commute(a2, f2):
    s2 = Rep.simple(a2, f2, 1)
    p12 = Rep.from_lists(a2, f2, (1, 1), [[[1]]])
    with pytest.raises(ValueError):
        RepMorphism(p12, s2, (FMatrix.zeros(f2, 0, 1), FMatrix.identity(f2, 1)))


def test_isomorphism_and_decomposition(a2, f3):
    x = Rep.from_lists(a2, f3, (1, 1), [[[1]]])
    y = Rep.from_lists(a2, f3, (1, 1), [[[2]]])
    z = Rep.from_lists(a2, f3, (1, 1), [[[0]]])
    assert is_isomorphic(x, y)
    assert not is_isomorphic(x, z)
    assert is_indecomposable(x)
    assert not is_indecomposable(z)
    pieces = decompose(direct_sum([z, x]))
    assert sorted(rep.dim for rep, _ in pieces) == [(0, 1), (1, 0), (1, 1)]
    assert [(rep.dim, mult) for rep, mult in decompose(direct_sum([x, y]))] == [((1, 1), 2)]


def test_locality_search_respects_budget(kronecker, f3):
    length_two = rational_members(kronecker, f3, 2)[0][1]
    assert is_indecomposable(length_two)
    with pytest.raises(BudgetExceededError) as info:
        is_indecomposable(length_two, budget=4)
    assert info.value.attempted == 9


def test_absolutely_indecomposable(kronecker, f2):
    assert all(is_absolutely_indecomposable(rep) for _, rep in rational_members(kronecker, f2, 2))
    (point, polynomial), = tube_points(2, 2)
    quadratic = regular_representative(kronecker, f2, point, polynomial, 1)
    assert is_indecomposable(quadratic)
    assert aut_order(quadratic) == 3
    assert not is_absolutely_indecomposable(quadratic)


def test_aut_order(a2, f3):
    x = Rep.from_lists(a2, f3, (1, 1), [[[1]]])
    z = Rep.from_lists(a2, f3, (1, 1), [[[0]]])
    assert aut_order(x) == 2
    assert aut_order(z) == 4
    assert aut_order(direct_sum([Rep.simple(a2, f3, 0)] * 2)) == 48


def test_submodules_of_projective(a2, f2):
    p12 = Rep.from_lists(a2, f2, (1, 1), [[[1]]])
    assert len(list(submodule_tuples(p12, (0, 1)))) == 1
    assert len(list(submodule_tuples(p12, (1, 0)))) == 0


def test_enumeration_budget(kronecker, f5):
    with pytest.raises(BudgetExceededError):
        enumerate_indecomposables(kronecker, (3, 3), f5, budget=1000)

import pytest

from services.path_algebra import (PathMatrix, path_matrix_from_morphism, paths_between, projective,
                                   projective_cover, projective_sum)
from services.quiver import Arrow, Quiver
from services.representations import Rep, kernel_cokernel


def test_paths(a2, a3, kronecker):
    assert paths_between(a2, 0, 1) == (('a',),)
    assert paths_between(a2, 1, 0) == ()
    assert paths_between(a2, 0, 0) == ((),)
    assert paths_between(a3, 0, 2) == (('a', 'b'),)
    assert paths_between(kronecker, 0, 1) == (('a',), ('b',))


def test_oriented_cycle_refused():
    q = Quiver(('1', '2'), (Arrow('a', 0, 1), Arrow('b', 1, 0)))
    with pytest.raises(ValueError):
        paths_between(q, 0, 1)


def test_projective_dimensions(a3, kronecker, f3):
    assert [projective(a3, f3, i).dim for i in range(3)] == [(1, 1, 1), (0, 1, 1), (0, 0, 1)]
    assert projective(kronecker, f3, 0).dim == (1, 2)
    assert projective_sum(a3, f3, [0, 2]).dim == (1, 1, 2)
    assert projective_sum(a3, f3, []).is_zero()


def test_path_matrix_rejects_misplaced_path(a2, f3):
    with pytest.raises(ValueError):
        PathMatrix.build(a2, f3, (0,), (1,), [[{('a',): 1}]])


def test_compose_and_identity(a3, f3):
    d = PathMatrix.build(a3, f3, (2,), (0,), [[{('a', 'b'): 2}]])
    assert PathMatrix.identity(a3, f3, (0,)).compose(d) == d
    assert d.compose(PathMatrix.identity(a3, f3, (2,))) == d
    first = PathMatrix.build(a3, f3, (1,), (0,), [[{('a',): 1}]])
    second = PathMatrix.build(a3, f3, (2,), (1,), [[{('b',): 2}]])
    assert first.compose(second) == d
    assert (d + d).entry(0, 0) == {('a', 'b'): 1}
    assert d.is_radical()
    assert not PathMatrix.identity(a3, f3, (0,)).is_radical()


def test_realize_round_trip(kronecker, f3):
    d = PathMatrix.build(kronecker, f3, (1, 1), (0,), [[{('a',): 1}, {('a',): 2, ('b',): 1}]])
    f = d.realize()
    assert f.source.dim == (0, 2)
    assert f.target.dim == (1, 2)
    assert path_matrix_from_morphism(f, (1, 1), (0,)) == d
    ker, _, coker, _ = kernel_cokernel(f)
    assert ker.is_zero()
    assert coker.dim == (1, 0)


def test_projective_cover(a2, f3):
    s1 = Rep.simple(a2, f3, 0)
    vertices, cover = projective_cover(s1)
    assert vertices == (0,)
    assert kernel_cokernel(cover)[2].is_zero()
    assert kernel_cokernel(cover)[0].dim == (0, 1)
    split = Rep.from_lists(a2, f3, (1, 1), [[[0]]])
    vertices, _ = projective_cover(split)
    assert vertices == (0, 1)

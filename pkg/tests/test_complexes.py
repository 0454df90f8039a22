import random

import pytest

from services.complexes import (ChainMap, GeneralComplex, ProjComplex, TwoPeriodicComplex, cone, homology,
                                homology_dims, is_acyclic, is_quasi_iso, projective_resolution, projective_resolve,
                                shift, strip_contractibles, to_two_periodic)
from services.path_algebra import PathMatrix, paths_between
from services.representations import Rep, RepMorphism, is_isomorphic


def _two_term(q, fld, lo=-1):
    """[P2 -a-> P1] on A2, concentrated in degrees lo, lo + 1."""
    d = PathMatrix.build(q, fld, (1,), (0,), [[{('a',): 1}]])
    return ProjComplex(q, fld, lo, ((1,), (0,)), (d,))


def _random_two_term(q, fld, rng):
    sources = tuple(rng.randrange(q.n) for _ in range(rng.randint(0, 3)))
    targets = tuple(rng.randrange(q.n) for _ in range(rng.randint(0, 3)))
    entries = [[{path: rng.randrange(fld.p) for path in paths_between(q, j, i)} for i in sources] for j in targets]
    return ProjComplex(q, fld, 0, (sources, targets), (PathMatrix.build(q, fld, sources, targets, entries),))


def test_two_term_homology(a2, f3):
    c = _two_term(a2, f3)
    assert c.is_minimal()
    assert homology_dims(c) == {0: (1, 0)}
    h = homology(c)
    assert h[-1].is_zero()
    assert is_isomorphic(h[0], Rep.simple(a2, f3, 0))
    assert c.multiplicities(-1) == (0, 1)
    assert c.multiplicities(3) == (0, 0)


def test_differentials_must_compose_to_zero(a2, f3):
    p1 = _two_term(a2, f3).realize().term(0)
    identity = RepMorphism.identity(p1)
    with pytest.raises(ValueError):
        GeneralComplex(a2, f3, 0, (p1, p1, p1), (identity, identity))


def test_strip_single_contractible(a2, f3):
    d = PathMatrix.build(a2, f3, (1, 0), (0, 0), [[{('a',): 1}, {(): 1}], [{('a',): 2}, {(): 2}]])
    c = ProjComplex(a2, f3, -1, ((1, 0), (0, 0)), (d,))
    assert not c.is_minimal()
    minimal, contractible = strip_contractibles(c)
    assert minimal.is_minimal()
    assert minimal.terms == ((1,), (0,))
    assert minimal.diffs[0].is_zero()
    assert contractible.terms == ((0,), (0,))
    assert contractible.lo == -1
    assert is_acyclic(contractible)
    assert homology_dims(minimal) == homology_dims(c) == {-1: (0, 1), 0: (1, 1)}


def test_stripping_random_complexes(a3, kronecker, f3):
    rng = random.Random(7)
    for q in (a3, kronecker):
        for _ in range(25):
            c = _random_two_term(q, f3, rng)
            minimal, contractible = strip_contractibles(c)
            assert minimal.is_minimal()
            assert homology_dims(minimal) == homology_dims(c)
            assert is_acyclic(contractible)
            for n in (0, 1):
                total = tuple(a + b for a, b in zip(minimal.multiplicities(n), contractible.multiplicities(n)))
                assert total == c.multiplicities(n)
            again, nothing = strip_contractibles(minimal)
            assert again.terms == minimal.terms
            assert nothing.is_zero()


def test_resolving_random_complexes(a3, f3):
    rng = random.Random(11)
    for _ in range(50):
        m = _random_two_term(a3, f3, rng).realize()
        _, chain = projective_resolution(m)
        assert is_quasi_iso(chain)
        minimal = projective_resolve(m)
        assert minimal.is_minimal()
        assert homology_dims(minimal) == homology_dims(m)


@pytest.mark.parametrize('dim,entries', [((1, 0, 0), ()), ((1, 1, 1), (1, 1)), ((0, 1, 1), (1,)), ((1, 1, 0), (1,))])
def test_resolution_is_quasi_iso(a3, f3, dim, entries):
    m = GeneralComplex.stalk(Rep.from_entries(a3, f3, dim, entries))
    resolution, chain = projective_resolution(m)
    assert is_quasi_iso(chain)
    assert homology_dims(resolution) == homology_dims(m)


def test_minimal_resolution_of_simple(a2, f3):
    minimal = projective_resolve(Rep.simple(a2, f3, 0))
    assert minimal.lo == -1
    assert minimal.terms == ((1,), (0,))
    assert minimal.is_minimal()
    assert projective_resolve(Rep.simple(a2, f3, 1)).terms == ((1,),)


def test_resolution_of_two_term_complex(a2, f3):
    c = _two_term(a2, f3, lo=0).realize()
    minimal = projective_resolve(c)
    assert minimal.multiplicities(0) == (0, 1)
    assert minimal.multiplicities(1) == (1, 0)
    assert homology_dims(minimal) == {1: (1, 0)}


def test_cone_and_quasi_iso(a2, f3):
    c = _two_term(a2, f3).realize()
    identity = ChainMap.identity(c)
    assert is_acyclic(cone(identity))
    assert is_quasi_iso(identity)
    assert not is_quasi_iso(ChainMap(c, c, {}))


def test_chain_map_must_commute(a2, f3):
    c = _two_term(a2, f3).realize()
    with pytest.raises(ValueError):
        ChainMap(c, c, {0: RepMorphism.identity(c.term(0))})


def test_shift(a2, f3):
    c = _two_term(a2, f3)
    shifted = shift(c, 1)
    assert shifted.lo == -2
    assert homology_dims(shifted) == {-1: (1, 0)}
    assert homology_dims(shift(c.realize(), -2)) == {2: (1, 0)}
    assert shift(shifted, -1).diffs == c.diffs


def test_two_periodic_folding(a2, f3):
    periodic = to_two_periodic(_two_term(a2, f3))
    h0, h1 = periodic.homology()
    assert h0.dim == (1, 0)
    assert h1.is_zero()
    swapped = shift(periodic)
    assert swapped.homology()[1].dim == (1, 0)
    assert shift(periodic, 2) is periodic


def test_two_periodic_needs_zero_composites(a2, f3):
    p1 = _two_term(a2, f3).realize().term(0)
    identity = RepMorphism.identity(p1)
    with pytest.raises(ValueError):
        TwoPeriodicComplex(p1, p1, identity, identity)


def test_zero_complex(a2, f3):
    empty = ProjComplex(a2, f3, 0, (), ())
    assert empty.is_zero()
    assert homology_dims(empty) == {}
    assert _two_term(a2, f3).direct_sum(empty).terms == ((1,), (0,))

import pytest

from services.catalog import catalog_for
from services.quiver import Arrow, Quiver
from services.representations import Rep, direct_sum
from services.root_category import (HLabel, RootCatObject, class_size, hom_dim_d2, hom_orbits, parse_object,
                                    require_not_wild, semisimple_object, sym_form_h, triangle_constant)
from services.tame import aggregate_label
from utils.errors import WildTypeError


def test_parse_object(a2):
    obj = parse_object('S(0,1)+S(1,0)[1]', a2)
    assert str(obj) == 'S(0,1)+S(1,0)[1]'
    assert obj.dim(2) == (-1, 1)
    assert obj.shift().shift() == obj
    assert parse_object('0', a2).is_zero()


def test_hom_in_root_category(a2):
    s1, s2 = parse_object('S(1,0)', a2), parse_object('S(0,1)', a2)
    assert hom_dim_d2(a2, s1, s2.shift()) == 1
    assert hom_dim_d2(a2, s2, s1.shift()) == 0
    assert hom_dim_d2(a2, s1.shift(), s1.shift()) == 1


def test_semisimple_object(a2):
    obj = semisimple_object(a2, (1, -2))
    assert str(obj) == 'S(1,0)+S(0,1)[1]+S(0,1)[1]'


def test_symmetric_form_on_h(a2):
    assert sym_form_h(a2, HLabel((1, 0)), HLabel((1, 0))) == 2
    assert sym_form_h(a2, HLabel((1, 0)), HLabel((0, 1))) == -1


def test_triangle_constants(a2):
    p12 = parse_object('S(1,1)', a2)
    s1, s2 = parse_object('S(1,0)', a2), parse_object('S(0,1)', a2)
    assert triangle_constant(a2, p12, s1, s2) == 1
    assert triangle_constant(a2, p12, s2, s1) == 0
    assert triangle_constant(a2, RootCatObject(), s1, s1.shift()) == 1
    assert triangle_constant(a2, p12.shift(), s1.shift(), s2.shift()) == 1



def test_mixed_triangle_constant(a2):
    p12, s1, s2 = (parse_object(t, a2) for t in ('S(1,1)', 'S(1,0)', 'S(0,1)'))
    assert triangle_constant(a2, s2, p12, s1.shift()) == 1
    assert triangle_constant(a2, s2, s1.shift(), p12) == 0


def test_hom_orbits_for_non_brick(a2, f2):
    s1 = Rep.simple(a2, f2, 0)
    assert len(hom_orbits(direct_sum([s1, s1]), s1)) == 2
    assert len(hom_orbits(s1, Rep.simple(a2, f2, 1))) == 1


def test_class_size_of_aggregate(kronecker):
    catalog = catalog_for(kronecker, 2)
    aggregate = catalog.aggregate(catalog.indecomposables((1, 1))[0][0])
    assert class_size(kronecker, aggregate) == 2
    assert class_size(kronecker, catalog.indecomposables((1, 0))[0][0]) == 1
    assert class_size(kronecker, aggregate_label(kronecker, 2)) == 2


def test_wild_quivers_refused():
    q = Quiver(('1', '2'), tuple(Arrow(label, 0, 1) for label in 'abc'))
    with pytest.raises(WildTypeError):
        require_not_wild(q)

import pytest

from services.catalog import catalog_for, class_dim, format_class, kac_count, parse_class, parse_label
from services.representations import IsoLabel, Rep, direct_sum
from utils.polynomials import IntPolynomial


def test_parse_and_format(a2):
    cls = parse_class('S(1,0)+S(0,1)', a2)
    assert cls == (IsoLabel((0, 1)), IsoLabel((1, 0)))
    assert format_class(cls) == 'S(0,1)+S(1,0)'
    assert parse_label('P(1,1)', a2) == IsoLabel((1, 1))
    assert parse_class('0', a2) == ()
    assert class_dim(cls, 2) == (1, 1)


def test_parse_rejects_wrong_arity(a2):
    with pytest.raises(ValueError):
        parse_label('S(1,0,0)', a2)


def test_a2_classes(a2):
    catalog = catalog_for(a2, 3)
    assert catalog.classes((1, 1)) == [(IsoLabel((0, 1)), IsoLabel((1, 0))), (IsoLabel((1, 1)),)]
    assert len(catalog.classes((2, 1))) == 2


def test_identify(a2, f3):
    catalog = catalog_for(a2, 3)
    split = direct_sum([Rep.simple(a2, f3, 0), Rep.simple(a2, f3, 1)])
    assert catalog.identify(split) == (IsoLabel((0, 1)), IsoLabel((1, 0)))
    p12 = Rep.from_lists(a2, f3, (1, 1), [[[2]]])
    assert catalog.identify(p12) == (IsoLabel((1, 1)),)


def test_kronecker_delta_members(kronecker):
    for p in (2, 3):
        labels = [label for label, _ in catalog_for(kronecker, p).indecomposables((1, 1))]
        assert len(labels) == p + 1
        assert all(label.kind == 'regular' for label in labels)


def test_kac_count_of_delta(kronecker):
    assert kac_count(kronecker, (1, 1)) == IntPolynomial((1, 1))


def test_aggregate_signature(kronecker):
    catalog = catalog_for(kronecker, 2)
    label = catalog.indecomposables((1, 1))[0][0]
    aggregate = catalog.aggregate(label)
    assert aggregate.kind == 'aggregate'
    assert len(catalog.label_members(aggregate)) == 3


def test_kac_count_of_two_delta(kronecker):
    assert kac_count(kronecker, (2, 2)) == IntPolynomial((1, 1))


def test_higher_degree_points_stay_outside_the_aggregate(kronecker):
    catalog = catalog_for(kronecker, 2)
    labels = [label for label, _ in catalog.indecomposables((2, 2))]
    assert len(labels) == 4
    outside = [label for label in labels if not catalog.is_absolute(label)]
    assert [label.tag for label in outside] == ['z=x^2+x+1,l=1,i=0']
    assert catalog.aggregate(outside[0]) == outside[0]
    assert len(catalog.label_members(parse_label('E0(2)', kronecker))) == 3

import pytest

from services.representations import hom_dimension
from services.tame import (TubePoint, aggregate_sign, build_E0, classify_tame, defect, monic_irreducibles,
                           rational_members, regular_members, regular_representative, require_tame, tube_point,
                           tube_points, xi_sign)
from utils.errors import NotTameError


def test_defect_signs(kronecker):
    assert defect(kronecker, (0, 1)) == 1
    assert defect(kronecker, (1, 0)) == -1
    assert defect(kronecker, (1, 1)) == 0


def test_require_tame_refuses_dynkin(a2):
    with pytest.raises(NotTameError):
        require_tame(a2)


def test_tube_points_over_f2():
    assert monic_irreducibles(2, 2) == ((1, 1, 1),)
    assert [point.z for point, _ in tube_points(2, 1)] == ['0', '1', 'inf']


def test_regular_members_count(kronecker, f2, f3):
    assert len(regular_members(kronecker, f2, 1)) == 3
    assert len(regular_members(kronecker, f3, 1)) == 4
    assert len(regular_members(kronecker, f2, 2)) == 4


def test_tube_point_round_trip(kronecker, f2):
    for point, polynomial in tube_points(2, 1) + tube_points(2, 2):
        for length in (1, 2):
            rep = regular_representative(kronecker, f2, point, polynomial, length)
            assert tube_point(rep) == (point, length)


def test_classify_delta(kronecker, f2):
    result = classify_tame(kronecker, (1, 1), f2)
    assert result.total == 3
    assert len(result.regular) == 3
    assert {label.tube for label, _ in result.regular} == {TubePoint('0'), TubePoint('1'), TubePoint('inf')}


def test_classify_preprojective(kronecker, f2):
    result = classify_tame(kronecker, (1, 2), f2)
    assert len(result.preprojective) == 1 and result.total == 1


def test_xi_signs(kronecker, f3):
    for _, rep in regular_members(kronecker, f3, 1):
        assert xi_sign(rep) == aggregate_sign(1) == 1
    for label, rep in regular_members(kronecker, f3, 2):
        assert hom_dimension(rep, rep) == 2
        assert xi_sign(rep) == aggregate_sign(2) == -1


def test_build_e0(kronecker, f3):
    label, members = build_E0(kronecker, 1, f3)
    assert str(label) == 'E0(1)'
    assert len(members) == 4


def test_build_e0_keeps_rational_points(kronecker, f2, f3):
    label, members = build_E0(kronecker, 2, f3)
    assert str(label) == 'E0(2)'
    assert len(members) == 4
    assert all(hom_dimension(rep, rep) == 2 for rep in members)
    assert [lab.tube.z for lab, _ in rational_members(kronecker, f2, 2)] == ['0', '1', 'inf']

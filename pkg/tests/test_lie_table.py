import pytest

from services.lie_table import (assemble_lie_table, bracket, corrupt_constant, export_table, import_table,
                                invariant_form, verify_antisymmetry, verify_counting_at_one,
                                verify_cyclic_symmetry, verify_integral_form, verify_invariance, verify_jacobi,
                                verify_nondegeneracy, verify_shift_involution)
from services.quiver import Arrow, Quiver
from utils.errors import WildTypeError
from utils.quiver_file import named_quiver


@pytest.fixture(scope='module')
def a2_table():
    return assemble_lie_table(named_quiver('a2'))


@pytest.fixture(scope='module')
def a3_table():
    return assemble_lie_table(named_quiver('a3'))


@pytest.fixture(scope='module')
def d4_table():
    return assemble_lie_table(named_quiver('d4'))


@pytest.mark.parametrize('name,dimension', [('a1', 3), ('a2', 8), ('a3', 15)])
def test_dimensions(name, dimension, request):
    assert assemble_lie_table(request.getfixturevalue(name)).dimension == dimension


@pytest.mark.slow
def test_d4_dimension(d4_table):
    assert d4_table.dimension == 28


@pytest.mark.slow
def test_d4_jacobi(d4_table):
    report = verify_jacobi(d4_table)
    assert report.ok, report.render()
    assert report.checked > 0
    assert report.skipped == 0


def test_sl2_brackets(a1):
    table = assemble_lie_table(a1)
    assert bracket(table, 'S(1)', 'S(1)[1]') == {'h_1': 1}
    assert bracket(table, 'h_1', 'S(1)') == {'S(1)': -2}
    assert bracket(table, 'h_1', 'S(1)[1]') == {'S(1)[1]': 2}
    assert invariant_form(table, 'h_1', 'h_1') == -2
    assert invariant_form(table, 'S(1)', 'S(1)[1]') == 1


def test_a2_root_bracket(a2_table):
    assert bracket(a2_table, 'S(1,0)', 'S(0,1)') == {'S(1,1)': 1}
    assert bracket(a2_table, 'S(0,1)', 'S(1,0)') == {'S(1,1)': -1}
    assert bracket(a2_table, 'S(1,0)', 'S(1,1)') == {}


def test_a2_suites_pass(a2_table):
    for check in (verify_antisymmetry, verify_jacobi, verify_invariance, verify_nondegeneracy,
                  verify_shift_involution, verify_cyclic_symmetry, verify_integral_form, verify_counting_at_one):
        report = check(a2_table)
        assert report.ok, report.render()
        assert report.checked > 0


def test_a2_mixed_bracket(a2_table):
    assert bracket(a2_table, 'S(1,1)', 'S(1,0)[1]') == {'S(0,1)': 1}


def test_a3_jacobi(a3_table):
    report = verify_jacobi(a3_table)
    assert report.ok
    assert report.skipped == 0


@pytest.mark.parametrize('check', [verify_invariance, verify_cyclic_symmetry, verify_counting_at_one])
def test_a3_form_and_counting_suites(a3_table, check):
    report = check(a3_table)
    assert report.ok, report.render()
    assert report.checked > 0


def test_export_import(a2, a2_table):
    text = export_table(a2_table)
    again = import_table(text, a2)
    assert again.constants == a2_table.constants
    assert again.gram == a2_table.gram
    assert export_table(again) == text
    assert text.startswith('table: hall:a2\ndimension: 8\nheight_bound: none\n')


def test_corrupted_constant_is_caught(a2_table):
    i, j, k = a2_table.index('S(1,0)'), a2_table.index('S(0,1)'), a2_table.index('S(1,1)')
    broken = corrupt_constant(a2_table, i, j, k)
    assert bracket(broken, 'S(1,0)', 'S(0,1)') == {'S(1,1)': 2}
    report = verify_jacobi(broken)
    assert not report.ok
    assert 'violations: 0' not in report.render()
    assert not verify_invariance(broken).ok


def test_wild_refused():
    q = Quiver(('1', '2'), tuple(Arrow(label, 0, 1) for label in 'abc'), name='wild')
    with pytest.raises(WildTypeError):
        assemble_lie_table(q)


@pytest.mark.slow
def test_kronecker_truncated_table(kronecker):
    table = assemble_lie_table(kronecker, height_bound=2)
    assert table.height_bound == 2
    assert table.unknown
    assert verify_jacobi(table).ok
    assert verify_invariance(table).ok


@pytest.mark.slow
def test_kronecker_table_reaches_two_delta(kronecker):
    table = assemble_lie_table(kronecker, height_bound=4)
    names = [b.name for b in table.basis]
    assert 'E0(2)' in names and 'E0(2)[1]' in names
    assert table.dimension == 14
    assert invariant_form(table, 'E0(1)', 'E0(1)[1]') == 2
    assert invariant_form(table, 'E0(2)', 'E0(2)[1]') == 2
    assert verify_antisymmetry(table).ok

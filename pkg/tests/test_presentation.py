import pytest

from services.lie_table import assemble_lie_table, bracket
from services.presentation import (build_serre_oracle, chevalley_generators, match_presentation,
                                   verify_serre_and_presentation, verify_serre_relations)


def test_oracle_of_a2(a2):
    oracle = build_serre_oracle(a2)
    assert oracle.dimension == 8
    assert bracket(oracle, 'E(1,0)', 'E(0,1)') == {'E(1,1)': -1}
    assert bracket(oracle, 'E(1,0)', 'E(-1,0)') == {'H_1': -1}
    assert bracket(oracle, 'H_1', 'E(1,0)') == {'E(1,0)': 2}


def test_oracle_needs_dynkin(kronecker):
    with pytest.raises(ValueError):
        build_serre_oracle(kronecker)


def test_chevalley_generators(a2):
    table = assemble_lie_table(a2)
    gens = chevalley_generators(table)
    assert [table.basis[k].name for v in gens['e'] for k in v] == ['S(1,0)', 'S(0,1)']
    assert all(list(v.values()) == [-1] for v in gens['f'])


@pytest.mark.parametrize('name', ['a1', 'a2', 'a3'])
def test_serre_relations_hold(name, request):
    report = verify_serre_relations(assemble_lie_table(request.getfixturevalue(name)))
    assert report.ok, report.render()
    assert report.skipped == 0


@pytest.mark.parametrize('name', ['a2', 'a3'])
def test_presentation_match_is_signed_permutation(name, request):
    table = assemble_lie_table(request.getfixturevalue(name))
    match = match_presentation(table)
    assert match.unmapped == []
    assert match.report.ok, match.report.render()
    assert match.signed_permutation() is not None


def test_serre_suite_with_quantum_relations(a2):
    report = verify_serre_and_presentation(assemble_lie_table(a2), quantum=True)
    assert report.ok
    assert any('quantum serre' in line for line in report.lines)


@pytest.mark.slow
def test_serre_on_truncated_kronecker(kronecker):
    report = verify_serre_and_presentation(assemble_lie_table(kronecker, height_bound=2))
    assert report.ok
    assert 'presentation match: not exercised outside finite type' in report.lines


@pytest.mark.slow
def test_serre_and_presentation_on_d4(d4):
    table = assemble_lie_table(d4)
    report = verify_serre_and_presentation(table)
    assert report.ok, report.render()
    assert report.checked > 0
    assert match_presentation(table).signed_permutation() is not None

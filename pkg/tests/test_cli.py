import io

import pytest

from main import build_parser, run_command


def _run(argv, tmp_path):
    out, err = io.StringIO(), io.StringIO()
    code = run_command(argv + ['--cache-dir', str(tmp_path / 'cache')], out, err)
    return code, out.getvalue(), err.getvalue()


def test_roots_a1(tmp_path):
    code, out, _ = _run(['roots', '--quiver', 'a1'], tmp_path)
    assert code == 0
    assert out == "quiver: a1\ntype: finite\nreal_roots: 1\nroot: 1\n"


def test_roots_kronecker(tmp_path):
    code, out, _ = _run(['roots', '--quiver', 'kronecker', '--bound', '4'], tmp_path)
    assert code == 0
    assert 'type: affine' in out
    assert 'imaginary: 1,1\nimaginary: 2,2\n' in out


def test_indecs(tmp_path):
    code, out, _ = _run(['indecs', '--quiver', 'a2', '--dim', '1,1', '--prime', '3'], tmp_path)
    assert code == 0
    assert 'indecomposables: 1\npositive_root: yes\n' in out
    code, out, _ = _run(['indecs', '--quiver', 'kronecker', '--dim', '1,1'], tmp_path)
    assert 'indecomposables: 3' in out


def test_hall_polynomial(tmp_path):
    argv = ['hall', '--quiver', 'a2', '--target', 'S(1,1)', '--quot', 'S(1,0)', '--sub', 'S(0,1)']
    code, out, _ = _run(argv, tmp_path)
    assert code == 0
    assert 'polynomial: 1\nat_one: 1\n' in out
    assert list((tmp_path / 'cache').glob('*.jsonl'))
    again = _run(argv, tmp_path)[1]
    assert again == out


def test_verify_jacobi(tmp_path):
    code, out, _ = _run(['verify', 'jacobi', '--quiver', 'a2'], tmp_path)
    assert code == 0
    assert out.startswith('quiver: a2\nsuite: jacobi\n')
    assert out.endswith('violations: 0\n')


def test_verify_reflection_with_vertex(tmp_path):
    code, out, _ = _run(['verify', 'reflection', '--quiver', 'a2', '--vertex', '1'], tmp_path)
    assert code == 0
    assert 'source: 1' in out
    code, _, err = _run(['verify', 'reflection', '--quiver', 'a2', '--vertex', '2'], tmp_path)
    assert code == 2
    assert err.startswith('error: not a source:')


def test_lie_table_to_file(tmp_path):
    target = tmp_path / 'a1.table'
    code, out, _ = _run(['lie-table', '--quiver', 'a1', '--out', str(target)], tmp_path)
    assert code == 0
    assert out == ''
    assert target.read_text().startswith('table: hall:a1\ndimension: 3\n')


def test_quiver_file_argument(tmp_path):
    path = tmp_path / 'line.qv'
    path.write_text("vertex 1\nvertex 2\narrow x: 2 -> 1\n")
    code, out, _ = _run(['roots', '--quiver', str(path)], tmp_path)
    assert code == 0
    assert out.startswith('quiver: line\n')


@pytest.mark.parametrize('argv,reason', [
    (['roots', '--quiver', 'missing.qv'], 'missing quiver file'),
    (['indecs', '--quiver', 'a2', '--dim', '1,1,1'], 'invalid input'),
    (['hall', '--quiver', 'a2', '--target', 'S(1,1,1)', '--quot', '0', '--sub', '0'], 'invalid input'),
])
def test_refused_input(tmp_path, argv, reason):
    code, _, err = _run(argv, tmp_path)
    assert code == 2
    assert err.startswith(f"error: {reason}")


def test_wild_quiver_refused(tmp_path):
    path = tmp_path / 'wild.qv'
    path.write_text("vertex 1\nvertex 2\narrow a: 1 -> 2\narrow b: 1 -> 2\narrow c: 1 -> 2\n")
    code, _, err = _run(['lie-table', '--quiver', str(path)], tmp_path)
    assert code == 2
    assert err.startswith('error: wild type refused')


def test_parse_error_reports_line(tmp_path):
    path = tmp_path / 'bad.qv'
    path.write_text("vertex 1\nvertex 2\narrow a 1 2\n")
    code, _, err = _run(['roots', '--quiver', str(path)], tmp_path)
    assert code == 2
    assert 'parse error: line 3' in err


def test_parser_lists_every_command():
    parser = build_parser()
    choices = parser._subparsers._group_actions[0].choices
    assert set(choices) == {'roots', 'indecs', 'hall', 'lie-table', 'verify'}


def test_unknown_suite_exits_with_usage(tmp_path, capsys):
    code, _, _ = _run(['verify', 'nothing', '--quiver', 'a2'], tmp_path)
    assert code == 2

from pathlib import Path

import pytest

from utils.errors import QuiverParseError, UnknownVertexError
from utils.quiver_file import (canonical_text, content_hash, load_quiver_file, named_quiver, parse_quiver_file)

QUIVERS = Path(__file__).resolve().parent.parent / 'quivers'


def test_parse_a2():
    q = parse_quiver_file("vertex 1\nvertex 2\narrow a: 1 -> 2\n", 'a2')
    assert q.vertices == ('1', '2')
    assert q.arrows[0].source == 0 and q.arrows[0].target == 1
    assert q.name == 'a2'


def test_comments_and_blank_lines():
    q = parse_quiver_file("# sample\n\nvertex x   # first\nvertex y\narrow f: x -> y\n")
    assert q.vertices == ('x', 'y')


def test_declaration_order_does_not_change_hash():
    one = parse_quiver_file("vertex 10\nvertex 2\narrow b: 2 -> 10\narrow a: 2 -> 10\n")
    two = parse_quiver_file("arrow a: 2 -> 10\nvertex 2\narrow b: 2 -> 10\nvertex 10\n")
    assert one.vertices == ('2', '10')
    assert [a.label for a in one.arrows] == ['a', 'b']
    assert content_hash(one) == content_hash(two)
    assert canonical_text(one) == "vertex 2\nvertex 10\narrow a: 2 -> 10\narrow b: 2 -> 10\n"


def test_relations():
    q = parse_quiver_file("vertex 1\nvertex 2\nvertex 3\narrow a: 1 -> 2\narrow b: 2 -> 3\nrelation +1 a.b\n")
    assert len(q.relations) == 1
    assert q.relations[0].terms == ((1, ('a', 'b')),)
    assert 'relation +1 a.b' in canonical_text(q)


@pytest.mark.parametrize('text,line', [
    ("vertex 1\nvertex 1\n", 2),
    ("vertex 1\nedge a: 1 -> 1\n", 2),
    ("vertex 1\nvertex 2\narrow a: 1 -> 1\n", 3),
    ("vertex 1\nvertex 2\narrow a: 1 -> 2\narrow a: 2 -> 1\n", 4),
    ("vertex 1\nvertex 2\narrow a: 1 -> 2\nrelation +1 a.c\n", 4),
    ("vertex 1\nvertex 2\narrow a: 1 -> 2\nrelation +2 a\n", 4),
])
def test_parse_errors(text, line):
    with pytest.raises(QuiverParseError) as info:
        parse_quiver_file(text)
    assert info.value.line_number == line


def test_unknown_vertex():
    with pytest.raises(UnknownVertexError) as info:
        parse_quiver_file("vertex 1\narrow a: 1 -> 7\n")
    assert info.value.vertex == '7'
    assert info.value.reason == 'unknown vertex'


@pytest.mark.parametrize('name', ['a1', 'a2', 'a3', 'd4', 'kronecker'])
def test_shipped_files_match_builtins(name):
    loaded = load_quiver_file(QUIVERS / f"{name}.qv")
    assert loaded.quiver == named_quiver(name)
    assert loaded.hash == content_hash(named_quiver(name))


def test_unknown_builtin():
    with pytest.raises(KeyError):
        named_quiver('e8')

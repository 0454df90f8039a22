import hashlib
import logging
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Tuple, Union

from services.quiver import Arrow, Quiver, Relation
from utils.errors import QuiverParseError, UnknownVertexError

logger = logging.getLogger('roothall')


def _natural_key(label: str):
    return (0, int(label), '') if label.isdigit() else (1, 0, label)


class QuiverFileParser:
    """
    Line grammar:

        vertex <id>
        arrow <id>: <src> -> <dst>
        relation <+-1> <path> [<+-1> <path> ...]

    Paths are arrow ids joined by '.' in traversal order. '#' starts a comment.
    """

    def __init__(self):
        self.patterns = {
            'vertex': re.compile(r'^vertex\s+(?P<id>[A-Za-z0-9_]+)$'),
            'arrow': re.compile(r'^arrow\s+(?P<id>[A-Za-z0-9_]+)\s*:\s*(?P<src>\S+)\s*->\s*(?P<dst>\S+)$'),
            'relation': re.compile(r'^relation\s+(?P<body>.+)$'),
        }
        self.term_pattern = re.compile(r'^[+-]?1$')

    def parse(self, text: str, name: str = '') -> Quiver:
        vertices: List[str] = []
        arrows: List[Tuple[str, str, str, int]] = []
        relations: List[Tuple[List[Tuple[int, Tuple[str, ...]]], int]] = []
        for line_number, raw in enumerate(text.splitlines(), start=1):
            line = raw.split('#', 1)[0].strip()
            if not line:
                continue
            keyword = line.split()[0]
            match = self.patterns[keyword].match(line) if keyword in self.patterns else None
            if match is None:
                raise QuiverParseError(line_number, f"cannot parse '{line}'")
            if keyword == 'vertex':
                if match['id'] in vertices:
                    raise QuiverParseError(line_number, f"vertex '{match['id']}' declared twice")
                vertices.append(match['id'])
            elif keyword == 'arrow':
                if any(a[0] == match['id'] for a in arrows):
                    raise QuiverParseError(line_number, f"arrow '{match['id']}' declared twice")
                arrows.append((match['id'], match['src'], match['dst'], line_number))
            else:
                relations.append((self._relation_terms(match['body'], line_number), line_number))

        vertices.sort(key=_natural_key)
        position = {v: i for i, v in enumerate(vertices)}
        built: List[Arrow] = []
        for label, src, dst, line_number in sorted(arrows, key=lambda a: (a[0],)):
            for v in (src, dst):
                if v not in position:
                    raise UnknownVertexError(line_number, v)
            if src == dst:
                raise QuiverParseError(line_number, f"arrow '{label}' is a loop")
            built.append(Arrow(label, position[src], position[dst]))
        labels = {a.label for a in built}
        canonical_relations = []
        for terms, line_number in relations:
            for _, path in terms:
                for label in path:
                    if label not in labels:
                        raise QuiverParseError(line_number, f"unknown arrow '{label}'")
            canonical_relations.append(Relation(tuple(sorted(terms))))
        quiver = Quiver(tuple(vertices), tuple(built), tuple(sorted(canonical_relations, key=str)), name)
        logger.debug(f"Parsed quiver {name or vertices}: {len(vertices)} vertices, {len(built)} arrows, "
                     f"{len(canonical_relations)} relations")
        return quiver

    def _relation_terms(self, body: str, line_number: int) -> List[Tuple[int, Tuple[str, ...]]]:
        tokens = body.split()
        if len(tokens) % 2:
            raise QuiverParseError(line_number, 'relation needs <+-1> <path> pairs')
        terms = []
        for coefficient, path in zip(tokens[::2], tokens[1::2]):
            if not self.term_pattern.match(coefficient):
                raise QuiverParseError(line_number, f"coefficient '{coefficient}' is not +1 or -1")
            terms.append((int(coefficient), tuple(path.split('.'))))
        return terms


def canonical_text(q: Quiver) -> str:
    """Order-insensitive rendering: natural vertex order, arrows by label, sorted relations."""
    lines = [f"vertex {v}" for v in q.vertices]
    for a in sorted(q.arrows, key=lambda a: a.label):
        lines.append(f"arrow {a.label}: {q.vertices[a.source]} -> {q.vertices[a.target]}")
    for r in q.relations:
        body = ' '.join(f"{'+1' if c > 0 else '-1'} {'.'.join(path)}" for c, path in r.terms)
        lines.append(f"relation {body}")
    return '\n'.join(lines) + '\n'


def content_hash(q: Quiver) -> str:
    return hashlib.sha256(canonical_text(q).encode('utf-8')).hexdigest()


@dataclass(frozen=True)
class QuiverFile:
    path: str
    quiver: Quiver
    hash: str


def parse_quiver_file(text: str, name: str = '') -> Quiver:
    return QuiverFileParser().parse(text, name)


def load_quiver_file(path: Union[str, Path]) -> QuiverFile:
    path = Path(path)
    quiver = parse_quiver_file(path.read_text(encoding='utf-8'), path.stem)
    return QuiverFile(str(path), quiver, content_hash(quiver))


_NAMED: Dict[str, str] = {
    'a1': "vertex 1\n",
    'a2': "vertex 1\nvertex 2\narrow a: 1 -> 2\n",
    'a3': "vertex 1\nvertex 2\nvertex 3\narrow a: 1 -> 2\narrow b: 2 -> 3\n",
    'd4': "vertex 1\nvertex 2\nvertex 3\nvertex 4\narrow a: 1 -> 2\narrow b: 3 -> 2\narrow c: 4 -> 2\n",
    'kronecker': "vertex 1\nvertex 2\narrow a: 1 -> 2\narrow b: 1 -> 2\n",
}


def named_quiver(name: str) -> Quiver:
    """Built-in sample quivers, the same as the files shipped under quivers/."""
    if name not in _NAMED:
        raise KeyError(name)
    return parse_quiver_file(_NAMED[name], name)

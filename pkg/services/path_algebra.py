"""Indecomposable projectives of a path algebra and maps between their direct sums as path matrices."""
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

import numpy as np

from services.quiver import Quiver
from services.representations import Rep, RepMorphism, direct_sum
from utils.field_linalg import FMatrix, PrimeField, complement_basis, hstack

logger = logging.getLogger('roothall')

Path = Tuple[str, ...]
PathCombination = Dict[Path, int]


@lru_cache(maxsize=None)
def paths_between(q: Quiver, i: int, j: int) -> Tuple[Path, ...]:
    """Paths from i to j as arrow labels in traversal order; () is the trivial path when i == j."""
    q.require_hereditary()
    if q.has_cycles():
        raise ValueError(f"Quiver {q.name or q.vertices} has oriented cycles")
    out: List[Path] = []

    def walk(v: int, prefix: Path):
        if v == j:
            out.append(prefix)
        for arrow in q.arrows_from(v):
            walk(arrow.target, prefix + (arrow.label,))

    walk(i, ())
    return tuple(sorted(out, key=lambda p: (len(p), p)))


def path_end(q: Quiver, start: int, path: Path) -> int:
    return q.arrow(path[-1]).target if path else start


@lru_cache(maxsize=None)
def projective(q: Quiver, field: PrimeField, i: int) -> Rep:
    """P_i: at vertex v the span of paths from i to v; arrows act by appending."""
    dim = tuple(len(paths_between(q, i, v)) for v in range(q.n))
    mats = []
    for arrow in q.arrows:
        sources = paths_between(q, i, arrow.source)
        targets = {p: k for k, p in enumerate(paths_between(q, i, arrow.target))}
        m = np.zeros((dim[arrow.target], dim[arrow.source]), dtype=np.int64)
        for col, p in enumerate(sources):
            m[targets[p + (arrow.label,)], col] = 1
        mats.append(FMatrix(field, m))
    return Rep(q, field, dim, tuple(mats))


def projective_sum(q: Quiver, field: PrimeField, vertices: Sequence[int]) -> Rep:
    if not vertices:
        return Rep.zero(q, field)
    return direct_sum([projective(q, field, i) for i in vertices])


def _offsets(q: Quiver, field: PrimeField, vertices: Sequence[int]) -> List[List[int]]:
    """offsets[k][v]: first coordinate of summand k at vertex v."""
    running = [0] * q.n
    out = []
    for i in vertices:
        out.append(list(running))
        rep = projective(q, field, i)
        for v in range(q.n):
            running[v] += rep.dim[v]
    return out


def reduce_combination(c: PathCombination, p: int) -> PathCombination:
    return {path: v % p for path, v in c.items() if v % p}


def compose_combinations(after: PathCombination, before: PathCombination, p: int) -> PathCombination:
    """Composite of P_i -> P_m (paths m to i) followed by P_m -> P_j (paths j to m)."""
    out: Dict[Path, int] = {}
    for w2, c2 in after.items():
        for w1, c1 in before.items():
            key = w2 + w1
            out[key] = (out.get(key, 0) + c2 * c1) % p
    return reduce_combination(out, p)


@dataclass(frozen=True)
class PathMatrix:
    """
    Map from the sum of P_{sources[k]} to the sum of P_{targets[l]}.

    entries[l][k] combines paths from targets[l] to sources[k].
    """
    quiver: Quiver
    field: PrimeField
    sources: Tuple[int, ...]
    targets: Tuple[int, ...]
    entries: Tuple[Tuple[Tuple[Tuple[Path, int], ...], ...], ...]

    @classmethod
    def build(cls, q: Quiver, field: PrimeField, sources: Sequence[int], targets: Sequence[int],
              entries: Sequence[Sequence[PathCombination]]) -> 'PathMatrix':
        frozen = []
        for l, row in enumerate(entries):
            frozen_row = []
            for k, c in enumerate(row):
                c = reduce_combination(c, field.p)
                for path in c:
                    starts_right = not path or q.arrow(path[0]).source == targets[l]
                    if path_end(q, targets[l], path) != sources[k] or not starts_right:
                        raise ValueError(f"Path {path} does not run from {targets[l]} to {sources[k]}")
                frozen_row.append(tuple(sorted(c.items())))
            frozen.append(tuple(frozen_row))
        return cls(q, field, tuple(sources), tuple(targets), tuple(frozen))

    @classmethod
    def zero(cls, q: Quiver, field: PrimeField, sources: Sequence[int], targets: Sequence[int]) -> 'PathMatrix':
        return cls.build(q, field, sources, targets, [[{} for _ in sources] for _ in targets])

    @classmethod
    def identity(cls, q: Quiver, field: PrimeField, vertices: Sequence[int]) -> 'PathMatrix':
        return cls.build(q, field, vertices, vertices,
                         [[{(): 1} if k == l else {} for k in range(len(vertices))] for l in range(len(vertices))])

    def entry(self, l: int, k: int) -> PathCombination:
        return dict(self.entries[l][k])

    def rows(self) -> List[List[PathCombination]]:
        return [[self.entry(l, k) for k in range(len(self.sources))] for l in range(len(self.targets))]

    def compose(self, other: 'PathMatrix') -> 'PathMatrix':
        """self after other."""
        p = self.field.p
        out = []
        for l in range(len(self.targets)):
            row = []
            for k in range(len(other.sources)):
                acc: PathCombination = {}
                for m in range(len(self.sources)):
                    for path, c in compose_combinations(self.entry(l, m), other.entry(m, k), p).items():
                        acc[path] = acc.get(path, 0) + c
                row.append(acc)
            out.append(row)
        return PathMatrix.build(self.quiver, self.field, other.sources, self.targets, out)

    def __add__(self, other: 'PathMatrix') -> 'PathMatrix':
        out = []
        for l in range(len(self.targets)):
            row = []
            for k in range(len(self.sources)):
                acc = self.entry(l, k)
                for path, c in other.entry(l, k).items():
                    acc[path] = acc.get(path, 0) + c
                row.append(acc)
            out.append(row)
        return PathMatrix.build(self.quiver, self.field, self.sources, self.targets, out)

    def scale(self, c: int) -> 'PathMatrix':
        return PathMatrix.build(self.quiver, self.field, self.sources, self.targets,
                                [[{path: c * v for path, v in self.entry(l, k).items()}
                                  for k in range(len(self.sources))] for l in range(len(self.targets))])

    def is_zero(self) -> bool:
        return all(not entry for row in self.entries for entry in row)

    def is_radical(self) -> bool:
        """No entry carries the trivial path."""
        return all(path for row in self.entries for entry in row for path, _ in entry)

    def select(self, keep_targets: Sequence[int], keep_sources: Sequence[int]) -> 'PathMatrix':
        return PathMatrix.build(self.quiver, self.field, [self.sources[k] for k in keep_sources],
                                [self.targets[l] for l in keep_targets],
                                [[self.entry(l, k) for k in keep_sources] for l in keep_targets])

    def realize(self) -> RepMorphism:
        """The RepMorphism between the realized projective sums."""
        q, field = self.quiver, self.field
        source = projective_sum(q, field, self.sources)
        target = projective_sum(q, field, self.targets)
        src_off = _offsets(q, field, self.sources)
        tgt_off = _offsets(q, field, self.targets)
        comps = [np.zeros((target.dim[v], source.dim[v]), dtype=np.int64) for v in range(q.n)]
        for l, j in enumerate(self.targets):
            for k, i in enumerate(self.sources):
                for w, c in self.entries[l][k]:
                    for v in range(q.n):
                        index = {path: r for r, path in enumerate(paths_between(q, j, v))}
                        for col, path in enumerate(paths_between(q, i, v)):
                            comps[v][tgt_off[l][v] + index[w + path], src_off[k][v] + col] += c
        return RepMorphism(source, target, tuple(FMatrix(field, m) for m in comps))


def path_matrix_from_morphism(f: RepMorphism, sources: Sequence[int], targets: Sequence[int]) -> PathMatrix:
    """Read a morphism of realized projective sums back as a path matrix via the images of the idempotents."""
    q, field = f.source.quiver, f.source.field
    src_off = _offsets(q, field, sources)
    tgt_off = _offsets(q, field, targets)
    entries = []
    for l, j in enumerate(targets):
        row = []
        for k, i in enumerate(sources):
            column = f.components[i].column(src_off[k][i])
            c = {}
            for r, path in enumerate(paths_between(q, j, i)):
                value = int(column[tgt_off[l][i] + r]) % field.p
                if value:
                    c[path] = value
            row.append(c)
        entries.append(row)
    return PathMatrix.build(q, field, sources, targets, entries)


def projective_cover(x: Rep) -> Tuple[Tuple[int, ...], RepMorphism]:
    """
    Projective cover: one P_i per basis vector of the top of x at i.

    Returns:
        (vertices, epimorphism from the realized sum onto x)
    """
    q, field = x.quiver, x.field
    vertices: List[int] = []
    generators: List[np.ndarray] = []
    for i in range(q.n):
        incoming = [x.matrices[k] for k, a in enumerate(q.arrows) if a.target == i]
        radical = hstack(incoming) if incoming else FMatrix.zeros(field, x.dim[i], 0)
        top = complement_basis(radical, x.dim[i])
        for col in range(top.cols):
            vertices.append(i)
            generators.append(top.column(col))
    cover = projective_sum(q, field, vertices)
    offsets = _offsets(q, field, vertices)
    comps = [np.zeros((x.dim[v], cover.dim[v]), dtype=np.int64) for v in range(q.n)]
    for k, (i, g) in enumerate(zip(vertices, generators)):
        for v in range(q.n):
            for col, path in enumerate(paths_between(q, i, v)):
                image = x.path_map(path).data @ g if path else g
                comps[v][:, offsets[k][v] + col] = image
    logger.debug(f"Projective cover of dimension {x.dim}: vertices {vertices}")
    return tuple(vertices), RepMorphism(cover, x, tuple(FMatrix(field, m) for m in comps))

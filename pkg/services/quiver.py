"""Quivers, Euler forms and real roots."""
import logging
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import Matrix, ilcm

from utils.errors import DisconnectedQuiverError, RelationsPresentError

logger = logging.getLogger('roothall')

DimVector = Tuple[int, ...]


@dataclass(frozen=True)
class Arrow:
    label: str
    source: int
    target: int


@dataclass(frozen=True)
class Relation:
    """Signed combination of paths; each path lists arrow labels in traversal order."""
    terms: Tuple[Tuple[int, Tuple[str, ...]], ...]


@dataclass(frozen=True)
class Quiver:
    vertices: Tuple[str, ...]
    arrows: Tuple[Arrow, ...]
    relations: Tuple[Relation, ...] = ()
    name: str = ''

    def __post_init__(self):
        n = len(self.vertices)
        for arrow in self.arrows:
            if not (0 <= arrow.source < n and 0 <= arrow.target < n):
                raise ValueError(f"Arrow {arrow.label} references a vertex outside 0..{n - 1}")
            if arrow.source == arrow.target:
                raise ValueError(f"Arrow {arrow.label} is a loop; loops are not supported")

    @property
    def n(self) -> int:
        return len(self.vertices)

    def index(self, label: str) -> int:
        return self.vertices.index(label)

    def arrow(self, label: str) -> Arrow:
        for a in self.arrows:
            if a.label == label:
                return a
        raise KeyError(label)

    def arrows_from(self, i: int) -> List[Arrow]:
        return [a for a in self.arrows if a.source == i]

    def arrows_to(self, i: int) -> List[Arrow]:
        return [a for a in self.arrows if a.target == i]

    def is_source(self, i: int) -> bool:
        return not self.arrows_to(i)

    def is_sink(self, i: int) -> bool:
        return not self.arrows_from(i)

    def has_cycles(self) -> bool:
        remaining = set(range(self.n))
        while remaining:
            sinks = [i for i in remaining
                     if not any(a.source == i and a.target in remaining for a in self.arrows)]
            if not sinks:
                return True
            remaining -= set(sinks)
        return False

    def is_connected(self) -> bool:
        if self.n == 0:
            return False
        seen = {0}
        todo = [0]
        while todo:
            i = todo.pop()
            for a in self.arrows:
                for u, w in ((a.source, a.target), (a.target, a.source)):
                    if u == i and w not in seen:
                        seen.add(w)
                        todo.append(w)
        return len(seen) == self.n

    def require_hereditary(self):
        if self.relations:
            raise RelationsPresentError(f"Quiver {self.name or self.vertices} carries {len(self.relations)} relations")

    def reflected_at(self, a: int) -> 'Quiver':
        """The quiver with every arrow at vertex a reversed."""
        arrows = tuple(Arrow(x.label, x.target, x.source) if a in (x.source, x.target) else x
                       for x in self.arrows)
        return Quiver(self.vertices, arrows, (), f"{self.name}^{self.vertices[a]}" if self.name else '')

    def simple(self, i: int) -> DimVector:
        return tuple(1 if j == i else 0 for j in range(self.n))


@dataclass(frozen=True)
class CartanDatum:
    index_set: Tuple[str, ...]
    matrix: Tuple[Tuple[int, ...], ...]

    def a(self, i: int, j: int) -> int:
        return self.matrix[i][j]

    def pairing(self, d: Sequence[int], e: Sequence[int]) -> int:
        n = len(self.index_set)
        return sum(d[i] * self.matrix[i][j] * e[j] for i in range(n) for j in range(n))


@dataclass(frozen=True)
class RootSystem:
    quiver_type: str
    real_roots: Tuple[DimVector, ...]
    imaginary_root: Optional[DimVector] = None
    height_bound: Optional[int] = None

    def __contains__(self, d) -> bool:
        return tuple(d) in self.real_roots

    def imaginary_roots(self, height_bound: int) -> List[DimVector]:
        if self.imaginary_root is None:
            return []
        out = []
        k = 1
        while height(tuple(k * x for x in self.imaginary_root)) <= height_bound:
            out.append(tuple(k * x for x in self.imaginary_root))
            k += 1
        return out


def height(d: Sequence[int]) -> int:
    return sum(d)


def euler_form(q: Quiver, d: Sequence[int], e: Sequence[int]) -> int:
    """<d, e> = sum_i d_i e_i - sum_arrows d_s e_t."""
    q.require_hereditary()
    return (sum(d[i] * e[i] for i in range(q.n))
            - sum(d[a.source] * e[a.target] for a in q.arrows))


def symmetric_form(q: Quiver, d: Sequence[int], e: Sequence[int]) -> int:
    return euler_form(q, d, e) + euler_form(q, e, d)


def cartan_datum(q: Quiver) -> CartanDatum:
    n = q.n
    basis = [q.simple(i) for i in range(n)]
    return CartanDatum(q.vertices, tuple(tuple(symmetric_form(q, basis[i], basis[j]) for j in range(n))
                                         for i in range(n)))


def reflect(q: Quiver, i: int, d: Sequence[int]) -> DimVector:
    """s_i(d) = d - (d, alpha_i) alpha_i."""
    c = symmetric_form(q, d, q.simple(i))
    return tuple(x - c if j == i else x for j, x in enumerate(d))


def _positive_definite(m: Matrix) -> bool:
    return all(m[:k, :k].det() > 0 for k in range(1, m.rows + 1))


@lru_cache(maxsize=None)
def quiver_type(q: Quiver) -> str:
    """'finite', 'affine' or 'wild' for a connected relation-free quiver."""
    c = Matrix(cartan_datum(q).matrix)
    if _positive_definite(c):
        return 'finite'
    if c.det() == 0:
        minors = [c.extract([j for j in range(q.n) if j != i], [j for j in range(q.n) if j != i])
                  for i in range(q.n)]
        if all(_positive_definite(m) for m in minors):
            return 'affine'
    return 'wild'


@lru_cache(maxsize=None)
def imaginary_root(q: Quiver) -> Optional[DimVector]:
    """The minimal positive imaginary root delta of an affine quiver."""
    if quiver_type(q) != 'affine':
        return None
    kernel = Matrix(cartan_datum(q).matrix).nullspace()[0]
    scale = ilcm(*[x.q for x in kernel])
    vec = [int(x * scale) for x in kernel]
    if vec[0] < 0:
        vec = [-x for x in vec]
    g = 0
    for x in vec:
        g = gcd(g, x)
    return tuple(x // g for x in vec)


@lru_cache(maxsize=None)
def enumerate_roots(q: Quiver, height_bound: int = 0) -> RootSystem:
    """
    Positive real roots reached from the simples by height-increasing reflections.

    Finite type ignores the bound and returns every positive root.

    Raises:
        DisconnectedQuiverError: for disconnected input
    """
    if not q.is_connected():
        raise DisconnectedQuiverError(f"Quiver {q.name or q.vertices} is not connected")
    kind = quiver_type(q)
    bound = None if kind == 'finite' else height_bound
    found = set()
    todo = deque(q.simple(i) for i in range(q.n))
    while todo:
        root = todo.popleft()
        if root in found:
            continue
        found.add(root)
        for i in range(q.n):
            image = reflect(q, i, root)
            if height(image) > height(root) and (bound is None or height(image) <= bound):
                if image not in found:
                    todo.append(image)
    roots = tuple(sorted(found, key=lambda r: (height(r), r)))
    logger.debug(f"Enumerated {len(roots)} real roots of {q.name or q.vertices} ({kind}, bound {bound})")
    return RootSystem(kind, roots, imaginary_root(q), bound)


def is_real_root(q: Quiver, d: Sequence[int]) -> bool:
    d = tuple(d)
    if any(x < 0 for x in d):
        d = tuple(-x for x in d)
    if any(x < 0 for x in d) or not any(d):
        return False
    return d in enumerate_roots(q, height(d)).real_roots


def is_delta_multiple(q: Quiver, d: Sequence[int]) -> int:
    """n when d = n*delta with n > 0, else 0."""
    delta = imaginary_root(q)
    if delta is None or not any(d):
        return 0
    k = d[0] // delta[0] if delta[0] else 0
    if k > 0 and tuple(k * x for x in delta) == tuple(d):
        return k
    return 0


def vector_add(d: Sequence[int], e: Sequence[int]) -> DimVector:
    return tuple(x + y for x, y in zip(d, e))


def vector_sub(d: Sequence[int], e: Sequence[int]) -> DimVector:
    return tuple(x - y for x, y in zip(d, e))


def vector_neg(d: Sequence[int]) -> DimVector:
    return tuple(-x for x in d)


def euler_cocycle(q: Quiver, d: Sequence[int], e: Sequence[int], convention: str = 'euler') -> int:
    """
    Sign twist on the root lattice.

    'euler' is (-1)^<d,e>, 'transpose' is (-1)^<e,d> and 'trivial' is constantly 1.
    """
    if convention == 'trivial':
        return 1
    if convention == 'transpose':
        d, e = e, d
    elif convention != 'euler':
        raise ValueError(f"Unknown sign convention '{convention}'")
    return -1 if euler_form(q, d, e) % 2 else 1

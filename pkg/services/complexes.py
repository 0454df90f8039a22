"""Bounded and 2-periodic complexes: homology, minimal projective models, resolutions, cones and shifts."""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from services.path_algebra import PathMatrix, path_matrix_from_morphism, projective_cover, projective_sum
from services.quiver import Quiver
from services.representations import Rep, RepMorphism, direct_sum, kernel_cokernel, subspace_coordinates
from utils.field_linalg import FMatrix, PrimeField

logger = logging.getLogger('roothall')


def rep_sum(q: Quiver, fld: PrimeField, reps: Sequence[Rep]) -> Rep:
    return direct_sum(list(reps)) if reps else Rep.zero(q, fld)


def block_morphism(sources: Sequence[Rep], targets: Sequence[Rep],
                   blocks: Dict[Tuple[int, int], RepMorphism], q: Quiver, fld: PrimeField) -> RepMorphism:
    """Morphism between direct sums; blocks[(l, k)] maps sources[k] to targets[l]."""
    source, target = rep_sum(q, fld, sources), rep_sum(q, fld, targets)
    comps = []
    for v in range(q.n):
        m = np.zeros((target.dim[v], source.dim[v]), dtype=np.int64)
        row_off = np.cumsum([0] + [t.dim[v] for t in targets])
        col_off = np.cumsum([0] + [s.dim[v] for s in sources])
        for (l, k), f in blocks.items():
            m[row_off[l]:row_off[l + 1], col_off[k]:col_off[k + 1]] = f.components[v].data
        comps.append(FMatrix(fld, m))
    return RepMorphism(source, target, tuple(comps))


def summand_projection(reps: Sequence[Rep], l: int, q: Quiver, fld: PrimeField) -> RepMorphism:
    return block_morphism(reps, [reps[l]], {(0, l): RepMorphism.identity(reps[l])}, q, fld)


def same_morphism(f: RepMorphism, g: RepMorphism) -> bool:
    return all(a == b for a, b in zip(f.components, g.components))


def _rank(f: RepMorphism, v: int) -> int:
    return f.components[v].rank()


def homology_of(d_in: RepMorphism, d_out: RepMorphism) -> Rep:
    """ker d_out / im d_in for A -> X -> B with d_out d_in = 0."""
    ker, incl, _, _ = kernel_cokernel(d_out)
    x = d_out.source
    comps = tuple(subspace_coordinates(incl.components[v], x.dim[v]) @ d_in.components[v] for v in range(x.quiver.n))
    induced = RepMorphism(d_in.source, ker, comps)
    return kernel_cokernel(induced)[2]


@dataclass(frozen=True, eq=False)
class GeneralComplex:
    """X_lo -> ... -> X_hi with diffs[k]: terms[k] -> terms[k + 1]."""
    quiver: Quiver
    field: PrimeField
    lo: int
    terms: Tuple[Rep, ...]
    diffs: Tuple[RepMorphism, ...] = ()

    def __post_init__(self):
        if len(self.diffs) != max(len(self.terms) - 1, 0):
            raise ValueError(f"{len(self.terms)} terms need {max(len(self.terms) - 1, 0)} differentials")
        for k, d in enumerate(self.diffs):
            if d.source.dim != self.terms[k].dim or d.target.dim != self.terms[k + 1].dim:
                raise ValueError(f"Differential {self.lo + k} does not match its terms")
        for k in range(len(self.diffs) - 1):
            if not self.diffs[k + 1].compose(self.diffs[k]).is_zero():
                raise ValueError(f"Differentials at {self.lo + k}, {self.lo + k + 1} do not compose to zero")

    @classmethod
    def stalk(cls, rep: Rep, degree: int = 0) -> 'GeneralComplex':
        return cls(rep.quiver, rep.field, degree, (rep,), ())

    @classmethod
    def zero(cls, q: Quiver, fld: PrimeField) -> 'GeneralComplex':
        return cls(q, fld, 0, (), ())

    @property
    def hi(self) -> int:
        return self.lo + len(self.terms) - 1

    def term(self, n: int) -> Rep:
        if self.lo <= n <= self.hi:
            return self.terms[n - self.lo]
        return Rep.zero(self.quiver, self.field)

    def diff(self, n: int) -> RepMorphism:
        """d_n: X_n -> X_{n+1}."""
        if self.lo <= n < self.hi:
            return self.diffs[n - self.lo]
        return RepMorphism.zero(self.term(n), self.term(n + 1))

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)


Complex = Union[GeneralComplex, 'ProjComplex']


def _general(c: Complex) -> GeneralComplex:
    return c.realize() if isinstance(c, ProjComplex) else c


def homology(c: Complex, n: Optional[int] = None) -> Union[Rep, Dict[int, Rep]]:
    """H_n = ker d_n / im d_(n-1); every degree when n is omitted."""
    c = _general(c)
    if n is None:
        return {k: homology(c, k) for k in c.degrees()}
    return homology_of(c.diff(n - 1), c.diff(n))


def homology_dims(c: Complex) -> Dict[int, Tuple[int, ...]]:
    """Nonzero homology dimension vectors by degree, from ranks."""
    c = _general(c)
    out = {}
    for n in c.degrees():
        x = c.term(n)
        dims = tuple(x.dim[v] - _rank(c.diff(n), v) - _rank(c.diff(n - 1), v) for v in range(c.quiver.n))
        if any(dims):
            out[n] = dims
    return out


def is_acyclic(c: Complex) -> bool:
    return not homology_dims(c)


@dataclass(frozen=True, eq=False)
class ChainMap:
    source: GeneralComplex
    target: GeneralComplex
    components: Dict[int, RepMorphism] = field(default_factory=dict)

    def __post_init__(self):
        lo = min(self.source.lo, self.target.lo) - 1
        hi = max(self.source.hi, self.target.hi) + 1
        for n in range(lo, hi + 1):
            left = self.target.diff(n).compose(self.component(n))
            right = self.component(n + 1).compose(self.source.diff(n))
            if not same_morphism(left, right):
                raise ValueError(f"Chain map does not commute at degree {n}")

    def component(self, n: int) -> RepMorphism:
        if n in self.components:
            return self.components[n]
        return RepMorphism.zero(self.source.term(n), self.target.term(n))

    @classmethod
    def identity(cls, c: GeneralComplex) -> 'ChainMap':
        return cls(c, c, {n: RepMorphism.identity(c.term(n)) for n in c.degrees()})


def cone(f: ChainMap) -> GeneralComplex:
    """cone_n = X_{n+1} + Y_n with d(x, y) = (-dx, f x + dy)."""
    x, y = f.source, f.target
    q, fld = x.quiver, x.field
    lo = min(x.lo - 1, y.lo)
    hi = max(x.hi - 1, y.hi)
    terms = [rep_sum(q, fld, [x.term(n + 1), y.term(n)]) for n in range(lo, hi + 1)]
    diffs = []
    for n in range(lo, hi):
        blocks = {(0, 0): x.diff(n + 1).scale(-1), (1, 0): f.component(n + 1), (1, 1): y.diff(n)}
        diffs.append(block_morphism([x.term(n + 1), y.term(n)], [x.term(n + 2), y.term(n + 1)], blocks, q, fld))
    return GeneralComplex(q, fld, lo, tuple(terms), tuple(diffs))


def is_quasi_iso(f: ChainMap) -> bool:
    """Every induced map on homology is an isomorphism, tested as acyclicity of the cone."""
    return is_acyclic(cone(f))


@dataclass(frozen=True, eq=False)
class TwoPeriodicComplex:
    """C0 -> C1 -> C0 with d1 d0 = 0 and d0 d1 = 0."""
    c0: Rep
    c1: Rep
    d0: RepMorphism
    d1: RepMorphism

    def __post_init__(self):
        if not self.d1.compose(self.d0).is_zero() or not self.d0.compose(self.d1).is_zero():
            raise ValueError("Periodic differentials do not compose to zero")

    def homology(self) -> Tuple[Rep, Rep]:
        return homology_of(self.d1, self.d0), homology_of(self.d0, self.d1)

    def shift(self, k: int = 1) -> 'TwoPeriodicComplex':
        if k % 2 == 0:
            return self
        return TwoPeriodicComplex(self.c1, self.c0, self.d1.scale(-1), self.d0.scale(-1))


def shift(c: Union[GeneralComplex, 'ProjComplex', TwoPeriodicComplex], k: int = 1):
    """X[k]_n = X_{n+k}; differentials change sign for odd k."""
    if isinstance(c, TwoPeriodicComplex):
        return c.shift(k)
    sign = -1 if k % 2 else 1
    if isinstance(c, ProjComplex):
        return ProjComplex(c.quiver, c.field, c.lo - k, c.terms, tuple(d.scale(sign) for d in c.diffs))
    return GeneralComplex(c.quiver, c.field, c.lo - k, c.terms, tuple(d.scale(sign) for d in c.diffs))


@dataclass(frozen=True, eq=False)
class ProjComplex:
    """Complex of projectives: terms[k] lists the vertices i of its summands P_i, diffs are path matrices."""
    quiver: Quiver
    field: PrimeField
    lo: int
    terms: Tuple[Tuple[int, ...], ...]
    diffs: Tuple[PathMatrix, ...] = ()

    def __post_init__(self):
        if len(self.diffs) != max(len(self.terms) - 1, 0):
            raise ValueError(f"{len(self.terms)} terms need {max(len(self.terms) - 1, 0)} differentials")
        for k, d in enumerate(self.diffs):
            if d.sources != tuple(self.terms[k]) or d.targets != tuple(self.terms[k + 1]):
                raise ValueError(f"Differential {self.lo + k} does not match its terms")
        for k in range(len(self.diffs) - 1):
            if not self.diffs[k + 1].compose(self.diffs[k]).is_zero():
                raise ValueError(f"Differentials at {self.lo + k}, {self.lo + k + 1} do not compose to zero")

    @property
    def hi(self) -> int:
        return self.lo + len(self.terms) - 1

    def multiplicities(self, n: int) -> Tuple[int, ...]:
        """The multiplicity vector of P_1..P_l in degree n."""
        vertices = self.terms[n - self.lo] if self.lo <= n <= self.hi else ()
        return tuple(vertices.count(i) for i in range(self.quiver.n))

    def is_zero(self) -> bool:
        return not any(self.terms)

    def is_minimal(self) -> bool:
        return all(d.is_radical() for d in self.diffs)

    def realize(self) -> GeneralComplex:
        q, fld = self.quiver, self.field
        terms = tuple(projective_sum(q, fld, t) for t in self.terms)
        return GeneralComplex(q, fld, self.lo, terms, tuple(d.realize() for d in self.diffs))

    def trimmed(self) -> 'ProjComplex':
        """Drop empty degrees at both ends."""
        nonempty = [k for k, t in enumerate(self.terms) if t]
        if not nonempty:
            return ProjComplex(self.quiver, self.field, 0, (), ())
        a, b = nonempty[0], nonempty[-1]
        return ProjComplex(self.quiver, self.field, self.lo + a, self.terms[a:b + 1], self.diffs[a:b])

    def direct_sum(self, other: 'ProjComplex') -> 'ProjComplex':
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        lo, hi = min(self.lo, other.lo), max(self.hi, other.hi)
        terms, diffs = [], []
        for n in range(lo, hi + 1):
            terms.append(self._vertices(n) + other._vertices(n))
        for n in range(lo, hi):
            a, b = self._diff(n), other._diff(n)
            rows = [row + [{} for _ in b.sources] for row in a.rows()]
            rows += [[{} for _ in a.sources] + row for row in b.rows()]
            diffs.append(PathMatrix.build(self.quiver, self.field, terms[n - lo], terms[n + 1 - lo], rows))
        return ProjComplex(self.quiver, self.field, lo, tuple(terms), tuple(diffs))

    def _vertices(self, n: int) -> Tuple[int, ...]:
        return self.terms[n - self.lo] if self.lo <= n <= self.hi else ()

    def _diff(self, n: int) -> PathMatrix:
        if self.lo <= n < self.hi:
            return self.diffs[n - self.lo]
        return PathMatrix.zero(self.quiver, self.field, self._vertices(n), self._vertices(n + 1))


def _find_unit(diffs: Sequence[PathMatrix]) -> Optional[Tuple[int, int, int, int]]:
    """(degree index, target row, source column, scalar) of an invertible entry between equal projectives."""
    for n, d in enumerate(diffs):
        for l, j in enumerate(d.targets):
            for k, i in enumerate(d.sources):
                if i == j:
                    u = d.entry(l, k).get((), 0)
                    if u:
                        return n, l, k, u
    return None


def strip_contractibles(c: ProjComplex) -> Tuple[ProjComplex, ProjComplex]:
    """
    Split off [P -> P] summands by Gaussian elimination until every differential is radical.

    Returns:
        (minimal, contractible) with minimal + contractible isomorphic to the input
    """
    q, fld = c.quiver, c.field
    p = fld.p
    terms = [list(t) for t in c.terms]
    diffs = list(c.diffs)
    pieces: List[Tuple[int, int]] = []
    while True:
        found = _find_unit(diffs)
        if found is None:
            break
        n, l, k, u = found
        d = diffs[n]
        vertex = terms[n][k]
        keep_src = [m for m in range(len(d.sources)) if m != k]
        keep_tgt = [m for m in range(len(d.targets)) if m != l]
        epsilon = d.select(keep_tgt, keep_src)
        gamma = d.select(keep_tgt, [k])
        beta = d.select([l], keep_src)
        correction = gamma.compose(beta).scale(-pow(u, -1, p))
        diffs[n] = epsilon + correction
        if n > 0:
            prev = diffs[n - 1]
            diffs[n - 1] = prev.select(keep_src, list(range(len(prev.sources))))
        if n + 1 < len(diffs):
            nxt = diffs[n + 1]
            diffs[n + 1] = nxt.select(list(range(len(nxt.targets))), keep_tgt)
        del terms[n][k]
        del terms[n + 1][l]
        pieces.append((c.lo + n, vertex))
    minimal = ProjComplex(q, fld, c.lo, tuple(tuple(t) for t in terms), tuple(diffs)).trimmed()
    logger.debug(f"Stripped {len(pieces)} contractible pieces")
    return minimal, contractible_complex(q, fld, pieces)


def contractible_complex(q: Quiver, fld: PrimeField, pieces: Sequence[Tuple[int, int]]) -> ProjComplex:
    """Direct sum of [P_i -> P_i] pieces with the identity, the first term in the given degree."""
    out = ProjComplex(q, fld, 0, (), ())
    for degree, vertex in pieces:
        piece = ProjComplex(q, fld, degree, ((vertex,), (vertex,)), (PathMatrix.identity(q, fld, (vertex,)),))
        out = out.direct_sum(piece)
    return out


def projective_resolution(m: GeneralComplex, max_steps: Optional[int] = None) -> Tuple[ProjComplex, ChainMap]:
    """
    Projective complex P with a quasi-isomorphism P -> m, built downward from the top degree.

    Z_n is the pullback of (d, f) over M_(n+1) restricted to cycles of P_(n+1); P_n is its projective
    cover, split into d: P_n -> P_(n+1) and f: P_n -> M_n.
    """
    q, fld = m.quiver, m.field
    max_steps = max_steps or (len(m.terms) + q.n + 2)
    zero = Rep.zero(q, fld)
    vertices: Dict[int, Tuple[int, ...]] = {m.hi + 1: ()}
    reps: Dict[int, Rep] = {m.hi + 1: zero, m.hi + 2: zero}
    d_p: Dict[int, RepMorphism] = {m.hi + 1: RepMorphism.zero(zero, zero)}
    f: Dict[int, RepMorphism] = {m.hi + 1: RepMorphism.zero(zero, m.term(m.hi + 1))}
    n = m.hi
    steps = 0
    while True:
        if n < m.lo and reps[n + 1].is_zero():
            break
        steps += 1
        if steps > max_steps:
            raise ValueError(f"Resolution did not terminate within {max_steps} steps")
        mn, mn1 = m.term(n), m.term(n + 1)
        blocks = {(0, 0): m.diff(n), (0, 1): f[n + 1].scale(-1), (1, 1): d_p[n + 1]}
        phi = block_morphism([mn, reps[n + 1]], [mn1, reps[n + 2]], blocks, q, fld)
        z, incl, _, _ = kernel_cokernel(phi)
        cover_vertices, cover = projective_cover(z)
        into = incl.compose(cover)
        f[n] = summand_projection([mn, reps[n + 1]], 0, q, fld).compose(into)
        d_p[n] = summand_projection([mn, reps[n + 1]], 1, q, fld).compose(into)
        vertices[n] = cover_vertices
        reps[n] = cover.source
        n -= 1
    lo = n + 1
    degrees = list(range(lo, m.hi + 1))
    terms = tuple(vertices[k] for k in degrees)
    diffs = tuple(path_matrix_from_morphism(d_p[k], vertices[k], vertices[k + 1]) for k in degrees[:-1])
    complex_ = ProjComplex(q, fld, lo, terms, diffs)
    realized = complex_.realize()
    chain = ChainMap(realized, m, {k: RepMorphism(realized.term(k), m.term(k), f[k].components) for k in degrees})
    logger.debug(f"Resolved complex in degrees {m.lo}..{m.hi} by projectives in degrees {lo}..{m.hi}")
    return complex_, chain


def projective_resolve(m: Union[GeneralComplex, Rep]) -> ProjComplex:
    """Minimal projective complex quasi-isomorphic to m."""
    if isinstance(m, Rep):
        m = GeneralComplex.stalk(m)
    resolution, _ = projective_resolution(m)
    return strip_contractibles(resolution)[0]


def to_two_periodic(c: Complex) -> TwoPeriodicComplex:
    """C0 = sum of even terms, C1 = sum of odd terms, with the differentials as blocks."""
    c = _general(c)
    q, fld = c.quiver, c.field
    even = [n for n in c.degrees() if n % 2 == 0]
    odd = [n for n in c.degrees() if n % 2]
    even_terms = [c.term(n) for n in even]
    odd_terms = [c.term(n) for n in odd]
    d0 = block_morphism(even_terms, odd_terms,
                        {(odd.index(n + 1), k): c.diff(n) for k, n in enumerate(even) if n + 1 in odd}, q, fld)
    d1 = block_morphism(odd_terms, even_terms,
                        {(even.index(n + 1), k): c.diff(n) for k, n in enumerate(odd) if n + 1 in even}, q, fld)
    return TwoPeriodicComplex(d0.source, d0.target, d0, d1)

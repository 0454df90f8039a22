"""Objects of the root category M + N[1], their Hom spaces and triangle constants."""
import itertools
import logging
import threading
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from config.settings import DEFAULT_PRIMES, ENUMERATION_BUDGET
from services.catalog import IsoClass, catalog_for, class_dim, kac_count, parse_class, split_top_level
from services.hall_algebra import hall_counter, hall_degree_bound
from services.quiver import DimVector, Quiver, quiver_type, vector_neg, vector_sub
from services.representations import (IsoLabel, Rep, RepMorphism, combination, ext_dimension, hom_dimension,
                                      hom_space, is_brick, kernel_cokernel, subspace_coordinates)
from utils.errors import BudgetExceededError, FieldStabilityError, WildTypeError
from utils.field_linalg import FMatrix
from utils.polynomials import IntPolynomial, fit_counts, required_points

logger = logging.getLogger('roothall')


@dataclass(frozen=True, order=True)
class RootCatObject:
    """module_part + (shifted_part)[1], both sorted multisets of indecomposable labels."""
    module_part: IsoClass = ()
    shifted_part: IsoClass = ()

    def __post_init__(self):
        object.__setattr__(self, 'module_part', tuple(sorted(self.module_part)))
        object.__setattr__(self, 'shifted_part', tuple(sorted(self.shifted_part)))

    @classmethod
    def module(cls, label: IsoLabel) -> 'RootCatObject':
        return cls((label,), ())

    @classmethod
    def shifted_module(cls, label: IsoLabel) -> 'RootCatObject':
        return cls((), (label,))

    def shift(self) -> 'RootCatObject':
        return RootCatObject(self.shifted_part, self.module_part)

    def dim(self, n: int) -> DimVector:
        return vector_sub(class_dim(self.module_part, n), class_dim(self.shifted_part, n))

    def is_zero(self) -> bool:
        return not self.module_part and not self.shifted_part

    def is_single(self) -> bool:
        return len(self.module_part) + len(self.shifted_part) == 1

    @property
    def is_shifted(self) -> bool:
        return not self.module_part and bool(self.shifted_part)

    @property
    def label(self) -> IsoLabel:
        if not self.is_single():
            raise ValueError(f"{self} is not a single indecomposable")
        return (self.module_part or self.shifted_part)[0]

    def has_aggregate(self) -> bool:
        return any(label.kind == 'aggregate' for label in self.module_part + self.shifted_part)

    def __str__(self) -> str:
        parts = [str(label) for label in self.module_part] + [f"{label}[1]" for label in self.shifted_part]
        return '+'.join(parts) if parts else '0'


def parse_object(text: str, q: Quiver) -> RootCatObject:
    """Labels joined by '+', each optionally suffixed by '[1]'."""
    modules, shifted = [], []
    text = text.strip()
    if text in ('', '0'):
        return RootCatObject()
    for part in split_top_level(text):
        if part.endswith('[1]'):
            shifted.extend(parse_class(part[:-3], q))
        else:
            modules.extend(parse_class(part, q))
    return RootCatObject(tuple(modules), tuple(shifted))


@dataclass(frozen=True, order=True)
class HLabel:
    """h_d for a class d of K_0; h_{d1 + d2} = h_{d1} + h_{d2}."""
    d: DimVector

    def __add__(self, other: 'HLabel') -> 'HLabel':
        return HLabel(tuple(a + b for a, b in zip(self.d, other.d)))

    def __neg__(self) -> 'HLabel':
        return HLabel(vector_neg(self.d))

    def __str__(self) -> str:
        return f"h({','.join(str(c) for c in self.d)})"


def _pieces(obj: RootCatObject, p: int, q: Quiver) -> Tuple[Rep, Rep]:
    catalog = catalog_for(q, p)
    return catalog.class_representative(obj.module_part), catalog.class_representative(obj.shifted_part)


def hom_dim_d2(q: Quiver, x: RootCatObject, y: RootCatObject, p: Optional[int] = None) -> int:
    """
    dim Hom(M + N[1], M' + N'[1]) in the root category.

    Hom(M, N'[1]) = Ext^1(M, N') and Hom(N[1], M') = Ext^1(N, M') by 2-periodicity.
    """
    q.require_hereditary()
    p = p or DEFAULT_PRIMES[0]
    m, n = _pieces(x, p, q)
    m2, n2 = _pieces(y, p, q)
    return (hom_dimension(m, m2) + ext_dimension(m, n2)
            + ext_dimension(n, m2) + hom_dimension(n, n2))


def semisimple_object(q: Quiver, d: Sequence[int]) -> RootCatObject:
    """Positive coordinates as simple modules, negative ones as shifted simples."""
    modules, shifted = [], []
    for i, c in enumerate(d):
        target = modules if c > 0 else shifted
        target.extend([IsoLabel(q.simple(i))] * abs(c))
    return RootCatObject(tuple(modules), tuple(shifted))


def sym_form_h(q: Quiver, d1: HLabel, d2: HLabel, p: Optional[int] = None) -> int:
    """dim Hom(X,Y) - dim Hom(X,Y[1]) + dim Hom(Y,X) - dim Hom(Y,X[1]) for X, Y of classes d1, d2."""
    x, y = semisimple_object(q, d1.d), semisimple_object(q, d2.d)
    return (hom_dim_d2(q, x, y, p) - hom_dim_d2(q, x, y.shift(), p)
            + hom_dim_d2(q, y, x, p) - hom_dim_d2(q, y, x.shift(), p))


def _projective_points(k: int, p: int) -> Iterator[Tuple[int, ...]]:
    """Vectors of F_p^k whose first nonzero coordinate is 1."""
    for lead in range(k):
        for tail in itertools.product(range(p), repeat=k - lead - 1):
            yield (0,) * lead + (1,) + tail


def _vectorize(f: RepMorphism) -> np.ndarray:
    return np.concatenate([c.data.reshape(-1) for c in f.components]) if f.components else np.zeros(0)


def _automorphisms(x: Rep, budget: int) -> List[RepMorphism]:
    basis = hom_space(x, x)
    p = x.field.p
    if p ** len(basis) > budget:
        raise BudgetExceededError(p ** len(basis), budget, 'automorphism group listing')
    return [f for f in (combination(basis, c) for c in itertools.product(range(p), repeat=len(basis)))
            if f.is_invertible()]


def _inverse(f: RepMorphism) -> RepMorphism:
    return RepMorphism(f.target, f.source, tuple(c.inverse() for c in f.components))


def hom_orbits(x: Rep, z: Rep, budget: int = ENUMERATION_BUDGET) -> List[RepMorphism]:
    """
    One representative per orbit of Aut(x) x Aut(z) acting on Hom(x, z) by h -> c h a^-1.

    For bricks the action is by scalars and the orbits are 0 and the points of P(Hom).
    """
    basis = hom_space(x, z)
    zero = RepMorphism.zero(x, z)
    if not basis:
        return [zero]
    p = x.field.p
    if is_brick(x) and is_brick(z):
        return [zero] + [combination(basis, point) for point in _projective_points(len(basis), p)]
    size = p ** len(basis)
    if size > budget:
        raise BudgetExceededError(size, budget, 'Hom orbit enumeration')
    auts_x = [_inverse(a) for a in _automorphisms(x, budget)]
    auts_z = _automorphisms(z, budget)
    columns = FMatrix.from_columns(x.field, [_vectorize(f) for f in basis], len(_vectorize(basis[0])))
    coordinates = subspace_coordinates(columns, columns.rows)
    seen = set()
    representatives = []
    for coefficients in itertools.product(range(p), repeat=len(basis)):
        if coefficients in seen:
            continue
        h = combination(basis, coefficients)
        representatives.append(h)
        for a_inv in auts_x:
            for c in auts_z:
                image = c.compose(h).compose(a_inv)
                vec = FMatrix(x.field, _vectorize(image).reshape(-1, 1))
                seen.add((coordinates @ vec).entries)
    return representatives


class TriangleCounter:
    """Per-prime orbit tallies of triangles with indecomposable end terms."""

    def __init__(self, quiver: Quiver):
        self.quiver = quiver
        self._tallies: Dict[Tuple[int, RootCatObject, RootCatObject], Counter] = {}
        self._lock = threading.Lock()

    def mixed_tally(self, p: int, x: RootCatObject, y: RootCatObject) -> Counter:
        """
        Middle terms over all orbits for one module and one shifted end term.

        X, Z[1]: h in Hom(X, Z), middle term ker h + (coker h)[1].
        X[1], Y: h in Hom(X, Y), middle term coker h + (ker h)[1].
        """
        key = (p, x, y)
        with self._lock:
            if key in self._tallies:
                return self._tallies[key]
        catalog = catalog_for(self.quiver, p)
        module_first = not x.is_shifted
        source_label, target_label = (x.label, y.label)
        tally: Counter = Counter()
        for source in catalog.label_members(source_label):
            for target in catalog.label_members(target_label):
                xs, zs = catalog.representative(source), catalog.representative(target)
                for h in hom_orbits(xs, zs):
                    ker, _, coker, _ = kernel_cokernel(h)
                    kc, cc = catalog.identify(ker), catalog.identify(coker)
                    middle = RootCatObject(kc, cc) if module_first else RootCatObject(cc, kc)
                    tally[middle] += 1
        with self._lock:
            self._tallies[key] = tally
        return tally

    def count(self, p: int, middle: RootCatObject, x: RootCatObject, y: RootCatObject) -> int:
        """
        Number of triangles y -> middle -> x -> y[1] up to the automorphisms of the end terms.

        Raises:
            FieldStabilityError: when members of an aggregated middle term disagree
        """
        if not (x.is_single() and y.is_single()):
            raise ValueError("Triangle counts need indecomposable end terms")
        if x.is_shifted == y.is_shifted:
            if x.is_shifted:
                x, y, middle = x.shift(), y.shift(), middle.shift()
            if middle.shifted_part:
                return 0
            return hall_counter(self.quiver).count(p, middle.module_part, x.module_part, y.module_part)
        tally = self.mixed_tally(p, x, y)
        catalog = catalog_for(self.quiver, p)
        if not middle.has_aggregate():
            return tally.get(middle, 0)
        by_signature = Counter()
        for found, count in tally.items():
            signed = RootCatObject(catalog.signature(found.module_part), catalog.signature(found.shifted_part))
            if signed == middle:
                by_signature[found] += count
        members = [RootCatObject(m, s) for m in catalog.members(middle.module_part)
                   for s in catalog.members(middle.shifted_part)]
        values = {by_signature.get(member, 0) for member in members}
        if len(values) > 1:
            raise FieldStabilityError(f"Triangle counts into {middle} vary over members at p={p}: {sorted(values)}")
        return values.pop() if values else 0

    def degree_bound(self, middle: RootCatObject, x: RootCatObject, y: RootCatObject) -> int:
        aggregates = int(x.has_aggregate()) + int(y.has_aggregate())
        if x.is_shifted == y.is_shifted:
            if x.is_shifted:
                x, y, middle = x.shift(), y.shift(), middle.shift()
            return hall_degree_bound(self.quiver, middle.module_part, x.module_part, y.module_part)
        catalog = catalog_for(self.quiver, DEFAULT_PRIMES[0])
        largest = 0
        for source in catalog.label_members(x.label):
            for target in catalog.label_members(y.label):
                largest = max(largest, catalog.hom_dim(source, target))
        return largest + aggregates


_triangle_counters: Dict[Quiver, TriangleCounter] = {}
_triangle_lock = threading.Lock()


def triangle_counter(q: Quiver) -> TriangleCounter:
    with _triangle_lock:
        if q not in _triangle_counters:
            _triangle_counters[q] = TriangleCounter(q)
        return _triangle_counters[q]


def require_not_wild(q: Quiver):
    q.require_hereditary()
    if quiver_type(q) == 'wild':
        raise WildTypeError(f"Quiver {q.name or q.vertices} is wild")


def triangle_polynomial(q: Quiver, middle: RootCatObject, x: RootCatObject, y: RootCatObject,
                        primes: Optional[Sequence[int]] = None) -> IntPolynomial:
    """Orbit count of triangles y -> middle -> x -> y[1] as a polynomial in q."""
    require_not_wild(q)
    counter = triangle_counter(q)
    bound = counter.degree_bound(middle, x, y)
    pool = list(primes or DEFAULT_PRIMES)[:required_points(bound)]
    counts = [(p, counter.count(p, middle, x, y)) for p in pool]
    logger.debug(f"F^{middle}_{x},{y} counts {counts}")
    return fit_counts(counts, bound)


def triangle_constant(q: Quiver, middle: RootCatObject, x: RootCatObject, y: RootCatObject,
                      primes: Optional[Sequence[int]] = None) -> int:
    """F^middle_{x,y} at q = 1."""
    if middle.dim(q.n) != tuple(a + b for a, b in zip(x.dim(q.n), y.dim(q.n))):
        return 0
    return triangle_polynomial(q, middle, x, y, primes)(1)


def class_size(q: Quiver, label: IsoLabel, primes: Optional[Sequence[int]] = None) -> int:
    """Number of members of a label's class at q = 1 (one for single orbits)."""
    if label.kind != 'aggregate':
        return 1
    return kac_count(q, label.dim, primes)(1)

"""Hall numbers, Hall polynomials and the twisted Ringel-Hall algebra."""
import logging
import threading
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from config.settings import DEFAULT_PRIMES
from services.catalog import IsoClass, catalog_for, class_dim, format_class, parse_class
from services.quiver import Quiver, euler_form, height, symmetric_form, vector_add
from services.representations import (IsoLabel, Rep, aut_order, hom_dimension, quotient_representation,
                                      subrepresentation, submodule_tuples)
from utils.errors import FieldStabilityError
from utils.polynomials import (IntPolynomial, LaurentPolynomial, fit_counts, quantum_binomial,
                               required_points)
from utils.resource_monitor import run_jobs

logger = logging.getLogger('roothall')


@dataclass(frozen=True)
class HallPolynomial:
    """g^target_{quot, sub}(q): submodules W of target with W = sub and target/W = quot."""
    target: IsoClass
    quot: IsoClass
    sub: IsoClass
    poly: IntPolynomial
    primes_used: Tuple[int, ...]
    degree_bound: int

    def at_one(self) -> int:
        return self.poly(1)

    def to_record(self) -> dict:
        return {
            'target': format_class(self.target),
            'quot': format_class(self.quot),
            'sub': format_class(self.sub),
            'coefficients': list(self.poly.coefficients),
            'primes_used': list(self.primes_used),
            'degree_bound': self.degree_bound,
        }

    @classmethod
    def from_record(cls, q: Quiver, record: dict) -> 'HallPolynomial':
        return cls(parse_class(record['target'], q), parse_class(record['quot'], q),
                   parse_class(record['sub'], q), IntPolynomial(tuple(record['coefficients'])),
                   tuple(record['primes_used']), int(record['degree_bound']))


def _is_aggregated(cls: IsoClass) -> bool:
    return any(label.kind == 'aggregate' for label in cls)


def submodule_tally(L: Rep, sub_dim: Sequence[int]) -> Counter:
    """(quotient class, submodule class) -> number of submodules W of L with dim W = sub_dim."""
    catalog = catalog_for(L.quiver, L.field.p)
    tally: Counter = Counter()
    for bases in submodule_tuples(L, sub_dim):
        sub, _ = subrepresentation(L, bases)
        quot, _ = quotient_representation(L, bases)
        tally[(catalog.identify(quot), catalog.identify(sub))] += 1
    return tally


def _tally_matches(tally: Counter, catalog, quot: IsoClass, sub: IsoClass) -> int:
    total = 0
    for (found_quot, found_sub), count in tally.items():
        fq = catalog.signature(found_quot) if _is_aggregated(quot) else found_quot
        fs = catalog.signature(found_sub) if _is_aggregated(sub) else found_sub
        if fq == quot and fs == sub:
            total += count
    return total


def count_submodules(L: Rep, quot: IsoClass, sub: IsoClass) -> int:
    """
    Number of subrepresentations W of L with W in the class sub and L/W in the class quot.

    Aggregate labels in quot or sub sum over every member of the class.
    """
    n = L.quiver.n
    if vector_add(class_dim(quot, n), class_dim(sub, n)) != L.dim:
        return 0
    catalog = catalog_for(L.quiver, L.field.p)
    return _tally_matches(submodule_tally(L, class_dim(sub, n)), catalog, quot, sub)


class HallCounter:
    """Per-prime Hall numbers of one quiver, cached by target class and submodule dimension."""

    def __init__(self, quiver: Quiver):
        self.quiver = quiver
        self._tallies: Dict[Tuple[int, IsoClass, Tuple[int, ...]], Counter] = {}
        self._lock = threading.Lock()

    def tally(self, p: int, target: IsoClass, sub_dim: Sequence[int]) -> Counter:
        key = (p, target, tuple(sub_dim))
        with self._lock:
            cached = self._tallies.get(key)
        if cached is None:
            rep = catalog_for(self.quiver, p).class_representative(target)
            cached = submodule_tally(rep, sub_dim)
            with self._lock:
                self._tallies[key] = cached
        return cached

    def count(self, p: int, target: IsoClass, quot: IsoClass, sub: IsoClass) -> int:
        """
        Hall number at p; an aggregated target must give the same count for every member.

        Raises:
            FieldStabilityError: when members of an aggregated target disagree
        """
        catalog = catalog_for(self.quiver, p)
        members = catalog.members(target) if _is_aggregated(target) else [target]
        sub_dim = class_dim(sub, self.quiver.n)
        values = {self._count_one(catalog, p, member, quot, sub, sub_dim) for member in members}
        if len(values) > 1:
            raise FieldStabilityError(f"Hall numbers g^{format_class(target)}_{format_class(quot)},"
                                      f"{format_class(sub)} vary over members at p={p}: {sorted(values)}")
        return values.pop() if values else 0

    def _count_one(self, catalog, p, target, quot, sub, sub_dim) -> int:
        if vector_add(class_dim(quot, self.quiver.n), sub_dim) != class_dim(target, self.quiver.n):
            return 0
        return _tally_matches(self.tally(p, target, sub_dim), catalog, quot, sub)


_counters: Dict[Quiver, HallCounter] = {}
_counters_lock = threading.Lock()


def hall_counter(q: Quiver) -> HallCounter:
    with _counters_lock:
        if q not in _counters:
            _counters[q] = HallCounter(q)
        return _counters[q]


def hall_degree_bound(q: Quiver, target: IsoClass, quot: IsoClass, sub: IsoClass) -> int:
    aggregates = sum(1 for label in quot + sub if label.kind == 'aggregate')
    return height(class_dim(target, q.n)) + aggregates


def hall_polynomial(q: Quiver, target: IsoClass, quot: IsoClass, sub: IsoClass,
                    primes: Optional[Sequence[int]] = None, workers: Optional[int] = None) -> HallPolynomial:
    """
    Interpolate g^target_{quot, sub} over primes; the last prime drawn is a held-out check.

    Raises:
        InterpolationError: when the counts do not fit an integer polynomial within the bound
        FieldStabilityError: when an aggregated target is not constant over its members
    """
    bound = hall_degree_bound(q, target, quot, sub)
    pool = list(primes or DEFAULT_PRIMES)[:required_points(bound)]
    counter = hall_counter(q)
    values = run_jobs(lambda p: counter.count(p, target, quot, sub), pool, workers)
    counts = list(zip(pool, values))
    logger.debug(f"g^{format_class(target)}_{format_class(quot)},{format_class(sub)} counts {counts}")
    poly = fit_counts(counts, bound)
    return HallPolynomial(target, quot, sub, poly, tuple(pool), bound)


def ringel_bracket_constant(q: Quiver, target: IsoClass, a: IsoClass, b: IsoClass,
                            primes: Optional[Sequence[int]] = None) -> int:
    """g^target_{ab}(1) - g^target_{ba}(1)."""
    if a == b:
        return 0
    forward = hall_polynomial(q, target, a, b, primes).at_one()
    backward = hall_polynomial(q, target, b, a, primes).at_one()
    return forward - backward


@dataclass
class HallElement:
    """
    Finite combination of basis elements u_lambda with Laurent coefficients in v.

    A class containing an aggregate label stands for the sum over its member classes.
    """
    terms: Dict[IsoClass, LaurentPolynomial] = field(default_factory=dict)

    def __post_init__(self):
        self.terms = {cls: c for cls, c in self.terms.items() if not c.is_zero()}

    @classmethod
    def basis(cls, iso_class: IsoClass, coefficient: Optional[LaurentPolynomial] = None) -> 'HallElement':
        return cls({tuple(sorted(iso_class)): coefficient or LaurentPolynomial.monomial(1, 0)})

    @classmethod
    def unit(cls) -> 'HallElement':
        return cls.basis(())

    def __add__(self, other: 'HallElement') -> 'HallElement':
        terms = dict(self.terms)
        for cls, c in other.terms.items():
            terms[cls] = terms[cls] + c if cls in terms else c
        return HallElement(terms)

    def __neg__(self) -> 'HallElement':
        return HallElement({cls: -c for cls, c in self.terms.items()})

    def __sub__(self, other: 'HallElement') -> 'HallElement':
        return self + (-other)

    def scale(self, c) -> 'HallElement':
        return HallElement({cls: coefficient * c for cls, coefficient in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, HallElement):
            return NotImplemented
        return (self - other).is_zero()

    def __str__(self) -> str:
        if self.is_zero():
            return '0'
        return ' + '.join(f"({c})*u[{format_class(cls)}]" for cls, c in sorted(self.terms.items()))


class HallAlgebra:
    """
    The twisted Ringel-Hall algebra of a quiver: u_a * u_b = v^<a,b> sum g^l_{ab} u_l.

    With prime=None products carry Hall polynomials in q = v^2; with a prime they
    carry the counts at that prime, to be read under v^2 = p.
    """

    def __init__(self, quiver: Quiver, primes: Optional[Sequence[int]] = None, prime: Optional[int] = None):
        quiver.require_hereditary()
        self.quiver = quiver
        self.primes = list(primes or DEFAULT_PRIMES)
        self.prime = prime
        self._structure: Dict[Tuple[IsoClass, IsoClass, IsoClass], LaurentPolynomial] = {}
        self._lock = threading.Lock()

    def targets(self, d: Sequence[int]) -> List[IsoClass]:
        p = self.prime or self.primes[0]
        return catalog_for(self.quiver, p).signatures(d)

    def structure_constant(self, target: IsoClass, quot: IsoClass, sub: IsoClass) -> LaurentPolynomial:
        key = (target, quot, sub)
        with self._lock:
            if key in self._structure:
                return self._structure[key]
        if self.prime is None:
            value = LaurentPolynomial.from_int_polynomial(hall_polynomial(self.quiver, target, quot, sub,
                                                                          self.primes).poly)
        else:
            value = LaurentPolynomial.monomial(hall_counter(self.quiver).count(self.prime, target, quot, sub), 0)
        with self._lock:
            self._structure[key] = value
        return value

    def basis_product(self, a: IsoClass, b: IsoClass) -> HallElement:
        n = self.quiver.n
        da, db = class_dim(a, n), class_dim(b, n)
        twist = LaurentPolynomial.monomial(1, euler_form(self.quiver, da, db))
        terms = {}
        for target in self.targets(vector_add(da, db)):
            g = self.structure_constant(target, a, b)
            if not g.is_zero():
                terms[target] = g * twist
        return HallElement(terms)

    def product(self, f: HallElement, g: HallElement) -> HallElement:
        result = HallElement()
        for a, ca in f.terms.items():
            for b, cb in g.terms.items():
                result = result + self.basis_product(a, b).scale(ca * cb)
        return result

    def power(self, f: HallElement, k: int) -> HallElement:
        result = HallElement.unit()
        for _ in range(k):
            result = self.product(result, f)
        return result

    def vanishes(self, f: HallElement) -> bool:
        if self.prime is None:
            return f.is_zero()
        return all(c.evaluate_at_square_root(self.prime) == (0, 0) for c in f.terms.values())


def twisted_product(q: Quiver, f: HallElement, g: HallElement, prime: Optional[int] = None,
                    primes: Optional[Sequence[int]] = None) -> HallElement:
    return HallAlgebra(q, primes, prime).product(f, g)


@dataclass
class SerreCheck:
    i: int
    j: int
    degree: int
    residual: HallElement
    holds: bool


def serre_element(algebra: HallAlgebra, i: int, j: int) -> Tuple[int, HallElement]:
    """sum_k (-1)^k [n k]_v u_i^k u_j u_i^(n-k) with n = 1 - a_ij."""
    q = algebra.quiver
    n = 1 - symmetric_form(q, q.simple(i), q.simple(j))
    ui = HallElement.basis((IsoLabel(q.simple(i)),))
    uj = HallElement.basis((IsoLabel(q.simple(j)),))
    powers = [HallElement.unit()]
    for _ in range(n):
        powers.append(algebra.product(powers[-1], ui))
    total = HallElement()
    for k in range(n + 1):
        term = algebra.product(algebra.product(powers[k], uj), powers[n - k])
        sign = 1 if k % 2 == 0 else -1
        total = total + term.scale(quantum_binomial(n, k) * sign)
    return n, total


def quantum_serre_check(q: Quiver, i: int, j: int, prime: Optional[int] = None,
                        primes: Optional[Sequence[int]] = None) -> SerreCheck:
    """Check the quantum Serre relation between vertices i != j, symbolically or at a prime."""
    if i == j:
        raise ValueError("Serre relations need distinct vertices")
    algebra = HallAlgebra(q, primes, prime)
    n, residual = serre_element(algebra, i, j)
    holds = algebra.vanishes(residual)
    logger.info(f"Quantum Serre ({q.vertices[i]},{q.vertices[j]}) of degree {n + 1}"
                f"{' at p=' + str(prime) if prime else ''}: {'holds' if holds else 'fails'}")
    return SerreCheck(i, j, n, residual, holds)


def extension_count(x: Rep, y: Rep) -> int:
    """
    |Ext^1(x, y)| through Hall numbers: sum over L of g^L_{xy} |Aut x||Aut y||Hom(x,y)| / |Aut L|.
    """
    q = x.quiver
    catalog = catalog_for(q, x.field.p)
    cx, cy = catalog.identify(x), catalog.identify(y)
    scale = aut_order(x) * aut_order(y) * x.field.p ** hom_dimension(x, y)
    total = Fraction(0)
    for target in catalog.classes(vector_add(x.dim, y.dim)):
        g = _tally_matches(submodule_tally(catalog.class_representative(target), y.dim), catalog, cx, cy)
        if g:
            total += Fraction(g * scale, aut_order(catalog.class_representative(target)))
    if total.denominator != 1:
        raise ValueError(f"Extension count {total} is not an integer")
    return int(total)


def hom_count_polynomial(q: Quiver, a: IsoClass, b: IsoClass, primes: Optional[Sequence[int]] = None) -> IntPolynomial:
    """|Hom(a, b)| as a polynomial in q."""
    da, db = class_dim(a, q.n), class_dim(b, q.n)
    bound = sum(x * y for x, y in zip(da, db))
    pool = list(primes or DEFAULT_PRIMES)[:required_points(bound)]
    counts = []
    for p in pool:
        catalog = catalog_for(q, p)
        counts.append((p, p ** hom_dimension(catalog.class_representative(a), catalog.class_representative(b))))
    return fit_counts(counts, bound)


def aut_count_polynomial(q: Quiver, a: IsoClass, primes: Optional[Sequence[int]] = None) -> IntPolynomial:
    """|Aut(a)| as a polynomial in q; its degree is dim End(a)."""
    pool = list(primes or DEFAULT_PRIMES)
    first = catalog_for(q, pool[0]).class_representative(a)
    bound = hom_dimension(first, first)
    counts = [(p, aut_order(catalog_for(q, p).class_representative(a)))
              for p in pool[:required_points(bound)]]
    return fit_counts(counts, bound)

"""Loop-style affine Lie algebra with sign-twisted structure constants, and its Hall-side realization."""
import itertools
import logging
from typing import Dict, List, Optional, Sequence, Tuple

from config.settings import DEFAULT_PRIMES, EPSILON_CONVENTION, TAME_HEIGHT_BOUND
from services.catalog import catalog_for, kac_count
from services.lie_table import (BasisElement, LieTable, VerificationReport, Vector, assemble_lie_table,
                                extend_along_brackets, table_from_bracket, verify_homomorphism,
                                verify_jacobi)
from services.quiver import (DimVector, Quiver, enumerate_roots, euler_cocycle, height, imaginary_root, is_real_root,
                             quiver_type, symmetric_form)
from services.representations import IsoLabel, hom_dimension
from services.root_category import RootCatObject
from services.tame import aggregate_label, aggregate_sign, is_kronecker, regular_members, require_tame
from utils.errors import NotTameError
from utils.field_linalg import prime_field

logger = logging.getLogger('roothall')


def _vector_name(d: Sequence[int]) -> str:
    return ','.join(str(c) for c in d)


class EpsilonAlgebra:
    """
    Truncated affine algebra of an affine quiver.

    Basis: Cartan elements a_i (one per vertex, with c = delta), one e(alpha) per real root
    of height at most the bound, and x_j(n) for the imaginary root n*delta and each vertex j
    spanning C[I]/C delta.
    """

    def __init__(self, quiver: Quiver, height_bound: Optional[int] = None, convention: str = EPSILON_CONVENTION):
        require_tame(quiver)
        self.quiver = quiver
        self.height_bound = height_bound or TAME_HEIGHT_BOUND
        self.convention = convention
        self.delta: DimVector = imaginary_root(quiver)
        self.anchor = max(i for i, c in enumerate(self.delta) if c == 1)
        self.quotient_vertices = [i for i in range(quiver.n) if i != self.anchor]
        self.table = self._build()

    def epsilon(self, d: Sequence[int], e: Sequence[int]) -> int:
        return euler_cocycle(self.quiver, d, e, self.convention)

    def quotient_coordinates(self, d: Sequence[int]) -> Dict[int, int]:
        """Coordinates of the image of d in C[I]/C delta on the vertices other than the anchor."""
        shift = d[self.anchor]
        reduced = [c - shift * k for c, k in zip(d, self.delta)]
        return {j: reduced[j] for j in self.quotient_vertices if reduced[j]}

    def _lift(self, j: int) -> DimVector:
        return self.quiver.simple(j)

    def _basis(self) -> List[BasisElement]:
        q = self.quiver
        bound = self.height_bound
        zero = tuple(0 for _ in range(q.n))
        positive: List[Tuple[DimVector, str, Optional[int], int]] = []
        for d in enumerate_roots(q, bound).real_roots:
            positive.append((d, f"e({_vector_name(d)})", None, 0))
        for n in range(1, bound // height(self.delta) + 1):
            for j in self.quotient_vertices:
                positive.append((tuple(n * c for c in self.delta), f"x_{q.vertices[j]}({n})", j, n))
        positive.sort(key=lambda item: (height(item[0]), item[0], item[1]))
        basis = [BasisElement(f"a_{v}", zero, 'h', vertex=i) for i, v in enumerate(q.vertices)]
        self.loops: Dict[int, Tuple[int, int]] = {}
        for sign in (1, -1):
            for d, name, j, n in positive:
                degree = tuple(sign * c for c in d)
                if j is None:
                    label = f"e({_vector_name(degree)})"
                else:
                    label = f"x_{q.vertices[j]}({sign * n})"
                    self.loops[len(basis)] = (j, sign * n)
                basis.append(BasisElement(label, degree))
        return basis

    def _in_bound(self, d: Sequence[int]) -> bool:
        return height(tuple(abs(c) for c in d)) <= self.height_bound

    def _bracket(self, basis: List[BasisElement], index: Dict[DimVector, int], i: int, j: int) -> Optional[Vector]:
        q = self.quiver
        x, y = basis[i], basis[j]
        if x.kind == 'h' and y.kind == 'h':
            return {}
        if x.kind == 'h' or y.kind == 'h':
            h, e, sign = (x, y, 1) if x.kind == 'h' else (y, x, -1)
            c = symmetric_form(q, q.simple(h.vertex), e.degree)
            return {basis.index(e): sign * c} if c else {}
        loop_x, loop_y = self.loops.get(i), self.loops.get(j)
        if loop_x and loop_y:
            (jx, m), (jy, n) = loop_x, loop_y
            if m != -n:
                return {}
            c = m * symmetric_form(q, self._lift(jx), self._lift(jy))
            return {k: c * d for k, d in enumerate(self.delta) if c * d}
        if loop_x or loop_y:
            (jl, n), e, sign = (loop_x, y, 1) if loop_x else (loop_y, x, -1)
            c = symmetric_form(q, self._lift(jl), e.degree)
            if not c:
                return {}
            nd = tuple(n * k for k in self.delta)
            target = tuple(a + b for a, b in zip(e.degree, nd))
            if not self._in_bound(target):
                return None
            return {index[target]: sign * self.epsilon(nd, e.degree) * c}
        total = tuple(a + b for a, b in zip(x.degree, y.degree))
        eps = self.epsilon(x.degree, y.degree)
        if not any(total):
            return {k: eps * c for k, c in enumerate(x.degree) if c}
        if is_real_root(q, total):
            return {index[total]: eps} if self._in_bound(total) else None
        k = self._delta_multiple(total)
        if k:
            if not self._in_bound(total):
                return None
            out = {}
            for jv, c in self.quotient_coordinates(x.degree).items():
                out[self.loop_index(jv, k)] = eps * c
            return out
        return {}

    def _delta_multiple(self, d: Sequence[int]) -> int:
        k = d[self.anchor]
        if k and tuple(k * c for c in self.delta) == tuple(d):
            return k
        return 0

    def loop_index(self, j: int, n: int) -> int:
        for k, value in self.loops.items():
            if value == (j, n):
                return k
        raise KeyError((j, n))

    def _build(self) -> LieTable:
        basis = self._basis()
        index = {b.degree: k for k, b in enumerate(basis) if b.kind == 'n' and k not in self.loops}
        table = table_from_bracket(f"epsilon:{self.convention}:{self.quiver.name or ','.join(self.quiver.vertices)}",
                                   basis, lambda i, j: self._bracket(basis, index, i, j), self.quiver,
                                   self.height_bound, workers=1)
        logger.debug(f"Epsilon algebra ({self.convention}) of {self.quiver.name or self.quiver.vertices}: "
                     f"{table.dimension} basis elements, height bound {self.height_bound}")
        return table

    def bracket(self, a: str, b: str) -> Optional[Dict[str, int]]:
        """epsilon_bracket on basis names."""
        value = self.table.bracket_basis(self.table.index(a), self.table.index(b))
        if value is None:
            return None
        return {str(self.table.basis[k]): c for k, c in sorted(value.items())}


def epsilon_bracket(algebra: EpsilonAlgebra, x: Vector, y: Vector) -> Optional[Vector]:
    return algebra.table.bracket(x, y)


def realization_seeds(algebra: EpsilonAlgebra, hall: LieTable) -> Dict[int, Vector]:
    """
    Images of the generators on the Hall side.

    a_i -> -h_i, e(+-alpha_i) -> u_{S_i}, u_{S_i[1]}, and x(n) -> xi E0(n) for n > 0,
    -xi E0(|n|)[1] for n < 0.
    """
    q = algebra.quiver
    eps = algebra.table
    seeds: Dict[int, Vector] = {}
    for i in range(q.n):
        simple = IsoLabel(q.simple(i))
        seeds[i] = {i: -1}
        seeds[eps.index(f"e({_vector_name(q.simple(i))})")] = {hall.find(RootCatObject.module(simple)): 1}
        negative = tuple(-c for c in q.simple(i))
        seeds[eps.index(f"e({_vector_name(negative)})")] = {hall.find(RootCatObject.shifted_module(simple)): 1}
    for k, (j, n) in algebra.loops.items():
        label = aggregate_label(q, abs(n))
        xi = aggregate_sign(abs(n))
        if n > 0:
            seeds[k] = {hall.find(RootCatObject.module(label)): xi}
        else:
            seeds[k] = {hall.find(RootCatObject.shifted_module(label)): -xi}
    return seeds


def verify_affine_realization(q: Quiver, height_bound: Optional[int] = None, primes: Optional[Sequence[int]] = None,
                              convention: str = EPSILON_CONVENTION, hall: Optional[LieTable] = None,
                              workers: Optional[int] = None) -> VerificationReport:
    """
    Compare every bracket of the epsilon algebra with the bracket of its images in the truncated Hall table.

    The report carries one line per compared pair.

    Raises:
        NotTameError: unless q is the Kronecker quiver
    """
    if not is_kronecker(q):
        raise NotTameError(f"The affine realization is built for the Kronecker quiver only, got {q.name or q.vertices}")
    bound = height_bound or TAME_HEIGHT_BOUND
    algebra = EpsilonAlgebra(q, bound, convention)
    hall = hall or assemble_lie_table(q, bound, primes, workers)
    report = VerificationReport(f"affine ({convention})")
    images, unmapped = extend_along_brackets(algebra.table, hall, realization_seeds(algebra, hall))
    for name in unmapped:
        report.record(False, f"{name} not reached from the generators", f"{name} unmapped")
    if not unmapped:
        report.merge(verify_homomorphism(algebra.table, hall, images, 'realization', lines=True))
    report.note('non-homogeneous tube rows: not exercised')
    logger.info(f"Affine realization ({convention}, bound {bound}): {report.checked} pairs, "
                f"{len(report.violations)} violations")
    return report


def verify_delta_count(q: Quiver, primes: Optional[Sequence[int]] = None) -> VerificationReport:
    """The class delta has p + 1 indecomposables over every F_p, and the fitted count is q + 1."""
    report = VerificationReport('delta count')
    delta = imaginary_root(q)
    for p in primes or DEFAULT_PRIMES[:3]:
        count = len(catalog_for(q, p).indecomposables(delta))
        report.record(count == p + 1, f"F_{p}: {count} classes of dimension delta", f"F_{p}: {count}")
    polynomial = kac_count(q, delta)
    report.note(f"kac count: {polynomial}")
    return report


def verify_tube_orthogonality(q: Quiver, primes: Sequence[int] = (2, 3), max_length: int = 2) -> VerificationReport:
    """Hom vanishes between regular indecomposables of different tubes."""
    report = VerificationReport('tube orthogonality')
    for p in primes:
        field = prime_field(p)
        members = [m for n in range(1, max_length + 1) for m in regular_members(q, field, n)]
        for (a, x), (b, y) in itertools.product(members, repeat=2):
            if a.tube == b.tube:
                continue
            dim = hom_dimension(x, y)
            report.record(dim == 0, f"F_{p}: Hom({a.tag}, {b.tag}) has dimension {dim}")
    return report


def verify_affine(q: Quiver, height_bound: Optional[int] = None, primes: Optional[Sequence[int]] = None,
                  workers: Optional[int] = None) -> VerificationReport:
    """Jacobi on the epsilon algebra, the Hall-side realization, the delta count and tube orthogonality."""
    if quiver_type(q) != 'affine':
        raise NotTameError(f"Quiver {q.name or q.vertices} is {quiver_type(q)}, not affine")
    report = VerificationReport('affine')
    algebra = EpsilonAlgebra(q, height_bound)
    report.merge(verify_jacobi(algebra.table))
    report.merge(verify_affine_realization(q, height_bound, primes, workers=workers))
    report.merge(verify_delta_count(q, primes))
    report.merge(verify_tube_orthogonality(q))
    return report

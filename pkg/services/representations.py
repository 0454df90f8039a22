"""Representations of quivers over prime fields and their morphisms."""
import itertools
import logging
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from config.settings import ENDOMORPHISM_BUDGET, ENUMERATION_BUDGET, RANDOM_SEED, RANDOM_TRIALS
from services.quiver import DimVector, Quiver, height
from utils.errors import BudgetExceededError
from utils.field_linalg import (FMatrix, PrimeField, block_diagonal, column_space, hstack,
                                kernel_basis, quotient_projection, rank_kernel, row_reduce)

logger = logging.getLogger('roothall')


@dataclass(frozen=True, order=True)
class IsoLabel:
    """
    Name of an isomorphism class of indecomposables.

    kind 'root' covers the unique indecomposable of a real root, 'regular' a tube
    member (tag 'z=<point>,l=<length>,i=<socle>'), 'enum' an enumerated class (tag is
    its index in canonical order) and 'aggregate' the sum over the absolutely
    indecomposables of an imaginary class (tag 'E0(n)').
    """
    dim: DimVector
    kind: str = 'root'
    tag: str = ''

    def __str__(self) -> str:
        if self.kind == 'root':
            return f"S({','.join(str(x) for x in self.dim)})"
        if self.kind == 'regular':
            return f"R({self.tag})"
        if self.kind == 'aggregate':
            return self.tag
        return f"M({','.join(str(x) for x in self.dim)};{self.tag})"


@dataclass(frozen=True, eq=False)
class Rep:
    quiver: Quiver
    field: PrimeField
    dim: DimVector
    matrices: Tuple[FMatrix, ...]

    def __post_init__(self):
        if len(self.dim) != self.quiver.n:
            raise ValueError(f"Dimension vector {self.dim} does not fit {self.quiver.n} vertices")
        if len(self.matrices) != len(self.quiver.arrows):
            raise ValueError(f"Expected {len(self.quiver.arrows)} arrow matrices, got {len(self.matrices)}")
        for arrow, m in zip(self.quiver.arrows, self.matrices):
            expected = (self.dim[arrow.target], self.dim[arrow.source])
            if m.shape != expected:
                raise ValueError(f"Arrow {arrow.label} needs shape {expected}, got {m.shape}")
        for relation in self.quiver.relations:
            total = None
            for coefficient, path in relation.terms:
                term = self.path_map(path).scale(coefficient)
                total = term if total is None else total + term
            if total is not None and not total.is_zero():
                raise ValueError(f"Relation {relation} does not hold")

    @classmethod
    def zero(cls, quiver: Quiver, field: PrimeField, dim: Optional[DimVector] = None) -> 'Rep':
        dim = dim or tuple(0 for _ in range(quiver.n))
        return cls(quiver, field, dim, tuple(FMatrix.zeros(field, dim[a.target], dim[a.source])
                                             for a in quiver.arrows))

    @classmethod
    def from_lists(cls, quiver: Quiver, field: PrimeField, dim: Sequence[int],
                   matrices: Sequence[Sequence[Sequence[int]]]) -> 'Rep':
        dim = tuple(dim)
        mats = []
        for arrow, rows in zip(quiver.arrows, matrices):
            shape = (dim[arrow.target], dim[arrow.source])
            mats.append(FMatrix(field, np.array(rows, dtype=np.int64).reshape(shape)))
        return cls(quiver, field, dim, tuple(mats))

    @classmethod
    def from_entries(cls, quiver: Quiver, field: PrimeField, dim: Sequence[int], entries: Sequence[int]) -> 'Rep':
        """Arrow matrices filled row-major, arrow by arrow, from a flat entry tuple."""
        dim = tuple(dim)
        mats = []
        pos = 0
        for arrow in quiver.arrows:
            r, c = dim[arrow.target], dim[arrow.source]
            mats.append(FMatrix.from_entries(field, r, c, entries[pos:pos + r * c]))
            pos += r * c
        return cls(quiver, field, dim, tuple(mats))

    @classmethod
    def simple(cls, quiver: Quiver, field: PrimeField, i: int) -> 'Rep':
        return cls.zero(quiver, field, quiver.simple(i))

    @property
    def total_dim(self) -> int:
        return height(self.dim)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def key(self) -> Tuple:
        return (self.dim, tuple(m.entries for m in self.matrices))

    def over(self, field: PrimeField) -> 'Rep':
        """The same integer matrices read over another prime field."""
        return Rep(self.quiver, field, self.dim, tuple(FMatrix(field, m.data) for m in self.matrices))

    def matrix(self, label: str) -> FMatrix:
        for arrow, m in zip(self.quiver.arrows, self.matrices):
            if arrow.label == label:
                return m
        raise KeyError(label)

    def path_map(self, path: Sequence[str]) -> FMatrix:
        first = self.quiver.arrow(path[0])
        result = FMatrix.identity(self.field, self.dim[first.source])
        for label in path:
            result = self.matrix(label) @ result
        return result

    def __repr__(self) -> str:
        mats = {a.label: m.data.tolist() for a, m in zip(self.quiver.arrows, self.matrices)}
        return f"Rep(dim={self.dim}, {self.field}, {mats})"


@dataclass(frozen=True, eq=False)
class RepMorphism:
    source: Rep
    target: Rep
    components: Tuple[FMatrix, ...]

    def __post_init__(self):
        for v, c in enumerate(self.components):
            if c.shape != (self.target.dim[v], self.source.dim[v]):
                raise ValueError(f"Component at vertex {v} has shape {c.shape}")
        for arrow, xs, xt in zip(self.source.quiver.arrows, self.source.matrices, self.target.matrices):
            left = self.components[arrow.target] @ xs
            right = xt @ self.components[arrow.source]
            if left != right:
                raise ValueError(f"Square at arrow {arrow.label} does not commute")

    @classmethod
    def identity(cls, x: Rep) -> 'RepMorphism':
        return cls(x, x, tuple(FMatrix.identity(x.field, d) for d in x.dim))

    @classmethod
    def zero(cls, x: Rep, y: Rep) -> 'RepMorphism':
        return cls(x, y, tuple(FMatrix.zeros(x.field, y.dim[v], x.dim[v]) for v in range(x.quiver.n)))

    def compose(self, other: 'RepMorphism') -> 'RepMorphism':
        """self after other."""
        return RepMorphism(other.source, self.target,
                           tuple(a @ b for a, b in zip(self.components, other.components)))

    def __add__(self, other: 'RepMorphism') -> 'RepMorphism':
        return RepMorphism(self.source, self.target, tuple(a + b for a, b in zip(self.components, other.components)))

    def scale(self, c: int) -> 'RepMorphism':
        return RepMorphism(self.source, self.target, tuple(a.scale(c) for a in self.components))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def is_invertible(self) -> bool:
        return all(c.is_invertible() for c in self.components)

    def is_nilpotent(self) -> bool:
        n = self.source.total_dim
        return all(c.power(max(n, 1)).is_zero() for c in self.components)

    def power(self, k: int) -> 'RepMorphism':
        return RepMorphism(self.source, self.target, tuple(c.power(k) for c in self.components))


def _block_sizes(x: Rep, y: Rep) -> List[int]:
    return [y.dim[v] * x.dim[v] for v in range(x.quiver.n)]


def _intertwiner_system(x: Rep, y: Rep) -> FMatrix:
    """
    Matrix of (phi_v) -> (phi_t x_h - y_h phi_s) on row-major vectorised components.

    Its kernel is Hom(x, y) and its cokernel is Ext^1(x, y).
    """
    field = x.field
    sizes = _block_sizes(x, y)
    offsets = np.cumsum([0] + sizes)
    rows = []
    for arrow, xh, yh in zip(x.quiver.arrows, x.matrices, y.matrices):
        s, t = arrow.source, arrow.target
        block = np.zeros((y.dim[t] * x.dim[s], int(offsets[-1])), dtype=np.int64)
        # phi_t x_h
        block[:, offsets[t]:offsets[t + 1]] += np.kron(np.eye(y.dim[t], dtype=np.int64), xh.data.T)
        # - y_h phi_s
        block[:, offsets[s]:offsets[s + 1]] -= np.kron(yh.data, np.eye(x.dim[s], dtype=np.int64))
        rows.append(block)
    if not rows:
        return FMatrix.zeros(field, 0, int(offsets[-1]))
    return FMatrix(field, np.vstack(rows))


def _morphism_from_vector(x: Rep, y: Rep, vec: np.ndarray) -> RepMorphism:
    comps = []
    pos = 0
    for v in range(x.quiver.n):
        size = y.dim[v] * x.dim[v]
        comps.append(FMatrix(x.field, np.asarray(vec[pos:pos + size]).reshape(y.dim[v], x.dim[v])))
        pos += size
    return RepMorphism(x, y, tuple(comps))


def hom_space(x: Rep, y: Rep) -> List[RepMorphism]:
    """Basis of Hom(x, y)."""
    basis = kernel_basis(_intertwiner_system(x, y))
    return [_morphism_from_vector(x, y, basis.column(j)) for j in range(basis.cols)]


def hom_dimension(x: Rep, y: Rep) -> int:
    system = _intertwiner_system(x, y)
    return system.cols - system.rank()


def ext_dimension(x: Rep, y: Rep) -> int:
    """dim Ext^1(x, y) as cocycles modulo coboundaries of the hereditary standard resolution."""
    x.quiver.require_hereditary()
    system = _intertwiner_system(x, y)
    return system.rows - system.rank()


def combination(basis: Sequence[RepMorphism], coefficients: Sequence[int]) -> RepMorphism:
    x, y = basis[0].source, basis[0].target
    comps = []
    for v in range(x.quiver.n):
        acc = np.zeros((y.dim[v], x.dim[v]), dtype=np.int64)
        for c, f in zip(coefficients, basis):
            if c:
                acc = acc + c * f.components[v].data
        comps.append(FMatrix(x.field, acc))
    return RepMorphism(x, y, tuple(comps))


def subspace_coordinates(basis: FMatrix, n: int) -> FMatrix:
    """Left inverse L of a full-column-rank n x k basis: L @ basis = I_k."""
    comp, _ = quotient_projection(basis, n)
    full = hstack([basis, comp]) if basis.cols else comp
    return full.inverse().row_block(0, basis.cols)


def subrepresentation(x: Rep, bases: Sequence[FMatrix]) -> Tuple[Rep, RepMorphism]:
    """Subrepresentation spanned per vertex by the columns of bases, with its inclusion."""
    bases = [column_space(b) if b.cols else b for b in bases]
    dim = tuple(b.cols for b in bases)
    coords = [subspace_coordinates(b, x.dim[v]) for v, b in enumerate(bases)]
    mats = []
    for arrow, xh in zip(x.quiver.arrows, x.matrices):
        mats.append(coords[arrow.target] @ (xh @ bases[arrow.source]))
    sub = Rep(x.quiver, x.field, dim, tuple(mats))
    return sub, RepMorphism(sub, x, tuple(bases))


def quotient_representation(x: Rep, bases: Sequence[FMatrix]) -> Tuple[Rep, RepMorphism]:
    """Quotient of x by the subrepresentation spanned by bases, with the projection."""
    lifts, projections = [], []
    for v, b in enumerate(bases):
        comp, proj = quotient_projection(b, x.dim[v])
        lifts.append(comp)
        projections.append(proj)
    dim = tuple(c.cols for c in lifts)
    mats = [projections[a.target] @ (xh @ lifts[a.source]) for a, xh in zip(x.quiver.arrows, x.matrices)]
    quot = Rep(x.quiver, x.field, dim, tuple(mats))
    return quot, RepMorphism(x, quot, tuple(projections))


def kernel_cokernel(f: RepMorphism) -> Tuple[Rep, RepMorphism, Rep, RepMorphism]:
    """0 -> ker -> X -> Y -> coker -> 0."""
    kernels = [kernel_basis(c) for c in f.components]
    images = [column_space(c) for c in f.components]
    ker, incl = subrepresentation(f.source, kernels)
    coker, proj = quotient_representation(f.target, images)
    return ker, incl, coker, proj


def image_representation(f: RepMorphism) -> Tuple[Rep, RepMorphism]:
    return subrepresentation(f.target, [column_space(c) for c in f.components])


def direct_sum(reps: Sequence[Rep]) -> Rep:
    first = reps[0]
    q = first.quiver
    dim = tuple(sum(r.dim[v] for r in reps) for v in range(q.n))
    mats = tuple(block_diagonal(first.field, [r.matrices[k] for r in reps]) for k in range(len(q.arrows)))
    return Rep(q, first.field, dim, mats)


def base_change(x: Rep, changes: Sequence[FMatrix]) -> Rep:
    """Representation g.x with x_h replaced by g_t x_h g_s^-1."""
    mats = tuple(changes[a.target] @ xh @ changes[a.source].inverse() for a, xh in zip(x.quiver.arrows, x.matrices))
    return Rep(x.quiver, x.field, x.dim, mats)


def _rng() -> np.random.Generator:
    return np.random.default_rng(RANDOM_SEED)


def _random_combination(basis: Sequence[RepMorphism], rng: np.random.Generator) -> RepMorphism:
    p = basis[0].source.field.p
    return combination(basis, [int(c) for c in rng.integers(0, p, size=len(basis))])


def _all_combinations(basis: Sequence[RepMorphism], budget: int, what: str) -> Iterator[RepMorphism]:
    p = basis[0].source.field.p
    size = p ** len(basis)
    if size > budget:
        raise BudgetExceededError(size, budget, what)
    for coefficients in itertools.product(range(p), repeat=len(basis)):
        yield combination(basis, coefficients)


def is_isomorphic(x: Rep, y: Rep, budget: int = ENDOMORPHISM_BUDGET) -> bool:
    """
    Decided by searching Hom(x, y) for an invertible element.

    Random combinations come first; a failed search is settled exhaustively over
    Hom(x, y), or summand by summand when Hom(x, y) is over budget.

    Raises:
        BudgetExceededError: when an exhaustive search is needed and is over budget
    """
    if x.dim != y.dim:
        return False
    if x.is_zero():
        return True
    basis = hom_space(x, y)
    if not basis:
        return False
    if len(basis) != hom_dimension(x, x) or len(basis) != hom_dimension(y, y):
        return False
    rng = _rng()
    for _ in range(RANDOM_TRIALS):
        if _random_combination(basis, rng).is_invertible():
            return True
    p = x.field.p
    if p ** len(basis) <= budget:
        return any(f.is_invertible() for f in _all_combinations(basis, budget, 'Hom search'))
    left, right = decompose(x, budget), decompose(y, budget)
    if sorted(m for _, m in left) != sorted(m for _, m in right):
        return False
    unmatched = list(right)
    for piece, mult in left:
        for k, (other, other_mult) in enumerate(unmatched):
            if mult == other_mult and _isomorphic_indecomposables(piece, other, budget):
                unmatched.pop(k)
                break
        else:
            return False
    return True


def _isomorphic_indecomposables(x: Rep, y: Rep, budget: int) -> bool:
    if x.dim != y.dim:
        return False
    basis = hom_space(x, y)
    if not basis:
        return False
    rng = _rng()
    if any(_random_combination(basis, rng).is_invertible() for _ in range(RANDOM_TRIALS)):
        return True
    return any(f.is_invertible() for f in _all_combinations(basis, budget, 'Hom search'))


def _splitting_endomorphism(x: Rep, basis: Sequence[RepMorphism], budget: int) -> Optional[RepMorphism]:
    """An endomorphism that is neither nilpotent nor invertible, or None when End(x) is local."""
    if len(basis) <= 1:
        return None
    p = x.field.p
    identity = RepMorphism.identity(x)
    rng = _rng()
    for _ in range(RANDOM_TRIALS):
        phi = _random_combination(basis, rng)
        for lam in range(p):
            psi = phi + identity.scale(-lam) if lam else phi
            if not psi.is_invertible() and not psi.is_nilpotent():
                return psi
    for phi in _all_combinations(basis, budget, f"End search of dimension {len(basis)} over {x.field}"):
        if not phi.is_invertible() and not phi.is_nilpotent():
            return phi
    return None


def is_brick(x: Rep) -> bool:
    return not x.is_zero() and hom_dimension(x, x) == 1


def is_indecomposable(x: Rep, budget: int = ENDOMORPHISM_BUDGET) -> bool:
    """
    End(x) is local: every non-invertible endomorphism is nilpotent.

    Raises:
        BudgetExceededError: when |End(x)| is over budget and no splitting endomorphism turned up
    """
    if x.is_zero():
        return False
    basis = hom_space(x, x)
    return _splitting_endomorphism(x, basis, budget) is None


def is_absolutely_indecomposable(x: Rep, budget: int = ENUMERATION_BUDGET) -> bool:
    """Indecomposable with End(x)/rad End(x) = F_p, i.e. |Aut x| = |End x| - |End x| / p."""
    if not is_indecomposable(x):
        return False
    p = x.field.p
    e = hom_dimension(x, x)
    return aut_order(x, budget) == p ** e - p ** (e - 1)


def _fitting_split(x: Rep, psi: RepMorphism) -> Tuple[Rep, Rep]:
    power = psi.power(max(x.total_dim, 1))
    image, _ = subrepresentation(x, [column_space(c) for c in power.components])
    kernel, _ = subrepresentation(x, [kernel_basis(c) for c in power.components])
    return image, kernel


def indecomposable_summands(x: Rep, budget: int = ENDOMORPHISM_BUDGET) -> List[Rep]:
    if x.is_zero():
        return []
    psi = _splitting_endomorphism(x, hom_space(x, x), budget)
    if psi is None:
        return [x]
    image, kernel = _fitting_split(x, psi)
    return indecomposable_summands(image, budget) + indecomposable_summands(kernel, budget)


def decompose(x: Rep, budget: int = ENDOMORPHISM_BUDGET) -> List[Tuple[Rep, int]]:
    """
    Krull-Schmidt decomposition as (indecomposable, multiplicity) pairs.

    Raises:
        BudgetExceededError: when a summand's End or a Hom between summands is too large to exhaust
    """
    groups: List[Tuple[Rep, int]] = []
    for piece in indecomposable_summands(x, budget):
        for k, (rep, mult) in enumerate(groups):
            if _isomorphic_indecomposables(rep, piece, budget):
                groups[k] = (rep, mult + 1)
                break
        else:
            groups.append((piece, 1))
    return sorted(groups, key=lambda item: (height(item[0].dim), item[0].dim))


def entry_count(q: Quiver, d: Sequence[int]) -> int:
    return sum(d[a.source] * d[a.target] for a in q.arrows)


def iterate_representations(q: Quiver, d: Sequence[int], field: PrimeField,
                            budget: int = ENUMERATION_BUDGET) -> Iterator[Rep]:
    """All representations of dimension d in lexicographic order of their entries."""
    entries = entry_count(q, d)
    size = field.p ** entries
    if size > budget:
        raise BudgetExceededError(size, budget, f"enumeration of dimension {tuple(d)} over {field}")
    for values in itertools.product(range(field.p), repeat=entries):
        yield Rep.from_entries(q, field, d, values)


def _rank_profile(x: Rep) -> Tuple[int, ...]:
    return tuple(m.rank() for m in x.matrices)


def enumerate_indecomposables(q: Quiver, d: Sequence[int], field: PrimeField,
                              budget: int = ENUMERATION_BUDGET) -> List[Rep]:
    """
    One representative per isomorphism class of indecomposables of dimension d.

    Representatives are the lexicographically first members, listed in that order.

    Raises:
        BudgetExceededError: when field.p ** (number of entries) exceeds budget
    """
    classes: List[Tuple[Rep, Tuple]] = []
    for rep in iterate_representations(q, d, field, budget):
        if not is_indecomposable(rep):
            continue
        invariant = (_rank_profile(rep), hom_dimension(rep, rep))
        if any(inv == invariant and is_isomorphic(found, rep) for found, inv in classes):
            continue
        classes.append((rep, invariant))
    logger.debug(f"Dimension {tuple(d)} over {field}: {len(classes)} indecomposable classes")
    return [rep for rep, _ in classes]


def aut_order(x: Rep, budget: int = ENUMERATION_BUDGET) -> int:
    """Number of invertible endomorphisms of x."""
    basis = hom_space(x, x)
    p = x.field.p
    if x.is_zero():
        return 1
    if len(basis) == 1:
        return p - 1
    return sum(1 for phi in _all_combinations(basis, budget, 'Aut count') if phi.is_invertible())


def hom_count(x: Rep, y: Rep) -> int:
    return x.field.p ** hom_dimension(x, y)


def submodule_tuples(x: Rep, d: Sequence[int]) -> Iterator[List[FMatrix]]:
    """Per-vertex subspaces of dimensions d closed under every arrow of x."""
    spaces = [list(subspaces(x.field, x.dim[v], d[v])) for v in range(x.quiver.n)]
    for choice in itertools.product(*spaces):
        if all(_maps_into(xh, choice[a.source], choice[a.target]) for a, xh in zip(x.quiver.arrows, x.matrices)):
            yield list(choice)


def _maps_into(xh: FMatrix, source: FMatrix, target: FMatrix) -> bool:
    if source.cols == 0:
        return True
    image = xh @ source
    if image.is_zero():
        return True
    if target.cols == 0:
        return False
    return hstack([target, image]).rank() == target.cols


def subspaces(field: PrimeField, n: int, k: int) -> Iterator[FMatrix]:
    """Every k-dimensional subspace of F_p^n, as the transpose of its reduced echelon basis."""
    if k < 0 or k > n:
        return
    if k == 0:
        yield FMatrix.zeros(field, n, 0)
        return
    p = field.p
    for pivots in itertools.combinations(range(n), k):
        free = [(r, c) for r in range(k) for c in range(pivots[r] + 1, n) if c not in pivots]
        for values in itertools.product(range(p), repeat=len(free)):
            rows = np.zeros((k, n), dtype=np.int64)
            for r, c in enumerate(pivots):
                rows[r, c] = 1
            for (r, c), value in zip(free, values):
                rows[r, c] = value
            yield FMatrix(field, rows.T)

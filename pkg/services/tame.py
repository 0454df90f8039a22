"""Tame layer: defect, tubes of the Kronecker quiver, and xi signs."""
import itertools
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

import numpy as np
from sympy import Matrix, Poly, Symbol

from services.quiver import DimVector, Quiver, euler_form, imaginary_root, is_delta_multiple, quiver_type
from services.representations import (IsoLabel, Rep, enumerate_indecomposables, hom_dimension,
                                      is_absolutely_indecomposable)
from utils.errors import NotTameError
from utils.field_linalg import FMatrix, PrimeField

logger = logging.getLogger('roothall')

x = Symbol('x')

INFINITY = 'inf'


@dataclass(frozen=True, order=True)
class TubePoint:
    """
    A closed point of the projective line over F_p.

    z is 'inf', a field element written in decimal, or a monic irreducible
    polynomial of degree > 1 written like 'x^2+x+1'.
    """
    z: str
    degree: int = 1
    period: int = 1


@dataclass(frozen=True, order=True)
class RegularLabel:
    """M_{i,l,z}; a negative length denotes the shifted object M_{i,|l|,z}[1]."""
    tube: TubePoint
    socle: int
    length: int

    def __post_init__(self):
        if self.length == 0:
            raise ValueError("Regular length must be nonzero")
        if self.tube.period < 1:
            raise ValueError("Tube period must be at least 1")

    @property
    def shifted(self) -> 'RegularLabel':
        return RegularLabel(self.tube, self.socle, -self.length)

    @property
    def tag(self) -> str:
        return f"z={self.tube.z},l={abs(self.length)},i={self.socle}"

    def iso_label(self, dim: DimVector) -> IsoLabel:
        return IsoLabel(dim, 'regular', self.tag)


@dataclass
class TameClassification:
    dim: DimVector
    preprojective: List[Rep] = field(default_factory=list)
    regular: List[Tuple[Optional[RegularLabel], Rep]] = field(default_factory=list)
    preinjective: List[Rep] = field(default_factory=list)

    @property
    def total(self) -> int:
        return len(self.preprojective) + len(self.regular) + len(self.preinjective)


def is_kronecker(q: Quiver) -> bool:
    return (q.n == 2 and len(q.arrows) == 2 and not q.relations
            and q.arrows[0].source == q.arrows[1].source
            and q.arrows[0].target == q.arrows[1].target)


def require_tame(q: Quiver):
    if q.relations or quiver_type(q) != 'affine':
        raise NotTameError(f"Quiver {q.name or q.vertices} is not of affine type")


def defect(q: Quiver, d: Sequence[int]) -> int:
    """<d, delta>: positive on preprojectives, negative on preinjectives, zero on regulars."""
    require_tame(q)
    return euler_form(q, d, imaginary_root(q))


def _format_polynomial(coefficients: Sequence[int]) -> str:
    """Monic polynomial from descending coefficients, e.g. (1, 1, 1) -> 'x^2+x+1'."""
    degree = len(coefficients) - 1
    parts = []
    for k, c in enumerate(coefficients):
        e = degree - k
        if c == 0:
            continue
        monomial = '' if e == 0 else ('x' if e == 1 else f"x^{e}")
        coefficient = str(c) if (c != 1 or e == 0) else ''
        parts.append(f"{coefficient}{monomial}")
    return '+'.join(parts)


@lru_cache(maxsize=None)
def monic_irreducibles(p: int, degree: int) -> Tuple[Tuple[int, ...], ...]:
    """Monic irreducible polynomials of the given degree over F_p, descending coefficients."""
    found = []
    for tail in itertools.product(range(p), repeat=degree):
        coefficients = (1,) + tail
        if Poly(coefficients, x, modulus=p).is_irreducible:
            found.append(coefficients)
    return tuple(found)


def tube_points(p: int, degree: int) -> List[Tuple[TubePoint, Optional[Tuple[int, ...]]]]:
    """Closed points of degree `degree`, each with its monic polynomial (None for infinity)."""
    if degree == 1:
        points = [(TubePoint(str(lam)), (1, (-lam) % p)) for lam in range(p)]
        return points + [(TubePoint(INFINITY), None)]
    return [(TubePoint(_format_polynomial(f), degree), f) for f in monic_irreducibles(p, degree)]


def _companion(field: PrimeField, coefficients: Sequence[int]) -> FMatrix:
    """Companion matrix of a monic polynomial given by descending coefficients."""
    n = len(coefficients) - 1
    m = np.zeros((n, n), dtype=np.int64)
    for i in range(1, n):
        m[i, i - 1] = 1
    for i in range(n):
        m[i, n - 1] = -coefficients[n - i]
    return FMatrix(field, m)


def _polynomial_power(coefficients: Sequence[int], k: int, p: int) -> Tuple[int, ...]:
    poly = Poly(coefficients, x, modulus=p) ** k
    return tuple(int(c) % p for c in poly.all_coeffs())


def kronecker_arrows(q: Quiver) -> Tuple[int, int]:
    if not is_kronecker(q):
        raise NotTameError(f"Quiver {q.name or q.vertices} is not the Kronecker quiver")
    return q.arrows[0].source, q.arrows[0].target


def regular_representative(q: Quiver, field: PrimeField, point: TubePoint,
                           polynomial: Optional[Sequence[int]], length: int) -> Rep:
    """
    Normal form of the regular Kronecker module of the given tube point and length.

    Finite points use (I, C(f^l)); infinity uses (J_l(0), I).
    """
    source, target = kronecker_arrows(q)
    n = point.degree * length
    if polynomial is None:
        a = FMatrix(field, np.eye(n, k=-1, dtype=np.int64))
        b = FMatrix.identity(field, n)
    else:
        a = FMatrix.identity(field, n)
        b = _companion(field, _polynomial_power(polynomial, length, field.p))
    dim = tuple(n if v in (source, target) else 0 for v in range(q.n))
    return Rep(q, field, dim, (a, b))


def regular_members(q: Quiver, field: PrimeField, n: int) -> List[Tuple[RegularLabel, Rep]]:
    """Every indecomposable of class n*delta over F_p, in tube order."""
    members = []
    for degree in range(1, n + 1):
        if n % degree:
            continue
        length = n // degree
        for point, polynomial in tube_points(field.p, degree):
            label = RegularLabel(point, 0, length)
            members.append((label, regular_representative(q, field, point, polynomial, length)))
    return members


def rational_members(q: Quiver, field: PrimeField, n: int) -> List[Tuple[RegularLabel, Rep]]:
    """Members of class n*delta at F_p-rational tube points; these are the absolutely indecomposable ones."""
    return [(RegularLabel(point, 0, n), regular_representative(q, field, point, polynomial, n))
            for point, polynomial in tube_points(field.p, 1)]


def tube_point(rep: Rep) -> Tuple[TubePoint, int]:
    """Tube point and regular length of an indecomposable regular Kronecker module."""
    kronecker_arrows(rep.quiver)
    a, b = rep.matrices
    p = rep.field.p
    n = a.rows
    if not a.is_invertible():
        return TubePoint(INFINITY), n
    c = a.inverse() @ b
    charpoly = Matrix(c.data.tolist()).charpoly(x)
    _, factors = Poly(charpoly.as_expr(), x, modulus=p).factor_list()
    if len(factors) != 1:
        raise ValueError(f"Pencil with characteristic polynomial {charpoly.as_expr()} is not indecomposable")
    factor, multiplicity = factors[0]
    coefficients = tuple(int(c) % p for c in factor.monic().all_coeffs())
    if len(coefficients) == 2:
        return TubePoint(str((-coefficients[1]) % p)), multiplicity
    return TubePoint(_format_polynomial(coefficients), len(coefficients) - 1), multiplicity


def classify_tame(q: Quiver, d: Sequence[int], field: PrimeField) -> TameClassification:
    """
    Split the indecomposables of dimension d into preprojective, regular and preinjective.

    Raises:
        NotTameError: for quivers that are not of affine type
    """
    require_tame(q)
    d = tuple(d)
    result = TameClassification(d)
    sign = defect(q, d)
    for rep in enumerate_indecomposables(q, d, field):
        if sign > 0:
            result.preprojective.append(rep)
        elif sign < 0:
            result.preinjective.append(rep)
        elif is_kronecker(q):
            point, length = tube_point(rep)
            result.regular.append((RegularLabel(point, 0, length), rep))
        else:
            result.regular.append((None, rep))
    logger.debug(f"Tame classes of {d} over {field}: {len(result.preprojective)} preprojective, "
                 f"{len(result.regular)} regular, {len(result.preinjective)} preinjective")
    return result


def xi_sign(rep: Rep) -> int:
    """(-1)^(1 + dim End)."""
    return -1 if hom_dimension(rep, rep) % 2 == 0 else 1


def aggregate_label(q: Quiver, n: int) -> IsoLabel:
    delta = imaginary_root(q)
    return IsoLabel(tuple(n * c for c in delta), 'aggregate', f"E0({n})")


def aggregate_sign(n: int) -> int:
    """xi on the class n*delta: the members have End of dimension n."""
    return 1 if n % 2 == 1 else -1


def build_E0(q: Quiver, n: int, field: PrimeField) -> Tuple[IsoLabel, List[Rep]]:
    """
    The constructible class of the absolutely indecomposables of class n*delta.

    Over F_p these are the length-n modules at the p + 1 rational points of the
    homogeneous tubes; modules at points of higher degree are left out, so the
    member count is q + 1 for every n.

    Returns the aggregate label and the members it sums over.
    """
    require_tame(q)
    if is_kronecker(q):
        members = [rep for _, rep in rational_members(q, field, n)]
    else:
        candidates = enumerate_indecomposables(q, tuple(n * c for c in imaginary_root(q)), field)
        members = [rep for rep in candidates if is_absolutely_indecomposable(rep)]
    return aggregate_label(q, n), members


def delta_multiple_of(q: Quiver, d: Sequence[int]) -> int:
    if quiver_type(q) != 'affine':
        return 0
    return is_delta_multiple(q, d)

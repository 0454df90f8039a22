"""Integer and Laurent polynomials, and exact interpolation across primes."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple

from sympy import Poly, QQ, ZZ, Symbol
from sympy.polys.polyfuncs import interpolate as sympy_interpolate

from utils.errors import InterpolationError

q = Symbol('q')
v = Symbol('v')


def _strip(coefficients: Sequence[int]) -> Tuple[int, ...]:
    coeffs = list(coefficients)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(int(c) for c in coeffs)


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial in q, coefficients in ascending degree."""
    coefficients: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'coefficients', _strip(self.coefficients))

    @classmethod
    def constant(cls, c: int) -> 'IntPolynomial':
        return cls((c,))

    @classmethod
    def from_poly(cls, poly: Poly) -> 'IntPolynomial':
        return cls(tuple(int(c) for c in reversed(poly.all_coeffs())))

    def to_poly(self) -> Poly:
        return Poly(list(reversed(self.coefficients)) or [0], q, domain=ZZ)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def __call__(self, x: int) -> int:
        total = 0
        for c in reversed(self.coefficients):
            total = total * x + c
        return total

    def __add__(self, other: 'IntPolynomial') -> 'IntPolynomial':
        return IntPolynomial.from_poly(self.to_poly() + other.to_poly())

    def __sub__(self, other: 'IntPolynomial') -> 'IntPolynomial':
        return IntPolynomial.from_poly(self.to_poly() - other.to_poly())

    def __mul__(self, other: 'IntPolynomial') -> 'IntPolynomial':
        return IntPolynomial.from_poly(self.to_poly() * other.to_poly())

    def __str__(self) -> str:
        if self.is_zero():
            return '0'
        return str(self.to_poly().as_expr()).replace('**', '^')


def interpolate(points: Sequence[Tuple[int, int]], degree_bound: int) -> IntPolynomial:
    """
    Fit an integer polynomial of degree <= degree_bound through (q, value) points.

    The first degree_bound + 1 points determine the fit; every further point is a check.

    Raises:
        InterpolationError: 'too few points', 'non-integral fit' or 'over-determined mismatch'
    """
    if len({x for x, _ in points}) != len(points):
        raise InterpolationError('too few points', "Interpolation points must have distinct q values")
    if len(points) < degree_bound + 1:
        raise InterpolationError('too few points',
                                 f"{len(points)} points cannot determine degree {degree_bound}")
    fit_points = list(points[:degree_bound + 1])
    if len(fit_points) == 1:
        rational = Poly(fit_points[0][1], q, domain=QQ)
    else:
        rational = Poly(sympy_interpolate([(x, y) for x, y in fit_points], q), q, domain=QQ)
    coeffs = [QQ.to_sympy(c) for c in rational.all_coeffs()]
    if any(c.q != 1 for c in coeffs):
        raise InterpolationError('non-integral fit', f"Fitted polynomial {rational.as_expr()} is not integral")
    poly = IntPolynomial(tuple(int(c) for c in reversed(coeffs)))
    for x, y in points[degree_bound + 1:]:
        if poly(x) != y:
            raise InterpolationError('over-determined mismatch',
                                     f"Fit {poly} predicts {poly(x)} at q={x}, counted {y}")
    return poly


@dataclass(frozen=True)
class LaurentPolynomial:
    """Integer Laurent polynomial in v: sum of coefficients[k] * v^(min_exponent + k)."""
    coefficients: Tuple[int, ...] = ()
    min_exponent: int = 0

    def __post_init__(self):
        coeffs = list(_strip(self.coefficients))
        shift = 0
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
            shift += 1
        object.__setattr__(self, 'coefficients', tuple(coeffs))
        object.__setattr__(self, 'min_exponent', self.min_exponent + shift if coeffs else 0)

    @classmethod
    def monomial(cls, c: int, exponent: int) -> 'LaurentPolynomial':
        return cls((c,), exponent)

    @classmethod
    def from_terms(cls, terms: Dict[int, int]) -> 'LaurentPolynomial':
        terms = {e: c for e, c in terms.items() if c}
        if not terms:
            return cls()
        low, high = min(terms), max(terms)
        return cls(tuple(terms.get(e, 0) for e in range(low, high + 1)), low)

    @classmethod
    def from_int_polynomial(cls, poly: IntPolynomial, exponent_scale: int = 2) -> 'LaurentPolynomial':
        """Substitute q = v^exponent_scale."""
        return cls.from_terms({exponent_scale * k: c for k, c in enumerate(poly.coefficients)})

    def terms(self) -> Dict[int, int]:
        return {self.min_exponent + k: c for k, c in enumerate(self.coefficients) if c}

    def is_zero(self) -> bool:
        return not self.coefficients

    def _poly(self) -> Poly:
        return Poly(list(reversed(self.coefficients)) or [0], v, domain=ZZ)

    def __add__(self, other: 'LaurentPolynomial') -> 'LaurentPolynomial':
        terms = self.terms()
        for e, c in other.terms().items():
            terms[e] = terms.get(e, 0) + c
        return LaurentPolynomial.from_terms(terms)

    def __neg__(self) -> 'LaurentPolynomial':
        return LaurentPolynomial(tuple(-c for c in self.coefficients), self.min_exponent)

    def __sub__(self, other: 'LaurentPolynomial') -> 'LaurentPolynomial':
        return self + (-other)

    def __mul__(self, other) -> 'LaurentPolynomial':
        if isinstance(other, int):
            return LaurentPolynomial(tuple(other * c for c in self.coefficients), self.min_exponent)
        if self.is_zero() or other.is_zero():
            return LaurentPolynomial()
        product = self._poly() * other._poly()
        return LaurentPolynomial(tuple(int(c) for c in reversed(product.all_coeffs())),
                                 self.min_exponent + other.min_exponent)

    __rmul__ = __mul__

    def evaluate_at_square_root(self, p: int) -> Tuple[Fraction, Fraction]:
        """Value under v^2 = p, returned as (a, b) meaning a + b * v."""
        even, odd = Fraction(0), Fraction(0)
        for e, c in self.terms().items():
            if e % 2 == 0:
                even += c * Fraction(p) ** (e // 2)
            else:
                odd += c * Fraction(p) ** ((e - 1) // 2)
        return even, odd

    def __str__(self) -> str:
        if self.is_zero():
            return '0'
        parts = []
        for e, c in sorted(self.terms().items()):
            parts.append(f"{c}*v^{e}" if e else f"{c}")
        return ' + '.join(parts)


def quantum_integer(n: int) -> LaurentPolynomial:
    """[n]_v = (v^n - v^-n) / (v - v^-1)."""
    return LaurentPolynomial.from_terms({n - 1 - 2 * k: 1 for k in range(n)})


def quantum_factorial(n: int) -> LaurentPolynomial:
    result = LaurentPolynomial.monomial(1, 0)
    for k in range(1, n + 1):
        result = result * quantum_integer(k)
    return result


def quantum_binomial(n: int, k: int) -> LaurentPolynomial:
    """Gaussian binomial [n k]_v, computed through the v-Pascal rule."""
    if k < 0 or k > n:
        return LaurentPolynomial()
    if k == 0 or k == n:
        return LaurentPolynomial.monomial(1, 0)
    left = quantum_binomial(n - 1, k - 1) * LaurentPolynomial.monomial(1, -(n - k))
    right = quantum_binomial(n - 1, k) * LaurentPolynomial.monomial(1, k)
    return left + right


def evaluate_at_one(poly: IntPolynomial) -> int:
    return poly(1)


def fit_counts(counts: Iterable[Tuple[int, int]], degree_bound: int) -> IntPolynomial:
    """interpolate over (prime, count) pairs in ascending prime order."""
    return interpolate(sorted(counts), degree_bound)


def required_points(degree_bound: int) -> int:
    """Fit points plus one held-out check."""
    return degree_bound + 2


def polynomial_from_string(text: str) -> IntPolynomial:
    from sympy import sympify
    return IntPolynomial.from_poly(Poly(sympify(text.replace('^', '**')), q, domain=ZZ))


def coefficient_list(poly: IntPolynomial) -> List[int]:
    return list(poly.coefficients)

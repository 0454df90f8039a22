"""Catalog of indecomposables and isomorphism classes per quiver and prime."""
import itertools
import logging
import re
import threading
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from config.settings import DEFAULT_PRIMES
from services.quiver import DimVector, Quiver, height, imaginary_root, is_real_root, quiver_type, vector_sub
from services.representations import (IsoLabel, Rep, direct_sum, enumerate_indecomposables, hom_dimension,
                                      is_absolutely_indecomposable, is_brick, is_isomorphic,
                                      iterate_representations)
from services.tame import aggregate_label, delta_multiple_of, is_kronecker, regular_members
from utils.errors import BudgetExceededError, FieldStabilityError
from utils.field_linalg import PrimeField, prime_field
from utils.polynomials import IntPolynomial, fit_counts, required_points

logger = logging.getLogger('roothall')

IsoClass = Tuple[IsoLabel, ...]

_LABEL_RE = re.compile(r'^\s*(?P<head>[SPIRM]|E0)\((?P<body>.*)\)\s*$')


def format_class(cls: IsoClass) -> str:
    if not cls:
        return '0'
    return '+'.join(str(label) for label in cls)


def split_top_level(text: str, separator: str = '+') -> List[str]:
    parts, depth, current = [], 0, []
    for ch in text:
        if ch == '(':
            depth += 1
        elif ch == ')':
            depth -= 1
        if ch == separator and depth == 0:
            parts.append(''.join(current))
            current = []
        else:
            current.append(ch)
    parts.append(''.join(current))
    return [p.strip() for p in parts if p.strip()]


def _point_degree(z: str) -> int:
    if z == 'inf' or z.isdigit():
        return 1
    exponents = [int(e) for e in re.findall(r'x\^(\d+)', z)]
    return max(exponents) if exponents else 1


def parse_label(text: str, q: Quiver) -> IsoLabel:
    """
    Parse the wire syntax of an indecomposable label.

    S(d1,...,dn), P(...) and I(...) name the indecomposable of a real root,
    R(z=..,l=..,i=..) a Kronecker tube member, E0(n) the aggregate of class n*delta
    and M(d1,...,dn;k) an enumerated class.
    """
    match = _LABEL_RE.match(text)
    if not match:
        raise ValueError(f"Cannot parse label '{text}'")
    head, body = match.group('head'), match.group('body')
    if head in ('S', 'P', 'I'):
        dim = tuple(int(c) for c in body.split(','))
        if len(dim) != q.n:
            raise ValueError(f"Label '{text}' needs {q.n} coordinates")
        return IsoLabel(dim)
    if head == 'E0':
        return aggregate_label(q, int(body))
    if head == 'M':
        coords, tag = body.split(';')
        return IsoLabel(tuple(int(c) for c in coords.split(',')), 'enum', tag.strip())
    fields = dict(item.split('=', 1) for item in body.split(','))
    length = int(fields['l'])
    delta = imaginary_root(q)
    n = length * _point_degree(fields['z'])
    return IsoLabel(tuple(n * c for c in delta), 'regular',
                    f"z={fields['z']},l={length},i={fields.get('i', '0')}")


def parse_class(text: str, q: Quiver) -> IsoClass:
    text = text.strip()
    if text in ('', '0'):
        return ()
    return tuple(sorted(parse_label(part, q) for part in split_top_level(text)))


def class_dim(cls: IsoClass, n: int) -> DimVector:
    dim = [0] * n
    for label in cls:
        for i, c in enumerate(label.dim):
            dim[i] += c
    return tuple(dim)


@lru_cache(maxsize=None)
def real_root_representative(q: Quiver, d: DimVector) -> Tuple[int, ...]:
    """
    Integer entries of a 0/1 representation of the real root d that is a brick
    over F_2 and over every configured prime.

    Raises:
        FieldStabilityError: when no 0/1 candidate stays a brick across the primes
    """
    small = prime_field(2)
    fields = [prime_field(p) for p in DEFAULT_PRIMES if p != 2]
    for candidate in iterate_representations(q, d, small):
        if not is_brick(candidate):
            continue
        if all(is_brick(candidate.over(f)) for f in fields):
            entries = tuple(e for m in candidate.matrices for e in m.entries)
            logger.debug(f"Real root {d} represented by {entries}")
            return entries
    raise FieldStabilityError(f"No 0/1 brick of dimension {d} is stable over primes {DEFAULT_PRIMES}")


def _dims_below(d: Sequence[int]) -> List[DimVector]:
    return [e for e in itertools.product(*(range(c + 1) for c in d)) if any(e)]


class ClassCatalog:
    """
    Indecomposables and isomorphism classes of one quiver over one prime field.

    Classes are sorted tuples of indecomposable labels. Identification compares
    Hom-dimension profiles against every catalogued indecomposable below the
    dimension, falling back to an explicit isomorphism search on collisions.
    """

    def __init__(self, quiver: Quiver, field: PrimeField):
        self.quiver = quiver
        self.field = field
        self.kind = quiver_type(quiver)
        self._indecs: Dict[DimVector, List[Tuple[IsoLabel, Rep]]] = {}
        self._reps: Dict[IsoLabel, Rep] = {}
        self._hom: Dict[Tuple[IsoLabel, IsoLabel], int] = {}
        self._classes: Dict[DimVector, List[IsoClass]] = {}
        self._profiles: Dict[DimVector, Dict[Tuple[int, ...], List[IsoClass]]] = {}
        self._absolute: Dict[IsoLabel, bool] = {}
        self._lock = threading.RLock()

    def __repr__(self) -> str:
        return f"ClassCatalog({self.quiver.name or self.quiver.vertices}, {self.field})"

    def indecomposables(self, d: Sequence[int]) -> List[Tuple[IsoLabel, Rep]]:
        d = tuple(d)
        with self._lock:
            if d not in self._indecs:
                found = self._build_indecomposables(d)
                self._indecs[d] = found
                for label, rep in found:
                    self._reps[label] = rep
            return self._indecs[d]

    def _build_indecomposables(self, d: DimVector) -> List[Tuple[IsoLabel, Rep]]:
        if not any(d) or any(c < 0 for c in d):
            return []
        if is_real_root(self.quiver, d):
            entries = real_root_representative(self.quiver, d)
            return [(IsoLabel(d), Rep.from_entries(self.quiver, self.field, d, entries))]
        n = delta_multiple_of(self.quiver, d)
        if n and is_kronecker(self.quiver):
            return [(label.iso_label(d), rep) for label, rep in regular_members(self.quiver, self.field, n)]
        if self.kind == 'finite' or (self.kind == 'affine' and not n):
            return []
        reps = enumerate_indecomposables(self.quiver, d, self.field)
        return [(IsoLabel(d, 'enum', str(k)), rep) for k, rep in enumerate(reps)]

    def representative(self, label: IsoLabel) -> Rep:
        with self._lock:
            if label not in self._reps:
                self.indecomposables(label.dim)
            if label not in self._reps:
                raise KeyError(f"{label} is not an indecomposable of {self.quiver.name or self.quiver.vertices} "
                               f"over {self.field}")
            return self._reps[label]

    def class_representative(self, cls: IsoClass) -> Rep:
        if not cls:
            return Rep.zero(self.quiver, self.field)
        return direct_sum([self.representative(label) for label in cls])

    def labels_below(self, d: Sequence[int]) -> List[IsoLabel]:
        labels = []
        for e in sorted(_dims_below(d), key=lambda e: (height(e), e)):
            labels.extend(label for label, _ in self.indecomposables(e))
        return labels

    def classes(self, d: Sequence[int]) -> List[IsoClass]:
        """Every isomorphism class of dimension d as a sorted multiset of indecomposables."""
        d = tuple(d)
        with self._lock:
            if d not in self._classes:
                self._classes[d] = self._build_classes(d)
            return self._classes[d]

    def _build_classes(self, d: DimVector) -> List[IsoClass]:
        labels = self.labels_below(d)
        out: List[IsoClass] = []

        def extend(start: int, remaining: DimVector, chosen: List[IsoLabel]):
            if not any(remaining):
                out.append(tuple(sorted(chosen)))
                return
            for k in range(start, len(labels)):
                label = labels[k]
                rest = vector_sub(remaining, label.dim)
                if all(c >= 0 for c in rest):
                    chosen.append(label)
                    extend(k, rest, chosen)
                    chosen.pop()

        if not any(d):
            return [()]
        extend(0, d, [])
        return sorted(set(out))

    def hom_dim(self, a: IsoLabel, b: IsoLabel) -> int:
        key = (a, b)
        with self._lock:
            if key not in self._hom:
                self._hom[key] = hom_dimension(self.representative(a), self.representative(b))
            return self._hom[key]

    def _profile_table(self, d: DimVector) -> Dict[Tuple[int, ...], List[IsoClass]]:
        with self._lock:
            if d not in self._profiles:
                probes = self.labels_below(d)
                table: Dict[Tuple[int, ...], List[IsoClass]] = {}
                for cls in self.classes(d):
                    profile = tuple(sum(self.hom_dim(m, label) for label in cls) for m in probes)
                    table.setdefault(profile, []).append(cls)
                self._profiles[d] = table
            return self._profiles[d]

    def identify(self, rep: Rep) -> IsoClass:
        """The isomorphism class of rep."""
        d = rep.dim
        if not any(d):
            return ()
        table = self._profile_table(d)
        profile = tuple(hom_dimension(self.representative(m), rep) for m in self.labels_below(d))
        candidates = table.get(profile, [])
        if len(candidates) == 1:
            return candidates[0]
        for cls in candidates:
            if is_isomorphic(self.class_representative(cls), rep):
                return cls
        raise ValueError(f"Representation of dimension {d} over {self.field} is not in the catalog")

    def is_absolute(self, label: IsoLabel) -> bool:
        """Whether the indecomposable stays indecomposable over every extension of F_p."""
        if label.kind == 'regular':
            fields = dict(item.split('=', 1) for item in label.tag.split(','))
            return _point_degree(fields['z']) == 1
        if label.kind != 'enum':
            return True
        with self._lock:
            if label not in self._absolute:
                self._absolute[label] = is_absolutely_indecomposable(self.representative(label))
            return self._absolute[label]

    def absolute_indecomposables(self, d: Sequence[int]) -> List[Tuple[IsoLabel, Rep]]:
        return [(label, rep) for label, rep in self.indecomposables(d) if self.is_absolute(label)]

    def aggregate(self, label: IsoLabel) -> IsoLabel:
        """
        Aggregate label standing for label's imaginary class.

        Real-root labels and members at points of higher degree are kept as they are.
        """
        if label.kind in ('regular', 'enum') and self.kind == 'affine' and self.is_absolute(label):
            n = delta_multiple_of(self.quiver, label.dim)
            if n:
                return aggregate_label(self.quiver, n)
        return label

    def signature(self, cls: IsoClass) -> IsoClass:
        return tuple(sorted(self.aggregate(label) for label in cls))

    def signatures(self, d: Sequence[int]) -> List[IsoClass]:
        return sorted({self.signature(cls) for cls in self.classes(d)})

    def members(self, signature: IsoClass) -> List[IsoClass]:
        """Concrete classes carrying the given signature."""
        d = class_dim(signature, self.quiver.n)
        return [cls for cls in self.classes(d) if self.signature(cls) == signature]

    def label_members(self, label: IsoLabel) -> List[IsoLabel]:
        """Concrete indecomposables summed by an aggregate label, or the label itself."""
        if label.kind != 'aggregate':
            return [label]
        return [member for member, _ in self.absolute_indecomposables(label.dim)]


@lru_cache(maxsize=None)
def catalog_for(q: Quiver, p: int) -> ClassCatalog:
    return ClassCatalog(q, prime_field(p))


def kac_count(q: Quiver, d: Sequence[int], primes: Optional[Sequence[int]] = None) -> IntPolynomial:
    """
    Number of absolutely indecomposable classes of dimension d as a polynomial in q.

    Raises:
        InterpolationError: when the counts do not fit a polynomial of degree <= height(d)
    """
    d = tuple(d)
    bound = height(d)
    pool = list(primes or DEFAULT_PRIMES)
    counts = []
    for p in pool:
        if len(counts) == required_points(bound):
            break
        try:
            counts.append((p, len(catalog_for(q, p).absolute_indecomposables(d))))
        except BudgetExceededError:
            logger.warning(f"Kac count of {d} stops at prime {p}: enumeration over budget")
            break
    return fit_counts(counts, bound)

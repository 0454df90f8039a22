"""Structure-constant tables of the root-category Lie algebra and their verification suites."""
import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Set, Tuple, Union

from sympy import Matrix

from config.settings import DEFAULT_PRIMES, TAME_HEIGHT_BOUND
from services.catalog import IsoClass
from services.hall_algebra import aut_count_polynomial, hom_count_polynomial
from services.quiver import (DimVector, Quiver, enumerate_roots, height, imaginary_root, is_delta_multiple,
                             is_real_root, quiver_type, symmetric_form)
from services.representations import IsoLabel
from services.root_category import RootCatObject, class_size, parse_object, require_not_wild, triangle_constant
from services.tame import aggregate_label
from utils.resource_monitor import run_jobs

logger = logging.getLogger('roothall')

Number = Union[int, Fraction]
Vector = Dict[int, Number]


@dataclass(frozen=True)
class BasisElement:
    """A basis vector: kind 'h' for the Cartan part, 'n' for root vectors."""
    name: str
    degree: DimVector
    kind: str = 'n'
    obj: Optional[RootCatObject] = None
    vertex: int = -1

    def __str__(self) -> str:
        return self.name


@dataclass
class VerificationReport:
    suite: str
    checked: int = 0
    skipped: int = 0
    violations: List[str] = field(default_factory=list)
    lines: List[str] = field(default_factory=list)

    def record(self, ok: bool, witness: str, line: Optional[str] = None):
        self.checked += 1
        if not ok:
            self.violations.append(witness)
        if line is not None:
            self.lines.append(f"{line} {'pass' if ok else 'FAIL'}")

    def note(self, line: str):
        self.lines.append(line)

    @property
    def ok(self) -> bool:
        return not self.violations

    def merge(self, other: 'VerificationReport') -> 'VerificationReport':
        self.checked += other.checked
        self.skipped += other.skipped
        self.violations.extend(f"{other.suite}: {v}" for v in other.violations)
        self.lines.extend(f"{other.suite}: {line}" for line in other.lines)
        return self

    def render(self) -> str:
        out = [f"suite: {self.suite}", f"checked: {self.checked}", f"skipped: {self.skipped}"]
        out.extend(self.lines)
        out.extend(f"violation: {v}" for v in self.violations)
        out.append(f"violations: {len(self.violations)}")
        return '\n'.join(out) + '\n'


@dataclass
class LieTable:
    """
    Finite-dimensional (possibly truncated) Lie algebra given by structure constants.

    constants[(i, j)] holds the nonzero coefficients of [b_i, b_j]; pairs in `unknown`
    leave the truncation and carry no constants.
    """
    name: str
    basis: List[BasisElement]
    constants: Dict[Tuple[int, int], Dict[int, Number]]
    gram: Optional[List[List[int]]] = None
    unknown: Set[Tuple[int, int]] = field(default_factory=set)
    height_bound: Optional[int] = None
    quiver: Optional[Quiver] = None

    def __post_init__(self):
        self._index = {str(b): k for k, b in enumerate(self.basis)}

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def index(self, name: str) -> int:
        return self._index[name]

    def vector(self, name: str, coefficient: Number = 1) -> Vector:
        return {self.index(name): coefficient}

    def find(self, obj: RootCatObject) -> Optional[int]:
        for k, b in enumerate(self.basis):
            if b.obj == obj:
                return k
        return None

    def bracket_basis(self, i: int, j: int) -> Optional[Vector]:
        if (i, j) in self.unknown:
            return None
        return self.constants.get((i, j), {})

    def bracket(self, x: Vector, y: Vector) -> Optional[Vector]:
        """Bilinear bracket; None when a needed basis bracket leaves the truncation."""
        out: Vector = {}
        for i, a in x.items():
            for j, b in y.items():
                if not a or not b:
                    continue
                c = self.bracket_basis(i, j)
                if c is None:
                    return None
                for k, value in c.items():
                    out[k] = out.get(k, 0) + a * b * value
        return clean(out)

    def form(self, x: Vector, y: Vector) -> Number:
        total = 0
        for i, a in x.items():
            for j, b in y.items():
                total += a * b * self.gram[i][j]
        return total

    def pairs(self) -> Iterable[Tuple[int, int]]:
        return itertools.combinations(range(self.dimension), 2)


def clean(v: Vector) -> Vector:
    return {k: c for k, c in v.items() if c}


def add(x: Vector, y: Vector, scale: Number = 1) -> Vector:
    out = dict(x)
    for k, c in y.items():
        out[k] = out.get(k, 0) + scale * c
    return clean(out)


def scale_vector(x: Vector, c: Number) -> Vector:
    return clean({k: c * v for k, v in x.items()})


def in_bound(q: Quiver, degree: Sequence[int], height_bound: Optional[int]) -> bool:
    """Whether the root space of `degree` is inside the table: zero outside roots, known within the bound."""
    if height_bound is None or not any(degree):
        return True
    if not (all(c >= 0 for c in degree) or all(c <= 0 for c in degree)):
        return True
    d = tuple(abs(c) for c in degree)
    if height(d) <= height_bound:
        return True
    return not (is_real_root(q, d) or is_delta_multiple(q, d))


def table_from_bracket(name: str, basis: List[BasisElement], bracket_fn: Callable[[int, int], Optional[Vector]],
                       quiver: Optional[Quiver] = None, height_bound: Optional[int] = None,
                       gram: Optional[List[List[int]]] = None, workers: Optional[int] = None) -> LieTable:
    """Fill an antisymmetric table from a function on pairs i < j; None marks a truncated pair."""
    pairs = list(itertools.combinations(range(len(basis)), 2))
    results = run_jobs(lambda pair: bracket_fn(*pair), pairs, workers)
    constants: Dict[Tuple[int, int], Dict[int, Number]] = {}
    unknown: Set[Tuple[int, int]] = set()
    for (i, j), value in zip(pairs, results):
        if value is None:
            unknown.update({(i, j), (j, i)})
            continue
        value = clean(value)
        if value:
            constants[(i, j)] = value
            constants[(j, i)] = scale_vector(value, -1)
    return LieTable(name, basis, constants, gram, unknown, height_bound, quiver)


def hall_basis(q: Quiver, height_bound: Optional[int] = None) -> List[BasisElement]:
    """h_i by vertex, then module labels by (height, dim), then their shifts."""
    kind = quiver_type(q)
    roots = enumerate_roots(q, height_bound or 0)
    labels: List[IsoLabel] = [IsoLabel(d) for d in roots.real_roots]
    if kind == 'affine':
        labels.extend(aggregate_label(q, k) for k in range(1, height_bound // height(imaginary_root(q)) + 1))
    labels.sort(key=lambda label: (height(label.dim), label.dim, label.kind))
    zero = tuple(0 for _ in range(q.n))
    basis = [BasisElement(f"h_{v}", zero, 'h', vertex=i) for i, v in enumerate(q.vertices)]
    basis.extend(BasisElement(str(label), label.dim, 'n', RootCatObject.module(label)) for label in labels)
    basis.extend(BasisElement(f"{label}[1]", tuple(-c for c in label.dim), 'n', RootCatObject.shifted_module(label))
                 for label in labels)
    return basis


def h_vector(q: Quiver, d: Sequence[int], scale: Number = 1) -> Vector:
    """h_d in the basis h_i, which occupies the first q.n indices."""
    return clean({i: scale * c for i, c in enumerate(d)})


class _HallBracket:
    def __init__(self, q: Quiver, basis: List[BasisElement], height_bound: Optional[int], primes: Sequence[int]):
        self.q = q
        self.basis = basis
        self.height_bound = height_bound
        self.primes = list(primes)
        self.by_degree: Dict[DimVector, List[int]] = {}
        for k, b in enumerate(basis):
            if b.kind == 'n':
                self.by_degree.setdefault(b.degree, []).append(k)

    def __call__(self, i: int, j: int) -> Optional[Vector]:
        x, y = self.basis[i], self.basis[j]
        if x.kind == 'h' and y.kind == 'h':
            return {}
        if x.kind == 'h' or y.kind == 'h':
            h, u, sign = (x, y, 1) if x.kind == 'h' else (y, x, -1)
            c = -symmetric_form(self.q, self.q.simple(h.vertex), u.degree)
            return {self.basis.index(u): sign * c}
        degree = tuple(a + b for a, b in zip(x.degree, y.degree))
        if not in_bound(self.q, degree, self.height_bound):
            return None
        out: Vector = {}
        for k in self.by_degree.get(degree, []):
            middle = self.basis[k].obj
            c = (triangle_constant(self.q, middle, x.obj, y.obj, self.primes)
                 - triangle_constant(self.q, middle, y.obj, x.obj, self.primes))
            if c:
                out[k] = c
        if x.obj.shift() == y.obj:
            size = class_size(self.q, x.obj.label, self.primes)
            d = x.obj.label.dim
            out = add(out, h_vector(self.q, d, size if not x.obj.is_shifted else -size))
        return out


def assemble_lie_table(q: Quiver, height_bound: Optional[int] = None, primes: Optional[Sequence[int]] = None,
                       workers: Optional[int] = None) -> LieTable:
    """
    Structure constants and Gram matrix of h + n over the indecomposables of the root category.

    Finite type gives the complete table; affine type is truncated at height_bound.

    Raises:
        WildTypeError: for wild quivers
    """
    require_not_wild(q)
    kind = quiver_type(q)
    bound = None if kind == 'finite' else (height_bound or TAME_HEIGHT_BOUND)
    basis = hall_basis(q, bound)
    primes = list(primes or DEFAULT_PRIMES)
    logger.info(f"Assembling Lie table of {q.name or q.vertices}: {len(basis)} basis elements"
                f"{'' if bound is None else f', height bound {bound}'}")
    gram = [[invariant_form_entry(q, x, y, primes) for y in basis] for x in basis]
    table = table_from_bracket(f"hall:{q.name or ','.join(q.vertices)}", basis,
                               _HallBracket(q, basis, bound, primes), q, bound, gram, workers)
    logger.info(f"Lie table of {q.name or q.vertices} assembled: {len(table.constants) // 2} nonzero brackets, "
                f"{len(table.unknown) // 2} truncated pairs")
    return table


def invariant_form_entry(q: Quiver, x: BasisElement, y: BasisElement, primes: Sequence[int]) -> int:
    if x.kind == 'h' and y.kind == 'h':
        return -symmetric_form(q, q.simple(x.vertex), q.simple(y.vertex))
    if x.kind == 'h' or y.kind == 'h':
        return 0
    if x.obj.shift() == y.obj:
        return class_size(q, x.obj.label, primes)
    return 0


def invariant_form(table: LieTable, x: str, y: str) -> int:
    return table.gram[table.index(x)][table.index(y)]


def bracket(table: LieTable, x: str, y: str) -> Optional[Dict[str, Number]]:
    """[x, y] by basis names, as a name -> coefficient map."""
    value = table.bracket_basis(table.index(x), table.index(y))
    if value is None:
        return None
    return {str(table.basis[k]): c for k, c in sorted(value.items())}


def verify_antisymmetry(table: LieTable) -> VerificationReport:
    """Antisymmetry and grading of every stored constant."""
    report = VerificationReport('antisymmetry')
    for (i, j), value in sorted(table.constants.items()):
        reverse = table.constants.get((j, i), {})
        report.record(scale_vector(reverse, -1) == value, f"[{table.basis[i]},{table.basis[j]}] not antisymmetric")
        degree = tuple(a + b for a, b in zip(table.basis[i].degree, table.basis[j].degree))
        for k in value:
            report.record(table.basis[k].degree == degree,
                          f"[{table.basis[i]},{table.basis[j]}] has {table.basis[k]} off degree {degree}")
    return report


def verify_jacobi(table: LieTable) -> VerificationReport:
    """[[x,y],z] + [[y,z],x] + [[z,x],y] = 0 over every basis triple inside the truncation."""
    report = VerificationReport('jacobi')
    n = table.dimension
    for i, j, k in itertools.combinations(range(n), 3):
        x, y, z = {i: 1}, {j: 1}, {k: 1}
        terms = []
        for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
            inner = table.bracket(a, b)
            outer = None if inner is None else table.bracket(inner, c)
            terms.append(outer)
        if any(t is None for t in terms):
            report.skipped += 1
            continue
        total = add(add(terms[0], terms[1]), terms[2])
        report.record(not total, f"({table.basis[i]},{table.basis[j]},{table.basis[k]}) -> "
                                 f"{ {str(table.basis[m]): c for m, c in total.items()} }")
    logger.info(f"Jacobi on {table.name}: {report.checked} triples, {len(report.violations)} violations, "
                f"{report.skipped} outside the truncation")
    return report


def verify_invariance(table: LieTable) -> VerificationReport:
    """([x,y]|z) = (x|[y,z]) and symmetry of the form."""
    report = VerificationReport('invariance')
    n = table.dimension
    for i in range(n):
        for j in range(n):
            report.record(table.gram[i][j] == table.gram[j][i], f"form not symmetric at ({table.basis[i]},{table.basis[j]})")
    for i, j, k in itertools.product(range(n), repeat=3):
        left = table.bracket({i: 1}, {j: 1})
        right = table.bracket({j: 1}, {k: 1})
        if left is None or right is None:
            report.skipped += 1
            continue
        report.record(table.form(left, {k: 1}) == table.form({i: 1}, right),
                      f"([{table.basis[i]},{table.basis[j]}]|{table.basis[k]}) != "
                      f"({table.basis[i]}|[{table.basis[j]},{table.basis[k]}])")
    return report


def verify_nondegeneracy(table: LieTable) -> VerificationReport:
    """The Gram matrix restricted to root vectors has full rank."""
    report = VerificationReport('nondegeneracy')
    indices = [k for k, b in enumerate(table.basis) if b.kind == 'n']
    block = Matrix([[table.gram[i][j] for j in indices] for i in indices])
    rank = block.rank() if indices else 0
    report.record(rank == len(indices), f"n-block rank {rank} < {len(indices)}",
                  f"n-block rank {rank} of {len(indices)}")
    return report


def shift_involution(table: LieTable) -> Dict[int, Vector]:
    """u_X <-> u_X[1] and h_i -> -h_i."""
    images: Dict[int, Vector] = {}
    for k, b in enumerate(table.basis):
        if b.kind == 'h':
            images[k] = {k: -1}
        else:
            images[k] = {table.find(b.obj.shift()): 1}
    return images


def apply_map(images: Dict[int, Vector], x: Vector) -> Vector:
    out: Vector = {}
    for k, c in x.items():
        out = add(out, images[k], c)
    return out


def verify_homomorphism(source: LieTable, target: LieTable, images: Dict[int, Vector],
                        suite: str = 'homomorphism', lines: bool = False) -> VerificationReport:
    """phi([a,b]) = [phi(a), phi(b)] on every pair inside both truncations."""
    report = VerificationReport(suite)
    for i, j in source.pairs():
        left = source.bracket_basis(i, j)
        right = target.bracket(images[i], images[j])
        if left is None or right is None:
            report.skipped += 1
            continue
        mapped = apply_map(images, left)
        ok = mapped == right
        line = f"[{source.basis[i]},{source.basis[j]}]: {show_vector(target, mapped)} vs {show_vector(target, right)}"
        report.record(ok, line, line if lines else None)
    return report


def show_vector(table: LieTable, v: Vector) -> str:
    if not v:
        return '0'
    return ' + '.join(f"{c}*{table.basis[k]}" for k, c in sorted(v.items()))


def verify_shift_involution(table: LieTable) -> VerificationReport:
    return verify_homomorphism(table, table, shift_involution(table), 'shift involution')


def verify_cyclic_symmetry(table: LieTable, primes: Optional[Sequence[int]] = None) -> VerificationReport:
    """F^{c[1]}_{a,b} = F^{a[1]}_{b,c} for indecomposable a, b, c with [a] + [b] + [c] = 0."""
    report = VerificationReport('cyclic symmetry')
    q = table.quiver
    objects = [b.obj for b in table.basis if b.kind == 'n' and not b.obj.has_aggregate()]
    for a, b in itertools.product(objects, repeat=2):
        for c in objects:
            if any(x + y + z for x, y, z in zip(a.dim(q.n), b.dim(q.n), c.dim(q.n))):
                continue
            left = triangle_constant(q, c.shift(), a, b, primes)
            right = triangle_constant(q, a.shift(), b, c, primes)
            report.record(left == right, f"F^{c.shift()}_{a},{b} = {left} but F^{a.shift()}_{b},{c} = {right}")
    return report


def verify_integral_form(table: LieTable) -> VerificationReport:
    """Every constant is an integer and every n-bracket lands on indecomposable labels or h."""
    report = VerificationReport('integral form')
    for (i, j), value in table.constants.items():
        for k, c in value.items():
            report.record(isinstance(c, int) or (isinstance(c, Fraction) and c.denominator == 1),
                          f"[{table.basis[i]},{table.basis[j]}] has non-integral coefficient {c}")
            obj = table.basis[k].obj
            report.record(obj is None or obj.is_single(), f"[{table.basis[i]},{table.basis[j]}] hits {obj}")
    return report


def verify_counting_at_one(table: LieTable, primes: Optional[Sequence[int]] = None) -> VerificationReport:
    """|Hom(X,X)| is 1 and |Aut(X)| is 0 at q = 1 for catalogued indecomposables."""
    report = VerificationReport('counts at q=1')
    q = table.quiver
    for b in table.basis:
        if b.kind != 'n' or b.obj.is_shifted or b.obj.has_aggregate():
            continue
        cls: IsoClass = b.obj.module_part
        hom = hom_count_polynomial(q, cls, cls, primes)(1)
        aut = aut_count_polynomial(q, cls, primes)(1)
        report.record(hom == 1 and aut == 0, f"{b}: |Hom|(1) = {hom}, |Aut|(1) = {aut}")
    return report


def export_table(table: LieTable) -> str:
    """Deterministic text: header, one 'bracket' record per nonzero [b_i, b_j] with i < j, then the form."""
    lines = [f"table: {table.name}", f"dimension: {table.dimension}",
             f"height_bound: {'none' if table.height_bound is None else table.height_bound}",
             f"basis: {' '.join(str(b) for b in table.basis)}"]
    for (i, j), value in sorted(table.constants.items()):
        if i < j:
            for k, c in sorted(value.items()):
                lines.append(f"bracket: {table.basis[i]} | {table.basis[j]} | {table.basis[k]} | {c}")
    for i, j in sorted(table.unknown):
        if i < j:
            lines.append(f"truncated: {table.basis[i]} | {table.basis[j]}")
    if table.gram is not None:
        for i in range(table.dimension):
            for j in range(table.dimension):
                if table.gram[i][j]:
                    lines.append(f"form: {table.basis[i]} | {table.basis[j]} | {table.gram[i][j]}")
    return '\n'.join(lines) + '\n'


def import_table(text: str, q: Quiver) -> LieTable:
    """Inverse of export_table for tables of the given quiver."""
    header: Dict[str, str] = {}
    brackets, truncated, forms = [], [], []
    for line in text.splitlines():
        if not line.strip():
            continue
        key, _, value = line.partition(': ')
        if key == 'bracket':
            brackets.append([part.strip() for part in value.split(' | ')])
        elif key == 'truncated':
            truncated.append([part.strip() for part in value.split(' | ')])
        elif key == 'form':
            forms.append([part.strip() for part in value.split(' | ')])
        else:
            header[key] = value
    zero = tuple(0 for _ in range(q.n))
    basis = []
    for name in header['basis'].split():
        if name.startswith('h_'):
            basis.append(BasisElement(name, zero, 'h', vertex=q.index(name[2:])))
        else:
            obj = parse_object(name, q)
            basis.append(BasisElement(name, obj.dim(q.n), 'n', obj))
    index = {str(b): k for k, b in enumerate(basis)}
    constants: Dict[Tuple[int, int], Dict[int, Number]] = {}
    for x, y, z, c in brackets:
        i, j, k = index[x], index[y], index[z]
        constants.setdefault((i, j), {})[k] = int(c)
        constants.setdefault((j, i), {})[k] = -int(c)
    unknown = set()
    for x, y in truncated:
        unknown.update({(index[x], index[y]), (index[y], index[x])})
    gram = [[0] * len(basis) for _ in basis]
    for x, y, c in forms:
        gram[index[x]][index[y]] = int(c)
    bound = None if header.get('height_bound', 'none') == 'none' else int(header['height_bound'])
    return LieTable(header.get('table', ''), basis, constants, gram, unknown, bound, q)


def corrupt_constant(table: LieTable, i: int, j: int, k: int, delta: int = 1) -> LieTable:
    """Copy of the table with c(i, j, k) shifted by delta (and c(j, i, k) by -delta)."""
    constants = {key: dict(value) for key, value in table.constants.items()}
    constants.setdefault((i, j), {})[k] = constants.get((i, j), {}).get(k, 0) + delta
    constants.setdefault((j, i), {})[k] = constants.get((j, i), {}).get(k, 0) - delta
    constants = {key: clean(value) for key, value in constants.items()}
    return LieTable(table.name + ':corrupted', table.basis, constants, table.gram, set(table.unknown),
                    table.height_bound, table.quiver)


def _normalize(c: Number) -> Number:
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


def extend_along_brackets(source: LieTable, target: LieTable,
                          seeds: Dict[int, Vector]) -> Tuple[Dict[int, Vector], List[str]]:
    """
    Extend a map given on generators to every basis element reachable by brackets.

    A basis element b is mapped once some [a, a'] of mapped elements equals c*b in the
    source; its image is [phi(a), phi(a')] / c. Returns the images and the unmapped names.
    """
    images = dict(seeds)
    missing = sorted((k for k in range(source.dimension) if k not in images),
                     key=lambda k: (height(tuple(abs(c) for c in source.basis[k].degree)), k))
    progress = True
    while missing and progress:
        progress = False
        for k in list(missing):
            for a, b in itertools.product(sorted(images), repeat=2):
                value = source.bracket_basis(a, b)
                if not value or set(value) != {k}:
                    continue
                image = target.bracket(images[a], images[b])
                if image is None:
                    continue
                images[k] = {m: _normalize(Fraction(c) / value[k]) for m, c in image.items()}
                missing.remove(k)
                progress = True
                break
    if missing:
        logger.warning(f"{len(missing)} basis elements of {source.name} not reached from the generators")
    return images, [str(source.basis[k]) for k in missing]


def signed_basis_image(v: Vector) -> Optional[Tuple[int, int]]:
    """(sign, index) when v is plus or minus a single basis vector."""
    if len(v) != 1:
        return None
    (k, c), = v.items()
    return (c, k) if c in (1, -1) else None

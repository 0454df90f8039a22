"""BGP reflection at a source over the root category, and its compatibility with the Weyl group action on tables."""
import logging
from fractions import Fraction
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

from config.settings import DEFAULT_PRIMES
from services.catalog import catalog_for
from services.lie_table import (LieTable, VerificationReport, Vector, add, apply_map, assemble_lie_table,
                                extend_along_brackets, show_vector, signed_basis_image, verify_homomorphism)
from services.quiver import Quiver, quiver_type, reflect
from services.representations import IsoLabel, Rep
from services.root_category import RootCatObject
from utils.errors import NotSourceError
from utils.field_linalg import FMatrix, column_space, quotient_projection, vstack

logger = logging.getLogger('roothall')


def reflect_representation(rep: Rep, a: int) -> Rep:
    """
    Reflection functor at the source a: V'_a = coker(V_a -> sum of V_j over arrows a -> j).

    The reversed arrow j -> a acts by the inclusion of V_j followed by the projection onto the cokernel.
    """
    q = rep.quiver
    if not q.is_source(a):
        raise NotSourceError(f"Vertex {q.vertices[a]} is not a source of {q.name or q.vertices}")
    reflected = q.reflected_at(a)
    outgoing = [k for k, arrow in enumerate(q.arrows) if arrow.source == a]
    offsets, total = {}, 0
    for k in outgoing:
        offsets[k] = total
        total += rep.dim[q.arrows[k].target]
    stacked = vstack([rep.matrices[k] for k in outgoing])
    image = column_space(stacked) if stacked.cols else FMatrix.zeros(rep.field, total, 0)
    _, projection = quotient_projection(image, total)
    new_dim = tuple(projection.rows if i == a else c for i, c in enumerate(rep.dim))
    matrices = []
    for k, arrow in enumerate(q.arrows):
        if k in offsets:
            width = rep.dim[arrow.target]
            matrices.append(projection.col_block(offsets[k], offsets[k] + width))
        else:
            matrices.append(rep.matrices[k])
    return Rep(reflected, rep.field, new_dim, tuple(matrices))


def _reflect_label(q: Quiver, a: int, label: IsoLabel, p: int) -> Tuple[Tuple[IsoLabel, ...], bool]:
    """Image of one indecomposable module: (labels over the reflected quiver, whether it flips shift)."""
    reflected = q.reflected_at(a)
    if label.dim == q.simple(a):
        return (IsoLabel(reflected.simple(a)),), True
    if label.kind == 'aggregate':
        raise ValueError(f"Aggregate {label} has no single reflected representative")
    rep = catalog_for(q, p).representative(label)
    return catalog_for(reflected, p).identify(reflect_representation(rep, a)), False


def bgp_reflect(q: Quiver, a: int, x: RootCatObject, p: Optional[int] = None) -> RootCatObject:
    """
    Image of x under the reflection at the source a, as an object over the reflected quiver.

    Module summands are reflected, the simple at a goes to the shifted simple and shifted
    summands are reflected and shifted again; S_a[1] comes back as the module S'_a.

    Raises:
        NotSourceError: when a is not a source
    """
    if not q.is_source(a):
        raise NotSourceError(f"Vertex {q.vertices[a]} is not a source of {q.name or q.vertices}")
    p = p or DEFAULT_PRIMES[0]
    modules: List[IsoLabel] = []
    shifted: List[IsoLabel] = []
    for label in x.module_part:
        labels, flips = _reflect_label(q, a, label, p)
        (shifted if flips else modules).extend(labels)
    for label in x.shifted_part:
        labels, flips = _reflect_label(q, a, label, p)
        (modules if flips else shifted).extend(labels)
    out = RootCatObject(tuple(modules), tuple(shifted))
    logger.debug(f"Reflection at {q.vertices[a]}: {x} -> {out}")
    return out


def exp_ad(table: LieTable, y: Vector, x: Vector) -> Vector:
    """exp(ad y)(x) as a finite sum; ad y is nilpotent on a finite table."""
    total: Vector = dict(x)
    term: Vector = dict(x)
    k = 0
    while term:
        k += 1
        term = table.bracket(y, term)
        if term is None:
            raise ValueError(f"ad {y} leaves the truncation of {table.name}")
        total = add(total, {m: Fraction(c, factorial(k)) for m, c in term.items()})
        if k > table.dimension:
            raise ValueError(f"ad {y} is not nilpotent on {table.name}")
    return {m: int(c) if Fraction(c).denominator == 1 else c for m, c in total.items()}


def weyl_lift(table: LieTable, a: int, x: Vector) -> Vector:
    """exp(ad e_a) exp(-ad f_a) exp(ad e_a) applied to x."""
    q = table.quiver
    simple = IsoLabel(q.simple(a))
    e = {table.find(RootCatObject.module(simple)): 1}
    minus_f = {table.find(RootCatObject.shifted_module(simple)): 1}
    return exp_ad(table, e, exp_ad(table, minus_f, exp_ad(table, e, x)))


def generator_transport(table: LieTable, reflected: LieTable) -> Tuple[Dict[int, Vector], List[str]]:
    """The isomorphism sending Chevalley generators of one orientation to those of the other."""
    q = table.quiver
    seeds: Dict[int, Vector] = {}
    for i in range(q.n):
        seeds[i] = {i: 1}
        simple = IsoLabel(q.simple(i))
        for obj in (RootCatObject.module(simple), RootCatObject.shifted_module(simple)):
            seeds[table.find(obj)] = {reflected.find(obj): 1}
    return extend_along_brackets(table, reflected, seeds)


def verify_reflection_diagram(q: Quiver, a: int, primes: Optional[Sequence[int]] = None,
                              workers: Optional[int] = None) -> VerificationReport:
    """
    Compare the Weyl lift at a, transported to the reflected orientation, with the functor image.

    Cartan elements must match exactly; root vectors must match up to a sign that is a
    character of the root lattice, which the report lists.

    Raises:
        NotSourceError: when a is not a source
    """
    if not q.is_source(a):
        raise NotSourceError(f"Vertex {q.vertices[a]} is not a source of {q.name or q.vertices}")
    if quiver_type(q) != 'finite':
        raise ValueError(f"The reflection square needs a Dynkin quiver, got {quiver_type(q)} type")
    primes = list(primes or DEFAULT_PRIMES)
    reflected_quiver = q.reflected_at(a)
    table = assemble_lie_table(q, primes=primes, workers=workers)
    reflected = assemble_lie_table(reflected_quiver, primes=primes, workers=workers)
    report = VerificationReport('reflection')
    transport, unmapped = generator_transport(table, reflected)
    for name in unmapped:
        report.record(False, f"{name} not reached from the generators")
    if unmapped:
        return report
    report.merge(verify_homomorphism(table, reflected, transport, 'generator transport'))

    signs: Dict[int, int] = {}
    for k, b in enumerate(table.basis):
        image = apply_map(transport, weyl_lift(table, a, {k: 1}))
        if b.kind == 'h':
            expected = {i: c for i, c in enumerate(reflect(q, a, q.simple(b.vertex))) if c}
            report.record(image == expected, f"{b}: lift gives {image}, reflection gives {expected}",
                          f"{b} -> {show_vector(reflected, image)}")
            continue
        target = bgp_reflect(q, a, b.obj, primes[0])
        index = reflected.find(target)
        signed = signed_basis_image(image)
        ok = index is not None and signed is not None and signed[1] == index
        report.record(ok, f"{b}: lift gives {show_vector(reflected, image)}, functor gives {target}",
                      f"{b} -> {show_vector(reflected, image)} (functor {target})")
        if ok:
            signs[k] = signed[0]

    character = {}
    for i in range(q.n):
        k = table.find(RootCatObject.module(IsoLabel(q.simple(i))))
        if k in signs:
            character[i] = signs[k]
    for k, sign in signs.items():
        expected = 1
        for i, c in enumerate(table.basis[k].degree):
            expected *= character.get(i, 1) ** abs(c)
        report.record(sign == expected, f"sign {sign} on {table.basis[k]} is not the character value {expected}")
    report.note('character: ' + ','.join(f"{q.vertices[i]}:{'+1' if s > 0 else '-1'}"
                                         for i, s in sorted(character.items())))
    logger.info(f"Reflection square at {q.vertices[a]} on {q.name or q.vertices}: "
                f"{len(report.violations)} violations")
    return report

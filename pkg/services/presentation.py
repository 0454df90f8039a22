"""Serre presentation checks and the root-system oracle algebra for finite type."""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from config.settings import EPSILON_CONVENTION
from services.hall_algebra import quantum_serre_check
from services.lie_table import (BasisElement, LieTable, VerificationReport, Vector, add, extend_along_brackets,
                                scale_vector, signed_basis_image, table_from_bracket, verify_homomorphism)
from services.quiver import DimVector, Quiver, enumerate_roots, euler_cocycle, quiver_type, symmetric_form
from services.representations import IsoLabel
from services.root_category import RootCatObject

logger = logging.getLogger('roothall')


def oracle_name(d: DimVector) -> str:
    return f"E({','.join(str(c) for c in d)})"


def build_serre_oracle(q: Quiver, convention: str = EPSILON_CONVENTION) -> LieTable:
    """
    The simply-laced algebra of q's root system with structure constants from the sign twist.

    Basis: H_i for the simple coroots, then E(alpha) for positive and negative roots.
    """
    if quiver_type(q) != 'finite':
        raise ValueError(f"The presentation oracle needs a Dynkin quiver, got {quiver_type(q)} type")
    positive = list(enumerate_roots(q).real_roots)
    roots = positive + [tuple(-c for c in d) for d in positive]
    root_set = set(roots)
    zero = tuple(0 for _ in range(q.n))
    basis = [BasisElement(f"H_{v}", zero, 'h', vertex=i) for i, v in enumerate(q.vertices)]
    basis.extend(BasisElement(oracle_name(d), d) for d in roots)
    index = {b.degree: k for k, b in enumerate(basis) if b.kind == 'n'}

    def cartan(d) -> Vector:
        return {i: c for i, c in enumerate(d) if c}

    def bracket(i: int, j: int) -> Vector:
        x, y = basis[i], basis[j]
        if x.kind == 'h' and y.kind == 'h':
            return {}
        if x.kind == 'h' or y.kind == 'h':
            h, e, sign = (x, y, 1) if x.kind == 'h' else (y, x, -1)
            return {index[e.degree]: sign * symmetric_form(q, q.simple(h.vertex), e.degree)}
        total = tuple(a + b for a, b in zip(x.degree, y.degree))
        eps = euler_cocycle(q, x.degree, y.degree, convention)
        if not any(total):
            return scale_vector(cartan(x.degree), eps)
        if total in root_set:
            return {index[total]: eps}
        return {}

    gram = [[0] * len(basis) for _ in basis]
    table = table_from_bracket(f"oracle:{q.name or ','.join(q.vertices)}", basis, bracket, q, None, gram, workers=1)
    logger.debug(f"Serre oracle of {q.name or q.vertices}: {table.dimension} basis elements")
    return table


@dataclass
class PresentationMatch:
    """Images of oracle basis elements in the table, and the homomorphism check."""
    images: Dict[int, Vector]
    unmapped: List[str]
    report: VerificationReport

    def signed_permutation(self) -> Optional[Dict[int, tuple]]:
        out = {}
        for k, v in self.images.items():
            image = signed_basis_image(v)
            if image is None:
                return None
            out[k] = image
        return out


def chevalley_generators(table: LieTable) -> Dict[str, List[Vector]]:
    """e_i = u_{S_i}, f_i = -u_{S_i[1]}, h_i = -h_{alpha_i}."""
    q = table.quiver
    e, f, h = [], [], []
    for i in range(q.n):
        simple = IsoLabel(q.simple(i))
        e.append({table.find(RootCatObject.module(simple)): 1})
        f.append({table.find(RootCatObject.shifted_module(simple)): -1})
        h.append({i: -1})
    return {'e': e, 'f': f, 'h': h}


def match_presentation(table: LieTable, oracle: Optional[LieTable] = None) -> PresentationMatch:
    """Basis matching H_i -> -h_i, E(alpha_i) -> u_{S_i}, E(-alpha_i) -> u_{S_i[1]}, extended along brackets."""
    q = table.quiver
    oracle = oracle or build_serre_oracle(q)
    seeds: Dict[int, Vector] = {}
    for i in range(q.n):
        simple = IsoLabel(q.simple(i))
        seeds[i] = {i: -1}
        seeds[oracle.index(oracle_name(q.simple(i)))] = {table.find(RootCatObject.module(simple)): 1}
        negative = tuple(-c for c in q.simple(i))
        seeds[oracle.index(oracle_name(negative))] = {table.find(RootCatObject.shifted_module(simple)): 1}
    images, unmapped = extend_along_brackets(oracle, table, seeds)
    report = VerificationReport('presentation match')
    for name in unmapped:
        report.record(False, f"{name} not reached from the generators")
    if not unmapped:
        report.merge(verify_homomorphism(oracle, table, images, 'oracle brackets'))
        targets = [signed_basis_image(v) for v in images.values()]
        hit = {t[1] for t in targets if t is not None}
        report.record(None not in targets and len(hit) == table.dimension,
                      'matching is not a signed permutation of the table basis',
                      f"signed permutation onto {len(hit)} of {table.dimension} basis elements")
    return PresentationMatch(images, unmapped, report)


def _ad_power(table: LieTable, x: Vector, y: Vector, k: int) -> Optional[Vector]:
    for _ in range(k):
        y = table.bracket(x, y)
        if y is None:
            return None
    return y


def verify_serre_relations(table: LieTable) -> VerificationReport:
    """The six relation families on the Chevalley generators."""
    q = table.quiver
    gens = chevalley_generators(table)
    e, f, h = gens['e'], gens['f'], gens['h']
    report = VerificationReport('serre')
    for i in range(q.n):
        for j in range(q.n):
            a_ij = symmetric_form(q, q.simple(i), q.simple(j))
            vi, vj = q.vertices[i], q.vertices[j]
            checks = [
                (f"[h_{vi},h_{vj}] = 0", table.bracket(h[i], h[j]), {}),
                (f"[e_{vi},f_{vj}] = delta h", table.bracket(e[i], f[j]), h[i] if i == j else {}),
                (f"[h_{vi},e_{vj}] = a e", table.bracket(h[i], e[j]), scale_vector(e[j], a_ij)),
                (f"[h_{vi},f_{vj}] = -a f", table.bracket(h[i], f[j]), scale_vector(f[j], -a_ij)),
            ]
            if i != j:
                checks.append((f"(ad e_{vi})^{1 - a_ij} e_{vj} = 0", _ad_power(table, e[i], e[j], 1 - a_ij), {}))
                checks.append((f"(ad f_{vi})^{1 - a_ij} f_{vj} = 0", _ad_power(table, f[i], f[j], 1 - a_ij), {}))
            for name, value, expected in checks:
                if value is None:
                    report.skipped += 1
                    report.note(f"{name} outside the truncation")
                    continue
                report.record(add(value, expected, -1) == {}, f"{name}: got {value}")
    return report


def verify_quantum_serre(q: Quiver, primes=None) -> VerificationReport:
    """Quantum Serre relations in the twisted Hall algebra for every ordered pair of vertices."""
    report = VerificationReport('quantum serre')
    for i in range(q.n):
        for j in range(q.n):
            if i == j:
                continue
            check = quantum_serre_check(q, i, j, primes=primes)
            report.record(check.holds, f"({q.vertices[i]},{q.vertices[j]}): residual {check.residual}",
                          f"quantum serre ({q.vertices[i]},{q.vertices[j]}) degree {check.degree + 1}")
    return report


def verify_serre_and_presentation(table: LieTable, quantum: bool = False, primes=None) -> VerificationReport:
    """Serre relations, plus the oracle match in finite type and optionally the quantum relations."""
    q = table.quiver
    report = VerificationReport('serre')
    report.merge(verify_serre_relations(table))
    if quiver_type(q) == 'finite':
        report.merge(match_presentation(table).report)
    else:
        report.note('presentation match: not exercised outside finite type')
    if quantum:
        report.merge(verify_quantum_serre(q, primes))
    logger.info(f"Serre suite on {table.name}: {report.checked} checks, {len(report.violations)} violations")
    return report

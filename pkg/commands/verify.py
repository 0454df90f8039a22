import logging
from typing import List

from commands.context import CommandContext
from services.epsilon_algebra import verify_affine
from services.lie_table import (LieTable, VerificationReport, assemble_lie_table, verify_antisymmetry,
                                verify_counting_at_one, verify_cyclic_symmetry, verify_integral_form,
                                verify_invariance, verify_jacobi, verify_nondegeneracy, verify_shift_involution)
from services.presentation import verify_serre_and_presentation
from services.quiver import Quiver, quiver_type
from services.reflection import verify_reflection_diagram
from utils.errors import NotSourceError

logger = logging.getLogger('roothall')

SUITES = ('jacobi', 'serre', 'form', 'reflection', 'affine', 'all')


class VerifyCommands:
    """verify <suite>: runs a verification suite and exits 1 when it records a violation."""

    def __init__(self):
        self._tables = {}

    def add_parsers(self, subparsers, common):
        parser = subparsers.add_parser('verify', parents=[common], help='run a verification suite')
        parser.add_argument('suite', choices=SUITES)
        parser.add_argument('--vertex', default=None, help='source vertex for the reflection suite')
        parser.set_defaults(handler=self.verify)

    def _table(self, ctx: CommandContext) -> LieTable:
        key = (ctx.quiver_file.hash, ctx.bound, tuple(ctx.primes))
        if key not in self._tables:
            self._tables[key] = assemble_lie_table(ctx.quiver, ctx.bound, ctx.primes)
        return self._tables[key]

    def jacobi(self, ctx: CommandContext) -> VerificationReport:
        table = self._table(ctx)
        report = VerificationReport('jacobi')
        report.merge(verify_antisymmetry(table))
        report.merge(verify_jacobi(table))
        return report

    def serre(self, ctx: CommandContext) -> VerificationReport:
        return verify_serre_and_presentation(self._table(ctx), quantum=True, primes=ctx.primes)

    def form(self, ctx: CommandContext) -> VerificationReport:
        table = self._table(ctx)
        report = VerificationReport('form')
        report.merge(verify_invariance(table))
        report.merge(verify_nondegeneracy(table))
        report.merge(verify_shift_involution(table))
        report.merge(verify_integral_form(table))
        report.merge(verify_cyclic_symmetry(table, ctx.primes))
        report.merge(verify_counting_at_one(table, ctx.primes))
        return report

    def reflection(self, ctx: CommandContext) -> VerificationReport:
        q = ctx.quiver
        report = VerificationReport('reflection')
        for a in self._reflection_vertices(q, ctx.args.vertex):
            report.note(f"source: {q.vertices[a]}")
            report.merge(verify_reflection_diagram(q, a, ctx.primes))
        return report

    def _reflection_vertices(self, q: Quiver, vertex) -> List[int]:
        if vertex is None:
            return [a for a in range(q.n) if q.is_source(a)]
        if vertex not in q.vertices:
            raise ValueError(f"unknown vertex '{vertex}'")
        a = q.index(vertex)
        if not q.is_source(a):
            raise NotSourceError(f"Vertex {vertex} is not a source of {q.name or q.vertices}")
        return [a]

    def affine(self, ctx: CommandContext) -> VerificationReport:
        return verify_affine(ctx.quiver, ctx.bound, ctx.primes)

    def everything(self, ctx: CommandContext) -> VerificationReport:
        kind = quiver_type(ctx.quiver)
        report = VerificationReport('all')
        report.merge(self.jacobi(ctx))
        report.merge(self.serre(ctx))
        report.merge(self.form(ctx))
        if kind == 'finite':
            report.merge(self.reflection(ctx))
        else:
            report.note('reflection: not exercised outside finite type')
        if kind == 'affine':
            report.merge(self.affine(ctx))
        return report

    def verify(self, ctx: CommandContext) -> int:
        suite = ctx.args.suite
        logger.info(f"Running {suite} suite on {ctx.quiver.name}")
        run = self.everything if suite == 'all' else getattr(self, suite)
        report = run(ctx)
        ctx.emit(f"quiver: {ctx.quiver.name}\n" + report.render())
        logger.info(f"{suite} suite on {ctx.quiver.name}: {len(report.violations)} violations")
        return 0 if report.ok else 1


def setup(subparsers, common):
    VerifyCommands().add_parsers(subparsers, common)

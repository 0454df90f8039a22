import logging

from config.settings import TAME_HEIGHT_BOUND
from commands.context import CommandContext, parse_int_list
from services.catalog import catalog_for, format_class, parse_class
from services.lie_table import assemble_lie_table, export_table
from services.quiver import enumerate_roots, quiver_type
from utils.hall_cache import cache_get_or_compute

logger = logging.getLogger('roothall')


def _vector(d) -> str:
    return ','.join(str(c) for c in d)


class ComputeCommands:
    """roots, indecs, hall and lie-table: each emits one deterministic text artifact."""

    def add_parsers(self, subparsers, common):
        parser = subparsers.add_parser('roots', parents=[common], help='positive real roots (and delta multiples)')
        parser.set_defaults(handler=self.roots)

        parser = subparsers.add_parser('indecs', parents=[common], help='indecomposables of one dimension vector')
        parser.add_argument('--dim', required=True, help='dimension vector, e.g. 1,1')
        parser.add_argument('--prime', type=int, default=None, help='field size (default: first prime)')
        parser.set_defaults(handler=self.indecs)

        parser = subparsers.add_parser('hall', parents=[common], help='one Hall polynomial')
        parser.add_argument('--target', required=True)
        parser.add_argument('--quot', required=True)
        parser.add_argument('--sub', required=True)
        parser.set_defaults(handler=self.hall)

        parser = subparsers.add_parser('lie-table', parents=[common], help='export the assembled Lie table')
        parser.set_defaults(handler=self.lie_table)

    def roots(self, ctx: CommandContext) -> int:
        q = ctx.quiver
        kind = quiver_type(q)
        bound = ctx.bound or TAME_HEIGHT_BOUND
        system = enumerate_roots(q, 0 if kind == 'finite' else bound)
        lines = [f"quiver: {q.name}", f"type: {kind}"]
        if kind != 'finite':
            lines.append(f"height_bound: {bound}")
        lines.append(f"real_roots: {len(system.real_roots)}")
        lines.extend(f"root: {_vector(d)}" for d in system.real_roots)
        lines.extend(f"imaginary: {_vector(d)}" for d in system.imaginary_roots(bound))
        ctx.emit('\n'.join(lines) + '\n')
        return 0

    def indecs(self, ctx: CommandContext) -> int:
        q = ctx.quiver
        d = tuple(parse_int_list(ctx.args.dim))
        if len(d) != q.n:
            raise ValueError(f"dimension vector {d} does not fit {q.n} vertices")
        p = ctx.args.prime or ctx.primes[0]
        found = catalog_for(q, p).indecomposables(d)
        lines = [f"quiver: {q.name}", f"dim: {_vector(d)}", f"prime: {p}", f"indecomposables: {len(found)}"]
        if quiver_type(q) == 'finite':
            lines.append(f"positive_root: {'yes' if d in enumerate_roots(q).real_roots else 'no'}")
        lines.extend(f"label: {label}" for label, _ in found)
        ctx.emit('\n'.join(lines) + '\n')
        return 0

    def hall(self, ctx: CommandContext) -> int:
        q = ctx.quiver
        target = parse_class(ctx.args.target, q)
        quot = parse_class(ctx.args.quot, q)
        sub = parse_class(ctx.args.sub, q)
        poly = cache_get_or_compute(q, target, quot, sub, ctx.store, ctx.primes)
        lines = [f"quiver: {q.name}",
                 f"target: {format_class(target)}",
                 f"quot: {format_class(quot)}",
                 f"sub: {format_class(sub)}",
                 f"polynomial: {poly.poly}",
                 f"at_one: {poly.at_one()}",
                 f"primes_used: {_vector(poly.primes_used)}",
                 f"degree_bound: {poly.degree_bound}"]
        ctx.emit('\n'.join(lines) + '\n')
        return 0

    def lie_table(self, ctx: CommandContext) -> int:
        table = assemble_lie_table(ctx.quiver, ctx.bound, ctx.primes)
        ctx.emit(export_table(table))
        return 0


def setup(subparsers, common):
    ComputeCommands().add_parsers(subparsers, common)

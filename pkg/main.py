import argparse
import importlib
import logging
import sys
from typing import List, Optional, TextIO

from commands.context import CommandContext
from config.logging_config import setup_logging
from utils.errors import RoothallError
from utils.resource_monitor import ResourceMonitor

logger = logging.getLogger('roothall')

COMMAND_MODULES = ('commands.compute', 'commands.verify')


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--quiver', required=True, help='quiver file (or a1, a2, a3, d4, kronecker)')
    common.add_argument('--primes', default=None, help='comma-separated prime pool, e.g. 2,3,5')
    common.add_argument('--bound', type=int, default=None, help='height bound for affine tables')
    common.add_argument('--out', default=None, help='write the artifact here instead of stdout')
    common.add_argument('--cache-dir', dest='cache_dir', default=None, help='Hall polynomial cache directory')

    parser = argparse.ArgumentParser(prog='roothall', description='Exact Hall and root-category Lie algebras of quivers')
    subparsers = parser.add_subparsers(dest='command', required=True)
    for name in COMMAND_MODULES:
        importlib.import_module(name).setup(subparsers, common)
    return parser


def run_command(argv: List[str], stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
    """
    Parse argv, run one command and return the exit code.

    Returns:
        0 on success, 1 when a verification suite records violations, 2 on refused input
    """
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        ctx = CommandContext.from_args(args, stdout)
        return args.handler(ctx)
    except RoothallError as e:
        logger.warning(f"Command {args.command} refused: {e.reason}: {e}")
        stderr.write(f"error: {e.reason}: {e}\n")
        return 2
    except (ValueError, KeyError) as e:
        logger.warning(f"Command {args.command} rejected its input: {e}")
        stderr.write(f"error: invalid input: {e}\n")
        return 2


def main():
    setup_logging()
    with ResourceMonitor():
        code = run_command(sys.argv[1:])
    sys.exit(code)


if __name__ == '__main__':
    main()

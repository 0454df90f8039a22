import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, TextIO

from config.settings import DEFAULT_PRIMES
from services.quiver import Quiver
from utils.errors import MissingQuiverFileError
from utils.hall_cache import CacheStore
from utils.quiver_file import QuiverFile, content_hash, load_quiver_file, named_quiver

logger = logging.getLogger('roothall')


def parse_int_list(text: str) -> List[int]:
    return [int(item) for item in text.replace(' ', '').split(',') if item]


def resolve_quiver(path: str) -> QuiverFile:
    """A quiver file, or one of the built-in sample names (a1, a2, a3, d4, kronecker)."""
    if Path(path).exists():
        return load_quiver_file(path)
    try:
        quiver = named_quiver(Path(path).stem.lower())
    except KeyError:
        raise MissingQuiverFileError(f"no quiver file at {path}")
    logger.debug(f"Using built-in quiver {quiver.name} for {path}")
    return QuiverFile(path, quiver, content_hash(quiver))


@dataclass
class CommandContext:
    """What every command handler receives: parsed flags, the quiver and the output sink."""
    args: object
    quiver_file: QuiverFile
    primes: List[int]
    bound: Optional[int]
    store: CacheStore
    stdout: TextIO = sys.stdout

    @property
    def quiver(self) -> Quiver:
        return self.quiver_file.quiver

    @classmethod
    def from_args(cls, args, stdout: Optional[TextIO] = None) -> 'CommandContext':
        primes = parse_int_list(args.primes) if args.primes else list(DEFAULT_PRIMES)
        return cls(args, resolve_quiver(args.quiver), primes, args.bound, CacheStore(args.cache_dir),
                   stdout or sys.stdout)

    def emit(self, text: str):
        """Write an artifact to --out when given, otherwise to stdout."""
        out = getattr(self.args, 'out', None)
        if out:
            Path(out).write_text(text, encoding='utf-8')
            logger.info(f"Wrote {len(text.splitlines())} lines to {out}")
        else:
            self.stdout.write(text)

import hashlib
import json
import logging
import os
import tempfile
import threading
from pathlib import Path
from typing import Callable, Dict, Optional, Sequence, Tuple

from config.settings import CACHE_DIR
from services.catalog import IsoClass, format_class
from services.hall_algebra import HallPolynomial, hall_polynomial
from services.quiver import Quiver
from utils.errors import CacheCorruptError, RoothallError
from utils.quiver_file import content_hash

logger = logging.getLogger('roothall')

CacheKey = Tuple[str, str, str, str]


def cache_key(q: Quiver, target: IsoClass, quot: IsoClass, sub: IsoClass) -> CacheKey:
    return content_hash(q), format_class(target), format_class(quot), format_class(sub)


def _checksum(payload: dict) -> str:
    return hashlib.sha256(json.dumps(payload, sort_keys=True).encode('utf-8')).hexdigest()


class CacheStore:
    """
    Hall polynomials on disk, one JSON record per line in <directory>/<quiver hash>.jsonl.

    Files are rewritten through a temporary file and os.replace, so a reader sees either the
    old or the new file.
    """

    def __init__(self, directory: Optional[str] = None):
        self.directory = Path(directory or CACHE_DIR)
        self._lock = threading.Lock()
        self._key_locks: Dict[CacheKey, threading.Lock] = {}

    def _get_key_lock(self, key: CacheKey) -> threading.Lock:
        with self._lock:
            if key not in self._key_locks:
                self._key_locks[key] = threading.Lock()
            return self._key_locks[key]

    def _file(self, quiver_hash: str) -> Path:
        return self.directory / f"{quiver_hash}.jsonl"

    def _load(self, quiver_hash: str) -> Dict[Tuple[str, str, str], str]:
        """Raw lines by label triple; unreadable lines are kept under their line number."""
        path = self._file(quiver_hash)
        if not path.exists():
            return {}
        out = {}
        for n, line in enumerate(path.read_text(encoding='utf-8').splitlines()):
            try:
                entry = json.loads(line)
                out[(entry['target'], entry['quot'], entry['sub'])] = line
            except (ValueError, KeyError, TypeError):
                out[('', '', f"#{n}")] = line
        return out

    def read(self, q: Quiver, key: CacheKey) -> Optional[HallPolynomial]:
        """
        Stored polynomial for key, or None on a miss.

        Raises:
            CacheCorruptError: when the stored record fails to parse or its checksum does not match
        """
        line = self._load(key[0]).get(key[1:])
        if line is None:
            return None
        try:
            entry = json.loads(line)
            payload = entry['record']
            if entry.get('checksum') != _checksum(payload):
                raise CacheCorruptError(f"checksum mismatch for {key[1:]}")
            return HallPolynomial.from_record(q, payload)
        except CacheCorruptError:
            raise
        except (ValueError, KeyError, TypeError, RoothallError) as e:
            raise CacheCorruptError(f"unreadable record for {key[1:]}: {e}")

    def write(self, key: CacheKey, poly: HallPolynomial):
        payload = poly.to_record()
        line = json.dumps({'target': key[1], 'quot': key[2], 'sub': key[3],
                           'record': payload, 'checksum': _checksum(payload)}, sort_keys=True)
        with self._lock:
            self.directory.mkdir(parents=True, exist_ok=True)
            lines = {k: v for k, v in self._load(key[0]).items() if k[0]}
            lines[key[1:]] = line
            body = '\n'.join(lines[k] for k in sorted(lines)) + '\n'
            fd, tmp = tempfile.mkstemp(dir=self.directory, prefix='.tmp-', suffix='.jsonl')
            try:
                with os.fdopen(fd, 'w', encoding='utf-8') as handle:
                    handle.write(body)
                os.replace(tmp, self._file(key[0]))
            except OSError:
                if os.path.exists(tmp):
                    os.unlink(tmp)
                raise
        logger.info(f"Cached g^{key[1]}_{key[2]},{key[3]} for quiver {key[0][:12]}")

    def get_or_compute(self, q: Quiver, key: CacheKey, compute: Callable[[], HallPolynomial]) -> HallPolynomial:
        with self._get_key_lock(key):
            try:
                hit = self.read(q, key)
                if hit is not None:
                    logger.debug(f"Cache hit for {key[1:]}")
                    return hit
            except CacheCorruptError as e:
                logger.warning(f"Repairing cache record: {e}")
            poly = compute()
            self.write(key, poly)
            return poly


def cache_get_or_compute(q: Quiver, target: IsoClass, quot: IsoClass, sub: IsoClass,
                         store: Optional[CacheStore] = None, primes: Optional[Sequence[int]] = None,
                         workers: Optional[int] = None) -> HallPolynomial:
    """Stored Hall polynomial, computed with a held-out prime check and written on a miss."""
    store = store or CacheStore()
    key = cache_key(q, target, quot, sub)
    return store.get_or_compute(q, key, lambda: hall_polynomial(q, target, quot, sub, primes, workers))

import json
import threading

import pytest

from services.catalog import parse_class
from utils.errors import CacheCorruptError
from utils.hall_cache import CacheStore, cache_get_or_compute, cache_key
from utils.quiver_file import content_hash


def _classes(q):
    return tuple(parse_class(t, q) for t in ('S(1,1)', 'S(1,0)', 'S(0,1)'))


def test_cold_then_warm(a2, tmp_path):
    store = CacheStore(str(tmp_path))
    target, quot, sub = _classes(a2)
    first = cache_get_or_compute(a2, target, quot, sub, store)
    path = tmp_path / f"{content_hash(a2)}.jsonl"
    assert path.exists()
    before = path.read_text()
    second = cache_get_or_compute(a2, target, quot, sub, store)
    assert first == second
    assert path.read_text() == before


def test_hit_skips_computation(a2, tmp_path):
    store = CacheStore(str(tmp_path))
    target, quot, sub = _classes(a2)
    expected = cache_get_or_compute(a2, target, quot, sub, store)
    key = cache_key(a2, target, quot, sub)

    def fail():
        raise AssertionError('recomputed on a warm cache')

    assert store.get_or_compute(a2, key, fail) == expected


def test_tampered_record_is_detected_and_repaired(a2, tmp_path, caplog):
    store = CacheStore(str(tmp_path))
    target, quot, sub = _classes(a2)
    good = cache_get_or_compute(a2, target, quot, sub, store)
    path = tmp_path / f"{content_hash(a2)}.jsonl"
    entry = json.loads(path.read_text().splitlines()[0])
    entry['record']['coefficients'] = [5]
    path.write_text(json.dumps(entry) + '\n')
    key = cache_key(a2, target, quot, sub)
    with pytest.raises(CacheCorruptError):
        store.read(a2, key)
    with caplog.at_level('WARNING', logger='roothall'):
        repaired = cache_get_or_compute(a2, target, quot, sub, store)
    assert repaired == good
    assert any('Repairing cache record' in r.message for r in caplog.records)
    assert store.read(a2, key) == good


def test_garbage_line_is_dropped_on_rewrite(a2, tmp_path):
    store = CacheStore(str(tmp_path))
    target, quot, sub = _classes(a2)
    path = tmp_path / f"{content_hash(a2)}.jsonl"
    path.write_text('not json\n')
    cache_get_or_compute(a2, target, quot, sub, store)
    lines = path.read_text().splitlines()
    assert len(lines) == 1
    assert json.loads(lines[0])['target'] == 'S(1,1)'


def test_records_sorted_and_keyed(a2, tmp_path):
    store = CacheStore(str(tmp_path))
    split = parse_class('S(0,1)+S(1,0)', a2)
    s1, s2 = parse_class('S(1,0)', a2), parse_class('S(0,1)', a2)
    cache_get_or_compute(a2, split, s1, s2, store)
    cache_get_or_compute(a2, *_classes(a2), store)
    lines = (tmp_path / f"{content_hash(a2)}.jsonl").read_text().splitlines()
    assert [json.loads(line)['target'] for line in lines] == ['S(0,1)+S(1,0)', 'S(1,1)']
    assert not list(tmp_path.glob('.tmp-*'))


def test_concurrent_writers(a2, tmp_path):
    store = CacheStore(str(tmp_path))
    target, quot, sub = _classes(a2)
    results, errors = [], []

    def worker():
        try:
            results.append(cache_get_or_compute(a2, target, quot, sub, store))
        except Exception as e:  # noqa: BLE001
            errors.append(e)

    threads = [threading.Thread(target=worker) for _ in range(6)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert not errors
    assert len({r.to_record()['coefficients'][0] for r in results}) == 1
    lines = (tmp_path / f"{content_hash(a2)}.jsonl").read_text().splitlines()
    assert len(lines) == 1

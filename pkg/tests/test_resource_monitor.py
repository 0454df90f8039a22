from utils.resource_monitor import ResourceLimitedThreadPoolExecutor, ResourceMonitor, run_jobs


def test_run_jobs_keeps_order():
    assert run_jobs(lambda x: x * x, range(10), max_workers=3) == [x * x for x in range(10)]


def test_single_worker_runs_inline():
    seen = []
    assert run_jobs(seen.append, [1, 2], max_workers=1) == [None, None]
    assert seen == [1, 2]


def test_executor_accounts_tasks():
    with ResourceLimitedThreadPoolExecutor(max_workers=2) as pool:
        assert pool.submit(sum, [1, 2, 3]).result() == 6
    assert pool.active_tasks == 0


def test_monitor_sample_and_stop():
    with ResourceMonitor(interval=0.01) as monitor:
        stats = monitor.sample()
    assert set(stats) == {'cpu_percent', 'rss_mb', 'system_memory_percent'}
    assert stats['rss_mb'] > 0
    assert not monitor._monitor_thread.is_alive()

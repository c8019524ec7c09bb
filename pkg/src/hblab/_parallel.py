import os
from concurrent.futures import ThreadPoolExecutor


def worker_count(n_items):
    cap = os.environ.get("HB_LAB_THREADS")
    limit = int(cap) if cap else (os.cpu_count() or 1)
    return max(1, min(limit, n_items))


def ordered_map(fn, items):
    """Map ``fn`` over ``items`` on a thread pool, returning results in input order.

    The pool size is capped by the ``HB_LAB_THREADS`` environment variable.
    Reductions over the result list stay deterministic because ordering is
    preserved regardless of completion order.
    """
    items = list(items)
    n = worker_count(len(items))
    if n == 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))

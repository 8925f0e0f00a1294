"""
Index-range enumeration helpers shared by the exhaustive checks.

Every enumeration is addressed by a global integer index so that runs can be
split into contiguous shards and resumed from a checkpoint.
"""

import logging
import multiprocessing
from concurrent.futures import ProcessPoolExecutor

import numpy as np

logger = logging.getLogger(__name__)


def projective_count(Q, r):
    return (Q ** r - 1) // (Q - 1)


def projective_coefficients(Q, r, start, stop):
    """
    Coefficient tuples for projective indices [start, stop).

    Block j holds the tuples whose first nonzero entry sits at position j and
    equals 1; inside a block the trailing entries run in base-Q order.
    """
    rows = []
    offset = 0
    for j in range(r):
        size = Q ** (r - 1 - j)
        lo, hi = max(start, offset), min(stop, offset + size)
        if lo < hi:
            local = np.arange(lo - offset, hi - offset, dtype=np.int64)
            block = np.zeros((hi - lo, r), dtype=np.int64)
            block[:, j] = 1
            if j < r - 1:
                digits = np.unravel_index(local, (Q,) * (r - 1 - j))
                block[:, j + 1:] = np.stack(digits, axis=1)
            rows.append(block)
        offset += size
    if not rows:
        return np.zeros((0, r), dtype=np.int64)
    return np.concatenate(rows)


def tuple_indices(Q, r, start, stop):
    """All r-tuples over [0, Q) with global indices [start, stop), base-Q order."""
    flat = np.arange(start, stop, dtype=np.int64)
    return np.stack(np.unravel_index(flat, (Q,) * r), axis=1)


def chunk_ranges(start, stop, chunk_size):
    for lo in range(start, stop, chunk_size):
        yield lo, min(stop, lo + chunk_size)


def shard_range(total, shard, shards):
    """Contiguous slice of [0, total) owned by shard ``shard`` of ``shards``."""
    if not 0 <= shard < shards:
        raise ValueError(f"shard {shard} outside [0, {shards})")
    base, extra = divmod(total, shards)
    start = shard * base + min(shard, extra)
    return start, start + base + (1 if shard < extra else 0)


def batch_rank(matrices, p):
    """
    Ranks over F_p of a stack of matrices (B, R, C) of integers mod p.
    """
    A = np.array(matrices, dtype=np.int64) % p
    B, R, C = A.shape
    inverse = np.zeros(p, dtype=np.int64)
    inverse[1:] = [pow(a, p - 2, p) for a in range(1, p)]
    rank = np.zeros(B, dtype=np.int64)
    rows = np.arange(R)
    for col in range(C):
        candidates = (A[:, :, col] != 0) & (rows[None, :] >= rank[:, None])
        active = np.flatnonzero(candidates.any(axis=1))
        if active.size == 0:
            continue
        pivot = np.argmax(candidates[active], axis=1)
        target = rank[active]

        pivot_rows = A[active, pivot, :].copy()
        A[active, pivot, :] = A[active, target, :]
        pivot_rows = (pivot_rows * inverse[pivot_rows[:, col]][:, None]) % p
        A[active, target, :] = pivot_rows

        factors = A[active, :, col].copy()
        factors[np.arange(active.size), target] = 0
        A[active] = (A[active] - factors[:, :, None] * pivot_rows[:, None, :]) % p
        rank[active] += 1
    return rank


def map_ranges(func, args, start, stop, chunk_size, workers=1):
    """
    Apply ``func(*args, lo, hi)`` over chunks of [start, stop).

    Results come back in chunk order; with several workers the chunks run in a
    process pool and ``args`` must be picklable.
    """
    ranges = list(chunk_ranges(start, stop, chunk_size))
    if workers <= 1 or len(ranges) <= 1:
        for lo, hi in ranges:
            yield func(*args, lo, hi)
        return
    with ProcessPoolExecutor(max_workers=workers,
                             mp_context=multiprocessing.get_context('spawn')) as pool:
        futures = [pool.submit(func, *args, lo, hi) for lo, hi in ranges]
        for future in futures:
            yield future.result()

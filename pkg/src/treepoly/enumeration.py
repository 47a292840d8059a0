"""Level-by-level generation of all non-isomorphic unlabeled trees.

Every tree with n+1 vertices arises from some n-vertex tree by attaching a
new leaf, so each level is produced by expanding every sealed parent tree
in all possible ways and deduplicating the children by canonical code.
The known per-level counts act as hard assertions: any disagreement aborts
the run instead of sealing a wrong level.

A level runs in two deterministic phases. Phase A canonizes every child of
every parent and unions the distinct codes; phase B computes one record per
distinct code (polynomial, degree sequence, predicate flags). Both phases
split their input into contiguous chunks across worker processes (fork),
which inherit the read-only polynomial cache of all earlier levels. The
parent process is the only store writer, so the sealed level content is
byte-identical for any worker count.
"""

from __future__ import annotations

import multiprocessing
import os
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .canon import decode_packed, int_to_code
from .counts import UNLABELED_TREE_COUNTS, cumulative
from .errors import CountMismatchError, StoreCorruptionError, UnsealedLevelError
from .indpoly import LevelIndex, MemoCache, _poly_packed
from .store import Store, TreeRecord
from .tree import Tree, pack_adjacency

EMPTY_TREE_RECORD = TreeRecord.create(uid="", n=0, degrees=(), coeffs=(1,))
SINGLE_VERTEX_RECORD = TreeRecord.create(uid="10", n=1, degrees=(0,), coeffs=(1, 1))


@dataclass(frozen=True)
class LevelPlan:
    """Inputs for generating one level from the sealed level below it."""

    n: int
    expected_count: int | None
    parent_codes: tuple[str, ...]

    def __post_init__(self):
        if self.expected_count is not None and self.expected_count <= 0:
            raise ValueError("expected_count must be positive")
        if len(set(self.parent_codes)) != len(self.parent_codes):
            raise ValueError("parent codes must be pairwise distinct")


@dataclass
class RunSummary:
    max_n: int
    level_counts: dict[int, int] = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def total(self) -> int:
        """Trees with 1 <= n <= max_n."""
        return sum(c for n, c in self.level_counts.items() if n >= 1)

    @property
    def total_with_empty(self) -> int:
        return self.total + self.level_counts.get(0, 0)


def expand(t: Tree) -> list[Tree]:
    """All n leaf-extensions of a tree; the i-th attaches the new leaf to vertex i."""
    if t.n == 0:
        raise ValueError("cannot expand the empty tree")
    out = []
    for i in range(t.n):
        adjacency = list(t.adjacency)
        adjacency[i] = adjacency[i] + (t.n,)
        adjacency.append((i,))
        out.append(Tree(t.n + 1, tuple(adjacency)))
    return out


# ---------------------------------------------------------------------------
# worker machinery: context is published before fork, inherited read-only

_CTX: dict = {}


def _chunk_bounds(total: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, total)) if total else 1
    base, rem = divmod(total, parts)
    bounds = []
    lo = 0
    for i in range(parts):
        hi = lo + base + (1 if i < rem else 0)
        bounds.append((lo, hi))
        lo = hi
    return bounds


def _decode_int(code: int) -> tuple[np.ndarray, np.ndarray, int]:
    adjacency, n = decode_packed(format(code, "b"))
    off, adj = pack_adjacency(adjacency, n)
    return off, adj, n


def _phase_a_chunk(bounds: tuple[int, int]) -> np.ndarray:
    """Distinct child codes produced by one contiguous run of parents."""
    lo, hi = bounds
    parents = _CTX["parent_codes"]
    seen: set[int] = set()
    for idx in range(lo, hi):
        off, adj, pn = _decode_int(int(parents[idx]))
        seen.update(kernels.child_codes_packed(off, adj, pn).tolist())
    return np.fromiter(seen, dtype=np.int64, count=len(seen))


def _build_record(code: int, n: int, cache: MemoCache) -> TreeRecord:
    off, adj, k = _decode_int(code)
    if k != n:
        raise StoreCorruptionError(f"code {int_to_code(code)} is not a level-{n} code")
    coeffs = _poly_packed(off, adj, n, cache, known_code=code)
    degrees = sorted((int(off[v + 1] - off[v]) for v in range(n)), reverse=True)
    return TreeRecord.create(
        uid=int_to_code(code), n=n, degrees=degrees, coeffs=coeffs.tolist()
    )


def _phase_b_chunk(bounds: tuple[int, int]) -> list[TreeRecord]:
    lo, hi = bounds
    codes = _CTX["new_codes"]
    cache = _CTX["cache"]
    n = _CTX["n"]
    return [_build_record(int(codes[idx]), n, cache) for idx in range(lo, hi)]


def _load_cache(store: Store, below: int, cache: MemoCache | None = None) -> MemoCache:
    """Memo cache holding every sealed level strictly below ``below``."""
    if cache is None:
        cache = MemoCache()
    for n in range(1, below):
        if cache.has_level(n):
            continue
        if not store.level_sealed(n):
            raise UnsealedLevelError(f"level {n} must be sealed before level {below}")
        pairs = [(int(rec.uid, 2), rec.coeffs) for rec in store.fetch_level(n)]
        cache.attach_level(LevelIndex.build(n, pairs))
    return cache


def enumerate_level(
    plan: LevelPlan,
    store: Store,
    workers: int = 1,
    cache: MemoCache | None = None,
) -> int:
    """Generate, deduplicate, record, and seal one level. Returns its size."""
    n = plan.n
    if not store.level_sealed(n - 1):
        raise UnsealedLevelError(f"level {n - 1} is not sealed; cannot build level {n}")
    cache = _load_cache(store, n, cache)
    parent_arr = np.fromiter(
        (int(c, 2) for c in plan.parent_codes), dtype=np.int64, count=len(plan.parent_codes)
    )

    pool = None
    try:
        if workers > 1:
            kernels.warmup()  # compile before forking so workers inherit the JIT state
            _CTX.update(parent_codes=parent_arr, n=n, cache=cache)
            pool = multiprocessing.get_context("fork").Pool(workers)
            chunks = pool.map(_phase_a_chunk, _chunk_bounds(len(parent_arr), workers))
        else:
            _CTX.update(parent_codes=parent_arr, n=n, cache=cache)
            chunks = [_phase_a_chunk((0, len(parent_arr)))]
        new_codes = np.unique(np.concatenate(chunks)) if chunks else np.zeros(0, np.int64)

        count = len(new_codes)
        if plan.expected_count is not None and count != plan.expected_count:
            raise CountMismatchError(
                f"level {n} produced {count} distinct trees, expected {plan.expected_count}"
            )

        store.open_level(n)
        if pool is not None:
            # phase B needs new_codes in the workers; re-fork with updated context
            pool.close()
            pool.join()
            _CTX["new_codes"] = new_codes
            pool = multiprocessing.get_context("fork").Pool(workers)
            record_chunks = pool.map(_phase_b_chunk, _chunk_bounds(count, workers))
        else:
            _CTX["new_codes"] = new_codes
            record_chunks = [_phase_b_chunk((0, count))]
        pairs = []
        for recs in record_chunks:
            for rec in recs:
                if not store.insert_if_absent(rec):
                    raise StoreCorruptionError(f"duplicate uid {rec.uid} at level {n}")
                pairs.append((int(rec.uid, 2), rec.coeffs))
    finally:
        if pool is not None:
            pool.close()
            pool.join()
        _CTX.clear()

    store.seal_level(n, expected_count=plan.expected_count)
    cache.attach_level(LevelIndex.build(n, pairs))
    return count


def run(
    max_n: int,
    store: Store,
    workers: int | None = None,
    progress=None,
) -> RunSummary:
    """Generate all levels up to max_n, resuming past anything already sealed."""
    if max_n < 0:
        raise ValueError("max_n must be non-negative")
    workers = workers if workers else (os.cpu_count() or 1)
    progress = progress if progress is not None else sys.stderr
    kernels.warmup()
    started = time.perf_counter()

    store.discard_unsealed()
    summary = RunSummary(max_n=max_n)

    if not store.level_sealed(0):
        store.open_level(0)
        store.insert_if_absent(EMPTY_TREE_RECORD)
        store.seal_level(0)
    summary.level_counts[0] = 1
    if max_n >= 1:
        if not store.level_sealed(1):
            store.open_level(1)
            store.insert_if_absent(SINGLE_VERTEX_RECORD)
            store.seal_level(1)
        summary.level_counts[1] = 1

    cache = MemoCache()
    for n in range(2, max_n + 1):
        t0 = time.perf_counter()
        if store.level_sealed(n):
            count = store.manifest(n).record_count
            summary.level_counts[n] = count
            continue
        plan = LevelPlan(
            n=n,
            expected_count=UNLABELED_TREE_COUNTS.get(n),
            parent_codes=tuple(store.level_codes(n - 1)),
        )
        count = enumerate_level(plan, store, workers=workers, cache=cache)
        summary.level_counts[n] = count
        if progress:
            print(
                f"level {n}: {count} trees sealed in {time.perf_counter() - t0:.2f}s",
                file=progress,
                flush=True,
            )

    summary.elapsed = time.perf_counter() - started
    return summary


def expected_total(max_n: int) -> int | None:
    """Known cumulative count for 1..max_n, if the whole range is tabulated."""
    if all(n in UNLABELED_TREE_COUNTS for n in range(1, max_n + 1)):
        return cumulative(max_n)
    return None

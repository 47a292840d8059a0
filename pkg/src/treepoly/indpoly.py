"""Independence polynomial computation.

Two independent routes, kept deliberately separate so each can check the
other: a memoized deletion recurrence (split the tree at a center r into
T - r and T - N[r], multiply component polynomials, recombine as
P1 + x*P2), and a brute-force subset enumeration that counts independent
sets directly.

The memo cache is keyed by canonical code, so isomorphic sub-forests are
computed once regardless of labeling. Sealed store levels load into
immutable sorted-array indexes; only genuinely new codes land in the
mutable overlay dict. That layout is also what lets forked workers share a
warm cache without copying it.
"""

from __future__ import annotations

import numpy as np

from . import kernels
from .canon import code_to_int, free_code_int, int_to_code, rooted_code_int
from .errors import CoefficientOverflowError
from .tree import Tree, centers_packed, pack, split_components

_ONE = np.array([1], dtype=np.int64)
_VERTEX = np.array([1, 1], dtype=np.int64)
_FAST_LIMIT = 31  # beyond this, codes no longer fit the int64 kernel lanes


class LevelIndex:
    """Immutable code -> coefficients mapping for one sealed level.

    Codes are a sorted int64 array searched by bisection; coefficients live
    in one flat int64 blob. No per-record Python objects, so forked worker
    processes can read it without copy-on-write blowup.
    """

    __slots__ = ("n", "codes", "offsets", "data")

    def __init__(self, n: int, codes: np.ndarray, offsets: np.ndarray, data: np.ndarray):
        self.n = n
        self.codes = codes
        self.offsets = offsets
        self.data = data

    @classmethod
    def build(cls, n: int, pairs) -> "LevelIndex":
        """Build from (code_int, coeffs) pairs; sorts by code."""
        pairs = sorted(pairs, key=lambda p: p[0])
        codes = np.fromiter((p[0] for p in pairs), dtype=np.int64, count=len(pairs))
        offsets = np.zeros(len(pairs) + 1, dtype=np.int64)
        chunks = []
        for i, (_, coeffs) in enumerate(pairs):
            arr = np.asarray(coeffs, dtype=np.int64)
            chunks.append(arr)
            offsets[i + 1] = offsets[i] + arr.size
        data = np.concatenate(chunks) if chunks else np.zeros(0, dtype=np.int64)
        return cls(n, codes, offsets, data)

    def get(self, code: int) -> np.ndarray | None:
        i = int(np.searchsorted(self.codes, code))
        if i < len(self.codes) and self.codes[i] == code:
            return self.data[self.offsets[i]:self.offsets[i + 1]]
        return None

    def __len__(self) -> int:
        return len(self.codes)


class MemoCache:
    """Mapping from canonical code to exact polynomial coefficients.

    Reads are safe from any thread; writes go through an atomic
    insert-if-absent (dict.setdefault under the GIL). Duplicate concurrent
    computation of the same code is harmless because all writers would
    store identical values. Optionally backed by a store: misses fall
    through to ``store.fetch_polynomial`` and promote into memory.
    """

    def __init__(self, store=None):
        self._levels: dict[int, LevelIndex] = {}
        self._extra: dict[int, np.ndarray] = {}
        self._store = store

    def attach_level(self, index: LevelIndex) -> None:
        self._levels[index.n] = index

    def has_level(self, n: int) -> bool:
        return n in self._levels

    def _get_int(self, code: int) -> np.ndarray | None:
        idx = self._levels.get(code.bit_length() // 2)
        if idx is not None:
            hit = idx.get(code)
            if hit is not None:
                return hit
        hit = self._extra.get(code)
        if hit is not None:
            return hit
        if self._store is not None:
            coeffs = self._store.fetch_polynomial(int_to_code(code))
            if coeffs is not None:
                arr = np.asarray(coeffs, dtype=np.int64)
                self._extra.setdefault(code, arr)
                return arr
        return None

    def _put_int(self, code: int, coeffs: np.ndarray) -> None:
        self._extra.setdefault(code, coeffs)

    def get(self, code: str) -> tuple[int, ...] | None:
        hit = self._get_int(code_to_int(code))
        return None if hit is None else tuple(int(c) for c in hit)

    def put(self, code: str, coeffs) -> None:
        self._put_int(code_to_int(code), np.asarray(coeffs, dtype=np.int64))

    def __len__(self) -> int:
        return sum(len(ix) for ix in self._levels.values()) + len(self._extra)


def _product(polys) -> np.ndarray:
    out = _ONE
    for p in polys:
        out = kernels.convolve_i64(out, p)
    return out


def _poly_packed(off: np.ndarray, adj: np.ndarray, n: int, cache: MemoCache,
                 known_code: int = 0) -> np.ndarray:
    """Recurrence core on a packed tree; returns an int64 coefficient array."""
    if n == 0:
        return _ONE
    if n == 1:
        return _VERTEX
    code = known_code if known_code else (
        kernels.free_code_packed(off, adj, n) if n <= _FAST_LIMIT
        else free_code_int(off, adj, n)
    )
    hit = cache._get_int(code)
    if hit is not None:
        return hit

    if n <= _FAST_LIMIT:
        codes1, codes2 = kernels.pivot_split_codes(off, adj, n)
        parts1 = [cache._get_int(int(c)) if int(c) != 0b10 else _VERTEX for c in codes1]
        parts2 = [cache._get_int(int(c)) if int(c) != 0b10 else _VERTEX for c in codes2]
        if all(p is not None for p in parts1) and all(p is not None for p in parts2):
            result = kernels.shift_add_i64(_product(parts1), _product(parts2))
            cache._put_int(code, result)
            return result

    # cold path: split in Python and recurse per component
    cs = centers_packed(off, adj, n)
    r = cs[0]
    if len(cs) == 2 and rooted_code_int(off, adj, n, cs[1]) > rooted_code_int(off, adj, n, cs[0]):
        r = cs[1]
    p1 = _ONE
    for coff, cadj, k in split_components(off, adj, n, (r,)):
        p1 = kernels.convolve_i64(p1, _poly_packed(coff, cadj, k, cache))
    closed = [r] + [int(adj[i]) for i in range(off[r], off[r + 1])]
    p2 = _ONE
    for coff, cadj, k in split_components(off, adj, n, closed):
        p2 = kernels.convolve_i64(p2, _poly_packed(coff, cadj, k, cache))
    result = kernels.shift_add_i64(p1, p2)
    cache._put_int(code, result)
    return result


def independence_polynomial(t: Tree, cache: MemoCache | None = None) -> tuple[int, ...]:
    """Exact independence polynomial of a tree via the memoized recurrence."""
    if cache is None:
        cache = MemoCache()
    off, adj = pack(t)
    try:
        result = _poly_packed(off, adj, t.n, cache)
    except OverflowError as exc:
        raise CoefficientOverflowError(str(exc)) from None
    return tuple(int(c) for c in result)


def brute_force_polynomial(t: Tree) -> tuple[int, ...]:
    """Independent-set counts by cardinality from explicit subset enumeration.

    Independent oracle for the recurrence; limited to n <= 24 subsets.
    """
    if t.n > 24:
        raise ValueError("brute force enumeration limited to 24 vertices")
    if t.n == 0:
        return (1,)
    masks = np.zeros(t.n, dtype=np.int64)
    for v, nbrs in enumerate(t.adjacency):
        m = 0
        for u in nbrs:
            m |= 1 << u
        masks[v] = m
    counts = kernels.subset_counts(masks, t.n)
    while len(counts) > 1 and counts[-1] == 0:
        counts = counts[:-1]
    return tuple(int(c) for c in counts)

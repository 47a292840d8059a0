"""Plain Python/numpy fallback implementations of the hot kernels.

Behavior must stay bit-identical to the numba backend; the cross-backend
equivalence tests in tests/test_kernels.py hold the two to that.
"""

from __future__ import annotations

import itertools

import numpy as np

from ..canon import free_code_int, rooted_code_int
from ..errors import CoefficientOverflowError
from ..poly import COEFF_MAX
from ..tree import centers_packed, split_components

# 16-bit popcount table; subset masks stay below 2**24 so two lookups suffice
_POP16 = np.array([bin(i).count("1") for i in range(1 << 16)], dtype=np.uint8)

_CODE_VERTEX_LIMIT = 31  # 2n bits must fit in a signed 64-bit lane


def free_code_packed(off: np.ndarray, adj: np.ndarray, n: int) -> int:
    if n > _CODE_VERTEX_LIMIT:
        raise ValueError("tree too large for 64-bit code lanes")
    return free_code_int(off, adj, n)


def child_codes_packed(off: np.ndarray, adj: np.ndarray, n: int) -> np.ndarray:
    """Free code of the tree plus one new leaf attached to vertex i, for each i."""
    if n + 1 > _CODE_VERTEX_LIMIT:
        raise ValueError("tree too large for 64-bit code lanes")
    out = np.empty(n, dtype=np.int64)
    for i in range(n):
        coff = np.empty(n + 2, dtype=np.int64)
        coff[: n + 1] = off
        coff[i + 1 : n + 1] += 1
        coff[n + 1] = off[n] + 2
        cadj = np.empty(len(adj) + 2, dtype=np.int64)
        cadj[: off[i + 1]] = adj[: off[i + 1]]
        cadj[off[i + 1]] = n  # new leaf lands at the end of i's sorted list
        cadj[off[i + 1] + 1 : -1] = adj[off[i + 1] :]
        cadj[-1] = i
        out[i] = free_code_int(coff, cadj, n + 1)
    return out


def _pivot(off: np.ndarray, adj: np.ndarray, n: int) -> int:
    cs = centers_packed(off, adj, n)
    if len(cs) == 1:
        return cs[0]
    a = rooted_code_int(off, adj, n, cs[0])
    b = rooted_code_int(off, adj, n, cs[1])
    return cs[0] if a >= b else cs[1]


def pivot_split_codes(off: np.ndarray, adj: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Component codes of T - r and T - N[r], r being the canonical-root center.

    Components appear in order of their smallest original vertex index.
    """
    if n > _CODE_VERTEX_LIMIT:
        raise ValueError("tree too large for 64-bit code lanes")
    r = _pivot(off, adj, n)
    codes1 = [
        free_code_int(coff, cadj, k)
        for coff, cadj, k in split_components(off, adj, n, (r,))
    ]
    closed = [r] + [int(adj[i]) for i in range(off[r], off[r + 1])]
    codes2 = [
        free_code_int(coff, cadj, k)
        for coff, cadj, k in split_components(off, adj, n, closed)
    ]
    return np.array(codes1, dtype=np.int64), np.array(codes2, dtype=np.int64)


def subset_counts(masks: np.ndarray, n: int) -> np.ndarray:
    """Independent-set counts by cardinality via vectorized subset filtering."""
    if n > 24:
        raise ValueError("subset enumeration limited to 24 vertices")
    counts = np.zeros(n + 1, dtype=np.int64)
    if n == 0:
        counts[0] = 1
        return counts
    patterns = []
    for v in range(n):
        m = int(masks[v])
        while m:
            low = m & -m
            u = low.bit_length() - 1
            if u > v:
                patterns.append((1 << u) | (1 << v))
            m ^= low
    total = 1 << n
    chunk = 1 << 20
    for lo in range(0, total, chunk):
        hi = min(lo + chunk, total)
        idx = np.arange(lo, hi, dtype=np.int64)
        ok = np.ones(hi - lo, dtype=bool)
        for pat in patterns:
            ok &= (idx & pat) != pat
        pc = _POP16[idx & 0xFFFF] + _POP16[idx >> 16]
        counts += np.bincount(pc[ok].astype(np.int64), minlength=n + 1)
    return counts


def convolve_i64(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.size == 0 or b.size == 0:
        return np.zeros(0, dtype=np.int64)
    out = [0] * (a.size + b.size - 1)
    for i, ai in enumerate(a.tolist()):
        if ai == 0:
            continue
        for j, bj in enumerate(b.tolist()):
            out[i + j] += ai * bj
    if out and max(out) > COEFF_MAX:
        raise CoefficientOverflowError("coefficient overflow in convolution")
    return np.array(out, dtype=np.int64)


def shift_add_i64(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = [0] * max(a.size, b.size + 1)
    for i, c in enumerate(a.tolist()):
        out[i] = c
    for i, c in enumerate(b.tolist()):
        out[i + 1] += c
    if out and max(out) > COEFF_MAX:
        raise CoefficientOverflowError("coefficient overflow in combine")
    return np.array(out, dtype=np.int64)


def _prufer_edges(n: int, seq) -> list[tuple[int, int]]:
    degree = [1] * n
    for s in seq:
        degree[s] += 1
    edges = []
    used = [False] * n
    for s in seq:
        for v in range(n):
            if degree[v] == 1 and not used[v]:
                used[v] = True
                edges.append((v, s))
                degree[s] -= 1
                break
    rest = [v for v in range(n) if not used[v]]
    edges.append((rest[0], rest[1]))
    return edges


def prufer_free_codes(n: int) -> np.ndarray:
    """Free codes of the trees decoded from every Prufer sequence of length n-2."""
    if n == 1:
        return np.array([0b10], dtype=np.int64)
    if n == 2:
        return np.array([0b1100], dtype=np.int64)
    out = np.empty(n ** (n - 2), dtype=np.int64)
    for t, seq in enumerate(itertools.product(range(n), repeat=n - 2)):
        edges = _prufer_edges(n, seq)
        adjacency = [[] for _ in range(n)]
        for u, v in edges:
            adjacency[u].append(v)
            adjacency[v].append(u)
        off = np.zeros(n + 1, dtype=np.int64)
        for v in range(n):
            off[v + 1] = off[v] + len(adjacency[v])
        adj = np.fromiter(
            (u for nbrs in adjacency for u in nbrs), dtype=np.int64, count=2 * (n - 1)
        )
        out[t] = free_code_int(off, adj, n)
    return out

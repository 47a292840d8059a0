"""Numba-compiled kernels for the enumeration and verification hot loops.

Trees arrive as CSR-packed int64 arrays (off, adj). Canonical codes travel
as int64 values: a code is a balanced word of 2n bits starting with '1', so
for n <= 31 the binary value fits a signed 64-bit lane and integer order
equals code order. The "virtual leaf" parameter lets one kernel canonize
all n leaf-extensions of a parent without rebuilding adjacency arrays.

Workspace arrays are allocated once per outer call and threaded through the
inner routines; at millions of calls per level the allocations would
otherwise dominate.
"""

import numpy as np
from numba import njit

from ..poly import COEFF_MAX

_CODE_VERTEX_LIMIT = 31


@njit(cache=True)
def _make_ws(m):
    return (
        np.empty(m, np.int64),  # deg
        np.empty(m, np.int64),  # que
        np.empty(m, np.int64),  # parent
        np.empty(m, np.int64),  # order
        np.empty(m, np.int64),  # size
        np.empty(m, np.int64),  # code
        np.empty(m, np.int64),  # tmpc
        np.empty(m, np.int64),  # tmps
    )


@njit(cache=True)
def _centers_v(off, adj, n, extra, deg, que):
    """Centers of the packed tree, with an optional virtual leaf n->extra.

    Returns (c1, c2); c2 is -1 when the center is unique.
    """
    m = n + 1 if extra >= 0 else n
    if m == 1:
        return 0, -1
    if m == 2:
        # vertices are {0, 1}, or {0, n} when the second one is the virtual leaf
        if extra >= 0:
            return 0, n
        return 0, 1
    for v in range(n):
        deg[v] = off[v + 1] - off[v]
    if extra >= 0:
        deg[extra] += 1
        deg[n] = 1
    head = 0
    tail = 0
    for v in range(m):
        if deg[v] == 1:
            que[tail] = v
            tail += 1
    remaining = m
    while remaining > 2:
        layer_end = tail
        remaining -= layer_end - head
        while head < layer_end:
            v = que[head]
            head += 1
            deg[v] = 0
            if v == n:
                u = extra
                if deg[u] > 1:
                    deg[u] -= 1
                    if deg[u] == 1:
                        que[tail] = u
                        tail += 1
            else:
                for i in range(off[v], off[v + 1]):
                    u = adj[i]
                    if deg[u] > 1:
                        deg[u] -= 1
                        if deg[u] == 1:
                            que[tail] = u
                            tail += 1
                if v == extra:
                    u = n
                    if deg[u] > 1:
                        deg[u] -= 1
                        if deg[u] == 1:
                            que[tail] = u
                            tail += 1
    c1 = que[head]
    c2 = que[head + 1] if tail - head > 1 else -1
    if c2 >= 0 and c2 < c1:
        c1, c2 = c2, c1
    return c1, c2


@njit(cache=True)
def _rooted_v(off, adj, n, extra, root, parent, order, size, code, tmpc, tmps):
    """Rooted canonical code (int64) with an optional virtual leaf n->extra."""
    m = n + 1 if extra >= 0 else n
    for v in range(m):
        parent[v] = -2
    parent[root] = -1
    order[0] = root
    cnt = 1
    head = 0
    while head < cnt:
        v = order[head]
        head += 1
        if v == n:
            u = extra
            if parent[u] == -2:
                parent[u] = v
                order[cnt] = u
                cnt += 1
        else:
            for i in range(off[v], off[v + 1]):
                u = adj[i]
                if parent[u] == -2:
                    parent[u] = v
                    order[cnt] = u
                    cnt += 1
            if v == extra:
                u = n
                if parent[u] == -2:
                    parent[u] = v
                    order[cnt] = u
                    cnt += 1
    for idx in range(cnt - 1, -1, -1):
        v = order[idx]
        nc = 0
        if v == n:
            u = extra
            if parent[u] == v:
                tmpc[nc] = code[u]
                tmps[nc] = size[u]
                nc += 1
        else:
            for i in range(off[v], off[v + 1]):
                u = adj[i]
                if parent[u] == v:
                    tmpc[nc] = code[u]
                    tmps[nc] = size[u]
                    nc += 1
            if v == extra and parent[n] == v:
                tmpc[nc] = code[n]
                tmps[nc] = size[n]
                nc += 1
        # insertion sort, descending by code value
        for a in range(1, nc):
            kc = tmpc[a]
            ks = tmps[a]
            b = a - 1
            while b >= 0 and tmpc[b] < kc:
                tmpc[b + 1] = tmpc[b]
                tmps[b + 1] = tmps[b]
                b -= 1
            tmpc[b + 1] = kc
            tmps[b + 1] = ks
        c = np.int64(1)
        s = np.int64(1)
        for a in range(nc):
            c = (c << (2 * tmps[a])) | tmpc[a]
            s += tmps[a]
        code[v] = c << 1
        size[v] = s
    return code[root]


@njit(cache=True)
def _free_v(off, adj, n, extra, ws):
    deg, que, parent, order, size, code, tmpc, tmps = ws
    c1, c2 = _centers_v(off, adj, n, extra, deg, que)
    best = _rooted_v(off, adj, n, extra, c1, parent, order, size, code, tmpc, tmps)
    if c2 >= 0:
        other = _rooted_v(off, adj, n, extra, c2, parent, order, size, code, tmpc, tmps)
        if other > best:
            best = other
    return best


@njit(cache=True)
def free_code_packed(off, adj, n):
    if n > _CODE_VERTEX_LIMIT:
        raise ValueError("tree too large for 64-bit code lanes")
    ws = _make_ws(n + 1)
    return _free_v(off, adj, n, -1, ws)


@njit(cache=True)
def child_codes_packed(off, adj, n):
    if n + 1 > _CODE_VERTEX_LIMIT:
        raise ValueError("tree too large for 64-bit code lanes")
    ws = _make_ws(n + 2)
    out = np.empty(n, np.int64)
    for i in range(n):
        out[i] = _free_v(off, adj, n, i, ws)
    return out


@njit(cache=True)
def _component_codes(off, adj, n, gone, ws, comp_off, comp_adj, members, local, out):
    """Free codes of the components left after deleting marked vertices.

    Components are emitted in order of their smallest original vertex.
    Returns the number of components written to ``out``.
    """
    ncomp = 0
    for v in range(n):
        local[v] = -1
    for start in range(n):
        if gone[start] or local[start] >= 0:
            continue
        # collect members (BFS), then relabel in ascending original order
        members[0] = start
        local[start] = 0
        k = 1
        head = 0
        while head < k:
            v = members[head]
            head += 1
            for i in range(off[v], off[v + 1]):
                u = adj[i]
                if gone[u] == 0 and local[u] < 0:
                    local[u] = 0
                    members[k] = u
                    k += 1
        members[:k].sort()
        for idx in range(k):
            local[members[idx]] = idx
        pos = 0
        comp_off[0] = 0
        for idx in range(k):
            v = members[idx]
            for i in range(off[v], off[v + 1]):
                u = adj[i]
                if gone[u] == 0:
                    comp_adj[pos] = local[u]
                    pos += 1
            comp_off[idx + 1] = pos
        out[ncomp] = _free_v(comp_off[: k + 1], comp_adj[:pos], k, -1, ws)
        ncomp += 1
    return ncomp


@njit(cache=True)
def pivot_split_codes(off, adj, n):
    """Component codes of T - r and T - N[r], r the canonical-root center."""
    if n > _CODE_VERTEX_LIMIT:
        raise ValueError("tree too large for 64-bit code lanes")
    ws = _make_ws(n + 1)
    deg, que, parent, order, size, code, tmpc, tmps = ws
    c1, c2 = _centers_v(off, adj, n, -1, deg, que)
    r = c1
    if c2 >= 0:
        v1 = _rooted_v(off, adj, n, -1, c1, parent, order, size, code, tmpc, tmps)
        v2 = _rooted_v(off, adj, n, -1, c2, parent, order, size, code, tmpc, tmps)
        if v2 > v1:
            r = c2
    gone = np.zeros(n, np.uint8)
    comp_off = np.empty(n + 1, np.int64)
    comp_adj = np.empty(max(2 * n - 2, 1), np.int64)
    members = np.empty(n, np.int64)
    local = np.empty(n, np.int64)
    buf1 = np.empty(n, np.int64)
    buf2 = np.empty(n, np.int64)
    gone[r] = 1
    k1 = _component_codes(off, adj, n, gone, ws, comp_off, comp_adj, members, local, buf1)
    for i in range(off[r], off[r + 1]):
        gone[adj[i]] = 1
    k2 = _component_codes(off, adj, n, gone, ws, comp_off, comp_adj, members, local, buf2)
    return buf1[:k1].copy(), buf2[:k2].copy()


@njit(cache=True)
def subset_counts(masks, n):
    """Independent-set counts by cardinality, by DP over all 2**n subsets."""
    if n > 24:
        raise ValueError("subset enumeration limited to 24 vertices")
    counts = np.zeros(n + 1, np.int64)
    counts[0] = 1
    if n == 0:
        return counts
    total = 1 << n
    indep = np.zeros(total, np.uint8)
    card = np.zeros(total, np.uint8)
    indep[0] = 1
    for s in range(1, total):
        x = s
        v = 0
        while x & 1 == 0:
            x >>= 1
            v += 1
        rest = s & (s - 1)
        if indep[rest] == 1 and (masks[v] & rest) == 0:
            indep[s] = 1
            c = card[rest] + 1
            card[s] = c
            counts[c] += 1
    return counts


@njit(cache=True)
def convolve_i64(a, b):
    if a.size == 0 or b.size == 0:
        return np.zeros(0, np.int64)
    out = np.zeros(a.size + b.size - 1, np.int64)
    for i in range(a.size):
        ai = a[i]
        if ai == 0:
            continue
        for j in range(b.size):
            bj = b[j]
            if bj == 0:
                continue
            if ai > COEFF_MAX // bj:
                raise OverflowError("coefficient overflow in convolution")
            p = ai * bj
            s = out[i + j]
            if s > COEFF_MAX - p:
                raise OverflowError("coefficient overflow in convolution")
            out[i + j] = s + p
    return out


@njit(cache=True)
def shift_add_i64(a, b):
    la = a.size
    lb = b.size
    out = np.zeros(max(la, lb + 1), np.int64)
    for i in range(la):
        out[i] = a[i]
    for i in range(lb):
        s = out[i + 1]
        c = b[i]
        if s > COEFF_MAX - c:
            raise OverflowError("coefficient overflow in combine")
        out[i + 1] = s + c
    return out


@njit(cache=True)
def prufer_free_codes(n):
    """Free codes of the trees decoded from every Prufer sequence of length n-2."""
    if n == 1:
        return np.array([2], np.int64)  # '10'
    if n == 2:
        return np.array([12], np.int64)  # '1100'
    total = n ** (n - 2)
    out = np.empty(total, np.int64)
    seq = np.zeros(n - 2, np.int64)
    degree = np.empty(n, np.int64)
    used = np.empty(n, np.uint8)
    eu = np.empty(n - 1, np.int64)
    ev = np.empty(n - 1, np.int64)
    off = np.empty(n + 1, np.int64)
    adj = np.empty(2 * (n - 1), np.int64)
    cursor = np.empty(n, np.int64)
    ws = _make_ws(n + 1)
    for t in range(total):
        for v in range(n):
            degree[v] = 1
            used[v] = 0
        for i in range(n - 2):
            degree[seq[i]] += 1
        ne = 0
        for i in range(n - 2):
            s = seq[i]
            leaf = -1
            for v in range(n):
                if degree[v] == 1 and used[v] == 0:
                    leaf = v
                    break
            used[leaf] = 1
            eu[ne] = leaf
            ev[ne] = s
            ne += 1
            degree[s] -= 1
        a = -1
        b = -1
        for v in range(n):
            if used[v] == 0:
                if a < 0:
                    a = v
                else:
                    b = v
        eu[ne] = a
        ev[ne] = b
        ne += 1
        for v in range(n + 1):
            off[v] = 0
        for i in range(ne):
            off[eu[i] + 1] += 1
            off[ev[i] + 1] += 1
        for v in range(n):
            off[v + 1] += off[v]
            cursor[v] = off[v]
        for i in range(ne):
            u = eu[i]
            v = ev[i]
            adj[cursor[u]] = v
            cursor[u] += 1
            adj[cursor[v]] = u
            cursor[v] += 1
        out[t] = _free_v(off, adj, n, -1, ws)
        k = n - 3
        while k >= 0:
            seq[k] += 1
            if seq[k] < n:
                break
            seq[k] = 0
            k -= 1
    return out

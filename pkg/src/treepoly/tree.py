"""Unlabeled tree representation and the basic structural operations.

Vertices are dense 0-based indices. Identity is carried by canonical codes,
never by labels, so every operation that extracts a sub-structure is free to
re-compact vertex indices to 0..k-1.

The empty tree (n = 0) is valid; it shows up as the sentinel record of the
persistent store and as the base case of the polynomial recurrence.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EdgeListParseError


@dataclass(frozen=True)
class Tree:
    """An unlabeled tree, optionally rooted.

    ``adjacency[v]`` is the sorted tuple of neighbors of vertex ``v``.
    Instances are immutable and safe to share across workers. The raw
    constructor trusts its input; use :meth:`from_edges` or :meth:`validate`
    when the input is not known to be a tree.
    """

    n: int
    adjacency: tuple[tuple[int, ...], ...] = ()
    root: int | None = None

    @classmethod
    def from_edges(cls, n: int, edges, root: int | None = None) -> "Tree":
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in edges:
            adj[u].append(v)
            adj[v].append(u)
        t = cls(n, tuple(tuple(sorted(a)) for a in adj), root)
        t.validate()
        return t

    def validate(self) -> None:
        """Check the tree invariants by traversal; raises ValueError on failure."""
        n = self.n
        if n < 0 or len(self.adjacency) != n:
            raise ValueError("adjacency length does not match vertex count")
        if self.root is not None and not (0 <= self.root < n):
            raise ValueError("root index out of range")
        edge_count = 0
        for v, nbrs in enumerate(self.adjacency):
            prev = -1
            for u in nbrs:
                if not (0 <= u < n):
                    raise ValueError("neighbor index out of range")
                if u == v:
                    raise ValueError("self-loop")
                if u <= prev:
                    raise ValueError("neighbor list not sorted or has duplicates")
                if v not in self.adjacency[u]:
                    raise ValueError("adjacency not symmetric")
                prev = u
            edge_count += len(nbrs)
        if n >= 1 and edge_count != 2 * (n - 1):
            raise ValueError("edge count is not n-1")
        if n >= 1:
            seen = [False] * n
            stack = [0]
            seen[0] = True
            reached = 1
            while stack:
                v = stack.pop()
                for u in self.adjacency[v]:
                    if not seen[u]:
                        seen[u] = True
                        reached += 1
                        stack.append(u)
            if reached != n:
                raise ValueError("graph is disconnected")

    def with_root(self, root: int) -> "Tree":
        if not (0 <= root < self.n):
            raise ValueError("root index out of range")
        return Tree(self.n, self.adjacency, root)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])


@dataclass(frozen=True)
class Forest:
    """An ordered collection of trees, as produced by vertex deletion."""

    components: tuple[Tree, ...] = ()

    @property
    def total_vertices(self) -> int:
        return sum(t.n for t in self.components)


def parse_edge_list(text: str) -> Tree:
    """Parse edge-list text (one edge per line, two 1-based labels) into a Tree.

    Blank lines are ignored. Labels must form {1..n}; input that is not a
    tree is rejected with a distinct message per failure mode. Empty input
    yields the empty tree.
    """
    edges: list[tuple[int, int]] = []
    max_label = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListParseError(f"line {lineno}: expected two vertex labels")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListParseError(f"line {lineno}: labels must be integers") from None
        if a < 1 or b < 1:
            raise EdgeListParseError(f"line {lineno}: label out of range (labels are 1-based)")
        if a == b:
            raise EdgeListParseError(f"line {lineno}: cycle detected (self-loop)")
        edges.append((a - 1, b - 1))
        max_label = max(max_label, a, b)

    n = max_label
    if n == 0:
        return Tree(0)

    seen_edges = set()
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        key = (min(u, v), max(u, v))
        if key in seen_edges:
            raise EdgeListParseError(f"duplicate edge {u + 1} {v + 1}")
        seen_edges.add(key)
        ru, rv = find(u), find(v)
        if ru == rv:
            raise EdgeListParseError(f"cycle detected at edge {u + 1} {v + 1}")
        parent[ru] = rv
        adj[u].append(v)
        adj[v].append(u)

    if len(edges) != n - 1:
        raise EdgeListParseError("disconnected: labels must form {1..n} with n-1 edges")

    return Tree(n, tuple(tuple(sorted(a)) for a in adj))


def closed_neighborhood(t: Tree, v: int) -> set[int]:
    """The vertex v together with all of its neighbors."""
    if not (0 <= v < t.n):
        raise ValueError(f"vertex index {v} out of range")
    return {v, *t.adjacency[v]}


def pack(t: Tree) -> tuple[np.ndarray, np.ndarray]:
    """Flatten adjacency into CSR-style (offsets, neighbors) int64 arrays."""
    return pack_adjacency(t.adjacency, t.n)


def pack_adjacency(adjacency, n: int) -> tuple[np.ndarray, np.ndarray]:
    off = np.zeros(n + 1, dtype=np.int64)
    for v in range(n):
        off[v + 1] = off[v] + len(adjacency[v])
    adj = np.empty(int(off[n]), dtype=np.int64)
    pos = 0
    for v in range(n):
        for u in adjacency[v]:
            adj[pos] = u
            pos += 1
    return off, adj


def split_components(off: np.ndarray, adj: np.ndarray, n: int, removed) -> list[tuple[np.ndarray, np.ndarray, int]]:
    """Connected components of the packed tree minus ``removed`` vertices.

    Returns one (off, adj, k) packed tree per component, indices re-compacted,
    components ordered by their smallest surviving original index.
    """
    gone = bytearray(n)
    for v in removed:
        gone[v] = 1
    assigned = bytearray(n)
    out = []
    for start in range(n):
        if gone[start] or assigned[start]:
            continue
        # BFS collecting the component in original-index discovery order
        members = [start]
        assigned[start] = 1
        head = 0
        while head < len(members):
            v = members[head]
            head += 1
            for i in range(off[v], off[v + 1]):
                u = int(adj[i])
                if not gone[u] and not assigned[u]:
                    assigned[u] = 1
                    members.append(u)
        members.sort()
        local = {v: i for i, v in enumerate(members)}
        k = len(members)
        coff = np.zeros(k + 1, dtype=np.int64)
        cadj_list: list[int] = []
        for i, v in enumerate(members):
            for j in range(off[v], off[v + 1]):
                u = int(adj[j])
                if not gone[u]:
                    cadj_list.append(local[u])
            coff[i + 1] = len(cadj_list)
        out.append((coff, np.array(cadj_list, dtype=np.int64), k))
    return out


def delete_vertices(t: Tree, vs) -> Forest:
    """Remove a vertex set and all incident edges, returning the component forest."""
    removed = set(vs)
    for v in removed:
        if not (0 <= v < t.n):
            raise ValueError(f"vertex index {v} out of range")
    off, adj = pack(t)
    comps = []
    for coff, cadj, k in split_components(off, adj, t.n, removed):
        adjacency = tuple(
            tuple(int(u) for u in cadj[coff[v]:coff[v + 1]]) for v in range(k)
        )
        comps.append(Tree(k, adjacency))
    return Forest(tuple(comps))


def centers_packed(off: np.ndarray, adj: np.ndarray, n: int) -> list[int]:
    """Center vertex or vertices of a packed tree, by iterative leaf stripping."""
    if n <= 0:
        raise ValueError("empty tree has no center")
    if n <= 2:
        return list(range(n))
    deg = [int(off[v + 1] - off[v]) for v in range(n)]
    layer = [v for v in range(n) if deg[v] == 1]
    remaining = n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            deg[v] = 0
            for i in range(off[v], off[v + 1]):
                u = int(adj[i])
                if deg[u] > 1:
                    deg[u] -= 1
                    if deg[u] == 1:
                        nxt.append(u)
        layer = nxt
    return sorted(layer)


def centers(t: Tree) -> set[int]:
    """The 1 or 2 vertices of minimum eccentricity."""
    if t.n == 0:
        raise ValueError("empty tree has no center")
    off, adj = pack(t)
    return set(centers_packed(off, adj, t.n))


def degree_sequence(t: Tree) -> tuple[int, ...]:
    """Vertex degrees sorted in descending order."""
    return tuple(sorted((len(a) for a in t.adjacency), reverse=True))

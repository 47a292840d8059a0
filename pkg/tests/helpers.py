"""Shared test utilities: independent oracles that avoid the code under test."""

import itertools
import random

from treepoly.tree import Tree


def random_tree(rng: random.Random, n: int) -> Tree:
    """Uniform-ish random tree by attaching each vertex to a random earlier one."""
    return Tree.from_edges(n, [(i, rng.randrange(i)) for i in range(1, n)])


def prufer_tree(n: int, seq) -> Tree:
    """Decode a Prufer sequence into a labeled tree (independent construction)."""
    degree = [1] * n
    for s in seq:
        degree[s] += 1
    edges = []
    used = [False] * n
    for s in seq:
        leaf = next(v for v in range(n) if degree[v] == 1 and not used[v])
        used[leaf] = True
        edges.append((leaf, s))
        degree[s] -= 1
    rest = [v for v in range(n) if not used[v]]
    edges.append((rest[0], rest[1]))
    return Tree.from_edges(n, edges)


def relabel(t: Tree, perm) -> Tree:
    """Apply a vertex permutation: new index perm[v] for old v."""
    edges = []
    for v, nbrs in enumerate(t.adjacency):
        for u in nbrs:
            if u > v:
                edges.append((perm[v], perm[u]))
    return Tree.from_edges(t.n, edges)


def are_isomorphic_bruteforce(a: Tree, b: Tree) -> bool:
    """Permutation-search isomorphism oracle; feasible for n <= 8.

    Degree-multiset mismatch is an exact early rejection; otherwise every
    bijection is tried.
    """
    if a.n != b.n:
        return False
    if sorted(len(x) for x in a.adjacency) != sorted(len(x) for x in b.adjacency):
        return False
    b_edges = {(v, u) for v, nbrs in enumerate(b.adjacency) for u in nbrs}
    a_edges = [(v, u) for v, nbrs in enumerate(a.adjacency) for u in nbrs if u > v]
    for perm in itertools.permutations(range(a.n)):
        if all((perm[v], perm[u]) in b_edges for v, u in a_edges):
            return True
    return False


def eccentricities(t: Tree) -> list[int]:
    """All-pairs BFS eccentricities (brute-force center oracle)."""
    out = []
    for s in range(t.n):
        dist = [-1] * t.n
        dist[s] = 0
        frontier = [s]
        while frontier:
            nxt = []
            for v in frontier:
                for u in t.adjacency[v]:
                    if dist[u] < 0:
                        dist[u] = dist[v] + 1
                        nxt.append(u)
            frontier = nxt
        out.append(max(dist))
    return out


def independent_set_counts_itertools(t: Tree) -> tuple[int, ...]:
    """Second independent polynomial oracle: explicit itertools enumeration."""
    counts = [0] * (t.n + 1)
    counts[0] = 1
    edges = [(v, u) for v, nbrs in enumerate(t.adjacency) for u in nbrs if u > v]
    for k in range(1, t.n + 1):
        for subset in itertools.combinations(range(t.n), k):
            chosen = set(subset)
            if all(not (v in chosen and u in chosen) for v, u in edges):
                counts[k] += 1
    while len(counts) > 1 and counts[-1] == 0:
        counts.pop()
    return tuple(counts)

"""Canonical binary codes for rooted and free trees.

A rooted tree's code is built bottom-up: a childless vertex gets "10", and
every other vertex gets '1' + (children codes sorted in descending binary
order, concatenated) + '0'. Two rooted trees get the same code exactly when
they are isomorphic as rooted trees.

Free trees are canonized by rooting at each graph center (there are 1 or 2,
and they are isomorphism-invariant) and keeping the larger of the resulting
codes. The code of a tree with n vertices is always a balanced word of
length 2n starting with '1', so interpreting it as a binary integer is a
faithful total order: longer codes compare greater, equal lengths compare
lexicographically. All internal arithmetic therefore works on plain
integers; the string form is the interchange format.
"""

from __future__ import annotations

import numpy as np

from .errors import InvalidCodeError
from .tree import Tree, centers_packed, pack

LEAF_CODE_INT = 0b10  # single vertex


def code_to_int(bits: str) -> int:
    return int(bits, 2)


def int_to_code(value: int) -> str:
    return format(value, "b")


def code_compare(a: str, b: str) -> int:
    """Compare two codes by binary value: -1 if a < b, 0 if equal, 1 if a > b."""
    if not a or not b:
        raise InvalidCodeError("cannot compare empty codes")
    if len(a) != len(b):
        return 1 if len(a) > len(b) else -1
    if a == b:
        return 0
    return 1 if a > b else -1


def sort_codes_descending(codes) -> list[str]:
    """Sort codes descending by binary value (the child-ordering rule)."""
    return sorted(codes, key=lambda c: (len(c), c), reverse=True)


def rooted_code_int(off: np.ndarray, adj: np.ndarray, n: int, root: int) -> int:
    """Integer form of the rooted canonical code for a packed tree.

    Single post-order pass: children codes are sorted descending as integers
    and concatenated by shifting, then wrapped between the leading 1 bit and
    trailing 0 bit. Exact for any n (Python integers).
    """
    parent = [-2] * n
    order = [root]
    parent[root] = -1
    head = 0
    while head < len(order):
        v = order[head]
        head += 1
        for i in range(off[v], off[v + 1]):
            u = int(adj[i])
            if parent[u] == -2:
                parent[u] = v
                order.append(u)
    code = [0] * n
    size = [1] * n
    for idx in range(len(order) - 1, -1, -1):
        v = order[idx]
        kids = [(code[u], size[u]) for u in
                (int(adj[i]) for i in range(off[v], off[v + 1])) if parent[u] == v]
        kids.sort(reverse=True)
        c = 1
        s = 1
        for kc, ks in kids:
            c = (c << (2 * ks)) | kc
            s += ks
        code[v] = c << 1
        size[v] = s
    return code[root]


def free_code_int(off: np.ndarray, adj: np.ndarray, n: int) -> int:
    """Integer canonical code of an unrooted packed tree (max over centers)."""
    best = 0
    for c in centers_packed(off, adj, n):
        v = rooted_code_int(off, adj, n, c)
        if v > best:
            best = v
    return best


def rooted_code(t: Tree) -> str:
    """Canonical code of a rooted tree; equal iff rooted-isomorphic."""
    if t.n == 0:
        raise ValueError("empty tree has no rooted code")
    if t.root is None:
        raise ValueError("tree has no root")
    off, adj = pack(t)
    return int_to_code(rooted_code_int(off, adj, t.n, t.root))


def free_code(t: Tree) -> str:
    """Canonical code of a free tree; equal iff isomorphic."""
    if t.n == 0:
        raise ValueError("empty tree has no code (the store uses the empty string)")
    off, adj = pack(t)
    return int_to_code(free_code_int(off, adj, t.n))


def validate_code(bits: str) -> None:
    """Reject strings that are not balanced codes of some rooted tree."""
    if not bits:
        raise InvalidCodeError("empty code")
    if len(bits) % 2 != 0:
        raise InvalidCodeError("code length must be even")
    depth = 0
    last = len(bits) - 1
    for i, ch in enumerate(bits):
        if ch == "1":
            depth += 1
        elif ch == "0":
            depth -= 1
            if depth < 0:
                raise InvalidCodeError("unbalanced code: closing bit without open")
            if depth == 0 and i != last:
                raise InvalidCodeError("code encodes a forest, not a single tree")
        else:
            raise InvalidCodeError(f"invalid character {ch!r} in code")
    if depth != 0:
        raise InvalidCodeError("unbalanced code: unclosed bits remain")


def decode_packed(bits: str) -> tuple[list[list[int]], int]:
    """Adjacency lists of the rooted tree encoded by ``bits`` (root is vertex 0)."""
    validate_code(bits)
    adjacency: list[list[int]] = []
    stack: list[int] = []
    for ch in bits:
        if ch == "1":
            v = len(adjacency)
            adjacency.append([])
            if stack:
                p = stack[-1]
                adjacency[p].append(v)
                adjacency[v].append(p)
            stack.append(v)
        else:
            stack.pop()
    return adjacency, len(adjacency)


def decode(bits: str) -> Tree:
    """Rebuild the rooted tree a code came from; rooted_code(decode(c)) == c."""
    adjacency, n = decode_packed(bits)
    return Tree(n, tuple(tuple(sorted(a)) for a in adjacency), root=0)

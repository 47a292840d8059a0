"""Known counts of non-isomorphic unlabeled trees per vertex count.

These are the reference values (OEIS A000055) used both as loop-control
input for the level-by-level generator and as hard correctness tripwires:
a sealed level whose record count disagrees with this table is a fatal
enumeration bug, not a warning.

n = 0 is the empty tree, which the store carries as a single sentinel
record.
"""

UNLABELED_TREE_COUNTS: dict[int, int] = {
    0: 1,
    1: 1,
    2: 1,
    3: 1,
    4: 2,
    5: 3,
    6: 6,
    7: 11,
    8: 23,
    9: 47,
    10: 106,
    11: 235,
    12: 551,
    13: 1301,
    14: 3159,
    15: 7741,
    16: 19320,
    17: 48629,
    18: 123867,
    19: 317955,
    20: 823065,
}


def cumulative(max_n: int, include_empty: bool = False) -> int:
    """Total number of trees with 1 <= n <= max_n (optionally counting n = 0)."""
    total = sum(c for n, c in UNLABELED_TREE_COUNTS.items() if 1 <= n <= max_n)
    if include_empty:
        total += UNLABELED_TREE_COUNTS[0]
    return total

"""Exact integer polynomial arithmetic and coefficient-sequence predicates.

Polynomials are plain sequences of non-negative integers, lowest degree
first; index k holds the number of independent sets of cardinality k when
the polynomial belongs to a graph. Arithmetic is exact and rejects any
coefficient beyond the declared 64-bit accumulator width instead of
wrapping, so a verification run can never silently pass on garbage.
"""

from __future__ import annotations

from typing import Sequence

from .errors import CoefficientOverflowError

# Widest coefficient the pipeline accepts; chosen to match the signed 64-bit
# lane the accelerated kernels run in. Any result beyond it raises.
COEFF_MAX = 2**63 - 1

Coeffs = tuple[int, ...]

ASCENDING = "ascending"
DESCENDING = "descending"
NEITHER = "neither"


def _checked(value: int) -> int:
    if value > COEFF_MAX:
        raise CoefficientOverflowError(
            f"coefficient {value} exceeds the 64-bit accumulator width"
        )
    return value


def mul(a: Sequence[int], b: Sequence[int]) -> Coeffs:
    """Exact product (convolution) of two coefficient sequences."""
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] = _checked(out[i + j] + _checked(ai * bj))
    return tuple(out)


def combine(p1: Sequence[int], p2: Sequence[int]) -> Coeffs:
    """p1 + x*p2, the step that reassembles a polynomial from its two branches."""
    out = [0] * max(len(p1), len(p2) + 1)
    for i, c in enumerate(p1):
        out[i] = c
    for i, c in enumerate(p2):
        out[i + 1] = _checked(out[i + 1] + c)
    return tuple(out)


def is_unimodal(p: Sequence[int]) -> bool:
    """True iff the coefficients rise weakly to some index and then fall weakly."""
    k = 0
    last = len(p) - 1
    while k < last and p[k] <= p[k + 1]:
        k += 1
    while k < last and p[k] >= p[k + 1]:
        k += 1
    return k == last or last < 0


def is_log_concave(p: Sequence[int]) -> bool:
    """True iff p[k]^2 >= p[k-1]*p[k+1] at every interior index (exact)."""
    for k in range(1, len(p) - 1):
        if p[k] * p[k] < p[k - 1] * p[k + 1]:
            return False
    return True


def is_symmetric(p: Sequence[int]) -> bool:
    """True iff the coefficient sequence reads the same in both directions."""
    return list(p) == list(reversed(p))


def _fibonacci_set(limit: int) -> set[int]:
    fibs = {1, 2}
    a, b = 2, 3
    while b <= limit:
        fibs.add(b)
        a, b = b, a + b
    return fibs


def is_fibonacci(p: Sequence[int]) -> bool:
    """True iff every coefficient is a Fibonacci number {1, 2, 3, 5, 8, 13, ...}.

    Membership only; the coefficients are not required to be consecutive
    members of the sequence.
    """
    if not p:
        return True
    fibs = _fibonacci_set(max(p))
    return all(c in fibs for c in p)


def is_monotonic(p: Sequence[int]) -> str:
    """Classify the full sequence as ascending, descending, or neither.

    Constant sequences (including length <= 1) count as both and report
    ascending.
    """
    asc = all(p[k] <= p[k + 1] for k in range(len(p) - 1))
    desc = all(p[k] >= p[k + 1] for k in range(len(p) - 1))
    if asc:
        return ASCENDING
    if desc:
        return DESCENDING
    return NEITHER


def argmax_lowest(p: Sequence[int]) -> int:
    """Smallest index attaining the maximum coefficient (lower-tie rule)."""
    if not p:
        raise ValueError("empty coefficient sequence")
    best = 0
    for k in range(1, len(p)):
        if p[k] > p[best]:
            best = k
    return best


def serialize(p: Sequence[int]) -> str:
    """Comma-separated decimal coefficients, lowest degree first."""
    return ",".join(str(c) for c in p)


def deserialize(text: str) -> Coeffs:
    if text == "":
        return ()
    return tuple(int(f) for f in text.split(","))

"""The five reference structures used throughout the docs and tests.

T1   trivial one-element structure
LZ2  left-zero on two elements (x*y = x), discrete order
RZ2  right-zero on two elements (x*y = y), discrete order
N2   null semigroup {0, a} (all products 0) with 0 <= a; a is index 1
SL2  two-chain meet semilattice, 0 <= 1
"""

from __future__ import annotations

from .core import OrderedSemigroup, validate


def _build(order: int, table, pairs) -> OrderedSemigroup:
    leq = [[i == j for j in range(order)] for i in range(order)]
    for i, j in pairs:
        leq[i][j] = True
    return validate(order, table, leq)


T1 = _build(1, [[0]], [])
LZ2 = _build(2, [[0, 0], [1, 1]], [])
RZ2 = _build(2, [[0, 1], [0, 1]], [])
N2 = _build(2, [[0, 0], [0, 0]], [(0, 1)])
SL2 = _build(2, [[0, 0], [0, 1]], [(0, 1)])

FIXTURES: dict[str, OrderedSemigroup] = {
    "T1": T1,
    "LZ2": LZ2,
    "RZ2": RZ2,
    "N2": N2,
    "SL2": SL2,
}

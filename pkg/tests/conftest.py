"""Shared fixtures: small example functions used across the test modules."""
from __future__ import annotations

import pytest

# The 3-line function of the running example, read as naturals.
EXAMPLE = [0, 1, 2, 4, 5, 3, 7, 6]

# Single-target cascade realising EXAMPLE: (target line, {line: polarity}).
EXAMPLE_GATES = [
    (0, {1: 0}),
    (1, {0: 0, 2: 0}),
    (2, {1: 1}),
    (1, {0: 0}),
    (0, {1: 0}),
]

# A function whose first line is fixed by one input-side gate.
ONE_GATE = [1, 0, 3, 4, 7, 6, 5, 2]

# Partial specification on 3 lines.
PARTIAL_ROWS = [(0, 2), (2, 4), (3, 3), (4, 0), (5, 6)]


def rows3(spec):
    """Rows given as (x1, x2x3, y1, y2y3) tuples to (input, output) words."""
    return [((a << 2) | b, (c << 2) | d) for a, b, c, d in spec]


# Line 1 has only cycles of length one.
ONE_CYCLES = rows3([(0, 3, 0, 0), (1, 1, 0, 3), (1, 2, 0, 2), (1, 3, 0, 1),
                (0, 1, 1, 0), (0, 2, 1, 3), (0, 0, 1, 2), (1, 0, 1, 1)])

# Line 1 has a cycle of length two.
TWO_CYCLES = rows3([(0, 0, 0, 0), (0, 1, 0, 2), (0, 2, 0, 1), (1, 1, 0, 3),
                (0, 3, 1, 2), (1, 0, 1, 0), (1, 2, 1, 3), (1, 3, 1, 1)])


def bits(word, n):
    return [(word >> (n - 1 - i)) & 1 for i in range(n)]


def cube_fn(layout, lits, side="x"):
    """Product of literals ``{line: polarity}`` over the x (or y) variables."""
    f = layout.forest
    vs = layout.x if side == "x" else layout.y
    out = f.true
    for line, pol in lits.items():
        out = out & (f.var(vs[line]) if pol else f.nvar(vs[line]))
    return out


@pytest.fixture
def example():
    from revsynth.charfn import from_permutation
    return from_permutation(EXAMPLE)

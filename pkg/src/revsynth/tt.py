"""Explicit truth-table decomposition by cycle filling.

This is the exponential reference path: every line is equalised by
walking the input/output pairing cycles of the table.  It serves as an
independent oracle for the symbolic engine on small functions.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

from .charfn import MAX_TABLE_LINES, Layout
from .circuit import Circuit, SingleTargetGate


class TruthTableError(ValueError):
    pass


@dataclass(frozen=True)
class TruthTable:
    """Input word -> output word.  ``rows`` maps every specified input."""

    n: int
    rows: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        if not 1 <= self.n <= MAX_TABLE_LINES:
            raise TruthTableError(f"truth tables support 1..{MAX_TABLE_LINES} lines, got {self.n}")
        rows = tuple(sorted(self.rows))
        object.__setattr__(self, "rows", rows)
        limit = 1 << self.n
        ins = set()
        outs = set()
        for x, y in rows:
            if not (0 <= x < limit and 0 <= y < limit):
                raise TruthTableError(f"row {x}->{y} out of range for {self.n} lines")
            if x in ins:
                raise TruthTableError(f"input {x:0{self.n}b} appears twice")
            if y in outs:
                raise TruthTableError(f"output {y:0{self.n}b} appears twice")
            ins.add(x)
            outs.add(y)

    @classmethod
    def from_permutation(cls, image: Sequence[int]) -> "TruthTable":
        n = len(image).bit_length() - 1
        if len(image) != 1 << n:
            raise TruthTableError(f"length {len(image)} is not a power of two")
        return cls(n, tuple(enumerate(image)))

    def items(self) -> Iterator[Tuple[int, int]]:
        return iter(self.rows)

    def is_total(self) -> bool:
        return len(self.rows) == 1 << self.n

    def permutation(self) -> List[int]:
        if not self.is_total():
            raise TruthTableError("partial table has no permutation")
        return [y for _, y in self.rows]


def _bit(word: int, line: int, n: int) -> int:
    return (word >> (n - 1 - line)) & 1


def _rest(word: int, line: int, n: int) -> Tuple[Tuple[int, int], ...]:
    return tuple((j, _bit(word, j, n)) for j in range(n) if j != line)


def equalize_variable(table: TruthTable, line: int):
    """Equalise ``line`` of a total table.

    Returns ``(l, r, table')`` where ``l`` and ``r`` are the cubes (tuples
    of ``(line, bit)`` over the other lines) on which the left and right
    gate fire, and ``table'`` maps ``line`` to itself on every row.

    Cycles that contain no row with a differing ``line`` are left as they
    are.  Any other cycle is entered at its smallest unfilled row with the
    value 1.
    """
    if not table.is_total():
        raise TruthTableError("truth-table decomposition needs a total table")
    n = table.n
    if not 0 <= line < n:
        raise TruthTableError(f"line {line} out of range")
    f = table.permutation()
    finv = [0] * len(f)
    for a, b in enumerate(f):
        finv[b] = a
    m = 1 << (n - 1 - line)
    size = 1 << n
    xnew: List[Optional[int]] = [None] * size  # per row (indexed by input)

    for a in range(size):
        if xnew[a] is not None:
            continue
        # rows of the cycle through a: input partner, then output partner
        rows = [a]
        cur = a
        while True:
            partner = cur ^ m
            rows.append(partner)
            cur = finv[f[partner] ^ m]
            if cur == a:
                break
            rows.append(cur)
        changing = any((r ^ f[r]) & m for r in rows)
        v = 1 if changing else int(bool(a & m))
        # consecutive rows are partners, so their values must differ
        for k, r in enumerate(rows):
            xnew[r] = v if k % 2 == 0 else 1 - v

    l_words = set()
    r_words = set()
    rows_out = []
    for a in range(size):
        v = m if xnew[a] else 0
        b = f[a]
        if a & m != v:
            l_words.add(a & ~m)
        if b & m != v:
            r_words.add(b & ~m)
        rows_out.append(((a & ~m) | v, (b & ~m) | v))
    l = sorted(_rest(w, line, n) for w in l_words)
    r = sorted(_rest(w, line, n) for w in r_words)
    return l, r, TruthTable(n, tuple(rows_out))


def cubes_to_control(cubes, layout: Layout):
    """Disjunction of full cubes over the other lines."""
    cubes = list(cubes)
    if not cubes:
        return layout.forest.false
    lines = [j for j, _ in cubes[0]]
    return layout.forest.from_minterms([layout.x[j] for j in lines],
                                       [[b for _, b in cube] for cube in cubes])


def synthesize_tt(table: TruthTable, layout: Optional[Layout] = None) -> Circuit:
    """Single-target circuit for a total table, lines equalised in natural order."""
    if not table.is_total():
        raise TruthTableError("truth-table synthesis needs a total table")
    n = table.n
    layout = layout or Layout(n)
    left: List[SingleTargetGate] = []
    right: List[SingleTargetGate] = []
    for i in range(n):
        l, r, table = equalize_variable(table, i)
        if l:
            left.append(SingleTargetGate(i, cubes_to_control(l, layout), layout))
        if r:
            right.append(SingleTargetGate(i, cubes_to_control(r, layout), layout))
    return Circuit(n, left + right[::-1])

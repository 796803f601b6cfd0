import itertools
import random

import pytest

from conftest import EXAMPLE, EXAMPLE_GATES
from revsynth.circuit import expand, simulate_all
from revsynth.tt import TruthTable, TruthTableError, equalize_variable, synthesize_tt


def st(cubes, n, line):
    """Apply-a-gate helper for cube lists from ``equalize_variable``."""
    words = set()
    for cube in cubes:
        w = 0
        for j, b in cube:
            w |= b << (n - 1 - j)
        words.add(w)
    m = 1 << (n - 1 - line)
    return lambda x: x ^ m if (x & ~m) in words else x


def test_example_first_line():
    l, r, t2 = equalize_variable(TruthTable.from_permutation(EXAMPLE), 0)
    nx2 = [((1, 0), (2, 0)), ((1, 0), (2, 1))]
    assert l == nx2 and r == nx2
    L, R = st(l, 3, 0), st(r, 3, 0)
    assert t2.permutation() == [R(EXAMPLE[L(x)]) for x in range(8)]
    assert all(((x ^ y) & 0b100) == 0 for x, y in t2.items())
    l, r, _ = equalize_variable(t2, 1)
    assert l == [((0, 0), (2, 0))]
    assert r == [((0, 0), (2, 0)), ((0, 0), (2, 1))]


def test_identity_table():
    t = TruthTable.from_permutation(list(range(8)))
    for i in range(3):
        l, r, t2 = equalize_variable(t, i)
        assert l == [] and r == [] and t2 == t
    assert len(synthesize_tt(t)) == 0


def test_example_gates():
    c = expand(synthesize_tt(TruthTable.from_permutation(EXAMPLE)))
    assert [(g.target, dict(g.controls)) for g in c.gates] == EXAMPLE_GATES


def test_all_two_line_permutations():
    for p in itertools.permutations(range(4)):
        c = synthesize_tt(TruthTable.from_permutation(list(p)))
        assert simulate_all(c) == list(p)
        assert len(c) <= 3


@pytest.mark.parametrize("n,count", [(3, 500), (4, 100), (5, 30), (6, 10)])
def test_random_tables(n, count):
    rng = random.Random(n)
    for _ in range(count):
        p = list(range(1 << n))
        rng.shuffle(p)
        c = synthesize_tt(TruthTable.from_permutation(p))
        assert simulate_all(c) == p
        assert len(c) <= 2 * n - 1


def test_equalized_line_stays_put():
    rng = random.Random(7)
    p = list(range(32))
    rng.shuffle(p)
    t = TruthTable.from_permutation(p)
    for i in range(5):
        _, _, t = equalize_variable(t, i)
        for j in range(i + 1):
            m = 1 << (4 - j)
            assert all((x & m) == (y & m) for x, y in t.items())
    assert t.permutation() == list(range(32))


def test_table_validation():
    with pytest.raises(TruthTableError):
        TruthTable(2, ((0, 1), (1, 1)))
    with pytest.raises(TruthTableError):
        TruthTable(2, ((0, 4),))
    with pytest.raises(TruthTableError):
        TruthTable.from_permutation([0, 1, 2])
    with pytest.raises(TruthTableError):
        synthesize_tt(TruthTable(2, ((0, 1),)))
    with pytest.raises(TruthTableError):
        TruthTable(2, ((0, 1),)).permutation()

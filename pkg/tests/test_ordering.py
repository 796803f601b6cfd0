import random

import pytest

from conftest import EXAMPLE
from revsynth.charfn import from_permutation, generator, identity
from revsynth.ordering import choose, mismatch_count, next_line, toffoli_count
from revsynth.synth import SynthesisOptions, decompose_variable


def test_natural():
    assert next_line("natural", identity(3), {1, 2, 0}) == 0
    assert next_line("natural", identity(3), {2, 1}) == 1


def test_hamming():
    assert next_line("hamming", identity(3), {0, 1, 2}) == 0
    inv = generator("invert", 4)
    assert [mismatch_count(inv, i) for i in range(4)] == [16] * 4
    assert next_line("hamming", inv, {3, 1, 2}) == 1
    F = from_permutation(EXAMPLE)
    counts = [mismatch_count(F, i) for i in range(3)]
    # rows whose bit i changes, counted directly
    want = [sum(1 for x, y in enumerate(EXAMPLE) if (x ^ y) >> (2 - i) & 1) for i in range(3)]
    assert counts == want
    assert next_line("hamming", F, {0, 1, 2}) == min(range(3), key=lambda i: (want[i], i))


def test_greedy_picks_cheapest():
    rng = random.Random(1)
    for _ in range(20):
        p = list(range(32))
        rng.shuffle(p)
        F = from_permutation(p)
        costs = []
        for i in range(5):
            res, _ = decompose_variable(F, i)
            costs.append(toffoli_count(res.l, res.r, F.layout))
        best = min(range(5), key=lambda i: (costs[i], i))
        assert next_line("greedy", F, range(5)) == best
        res, F2 = choose("greedy", F, range(5), SynthesisOptions())
        assert res.line == best and F2.line_is_identity(best)


def test_greedy_quantum_cost_model():
    F = from_permutation(EXAMPLE)
    i = next_line("greedy", F, range(3), "ncv-v1")
    assert i in range(3)


def test_unknown():
    with pytest.raises(ValueError):
        next_line("random", identity(2), {0})
    with pytest.raises(ValueError):
        next_line("natural", identity(2), set())

import itertools
import random

import pytest

from revsynth.bdd import AND, OR, XNOR, XOR, BddError, Forest

NV = 5
ASSIGNMENTS = list(itertools.product((0, 1), repeat=NV))


def table_fn(f, table):
    """BDD of a truth table given as a set of satisfying assignments."""
    return f.from_minterms(list(range(NV)), sorted(table))


def truth(f, g):
    return {a for a in ASSIGNMENTS if f.evaluate(g, dict(enumerate(a)))}


def random_table(rng):
    return {a for a in ASSIGNMENTS if rng.random() < 0.5}


@pytest.fixture
def forest():
    return Forest(NV)


def test_projection_and_canonicity(forest):
    x0 = forest.mk_var(0)
    assert forest.evaluate(x0, {0: 1}) == 1
    assert forest.evaluate(x0, {0: 0}) == 0
    assert forest.mk_var(0) == x0
    assert forest.var(1) & forest.var(2) == forest.var(2) & forest.var(1)


def test_small_apply_examples(forest):
    x1, x2 = forest.var(1), forest.var(2)
    assert forest.apply(XOR, x1, x1).is_false()
    a = forest.apply(AND, x1, x2)
    for u, v in itertools.product((0, 1), repeat=2):
        assert forest.evaluate(a, {1: u, 2: v}) == (u & v)
    with pytest.raises(BddError):
        forest.apply("NAND", x1, x2)


OPS = {AND: lambda a, b: a & b, OR: lambda a, b: a | b,
       XOR: lambda a, b: a ^ b, XNOR: lambda a, b: 1 - (a ^ b)}


def test_apply_matches_truth_tables(forest):
    rng = random.Random(1)
    for _ in range(60):
        ta, tb = random_table(rng), random_table(rng)
        fa, fb = table_fn(forest, ta), table_fn(forest, tb)
        assert truth(forest, fa) == ta
        for op, fn in OPS.items():
            want = {a for a in ASSIGNMENTS if fn(a in ta, a in tb)}
            got = forest.apply(op, fa, fb)
            assert truth(forest, got) == want
            assert got == table_fn(forest, want)


def test_complement(forest):
    assert forest.complement(forest.true).is_false()
    rng = random.Random(2)
    for _ in range(20):
        t = random_table(rng)
        g = table_fn(forest, t)
        assert forest.complement(forest.complement(g)) == g
        assert truth(forest, ~g) == set(ASSIGNMENTS) - t
    c = forest.complement(forest.var(1) & forest.var(2))
    for u, v in itertools.product((0, 1), repeat=2):
        assert forest.evaluate(c, {1: u, 2: v}) == 1 - (u & v)


def test_ite(forest):
    rng = random.Random(3)
    for _ in range(30):
        ts = [random_table(rng) for _ in range(3)]
        a, b, c = (table_fn(forest, t) for t in ts)
        want = {s for s in ASSIGNMENTS if (s in ts[1]) if s in ts[0]} | \
               {s for s in ASSIGNMENTS if s not in ts[0] and s in ts[2]}
        assert truth(forest, forest.ite(a, b, c)) == want


def test_cofactor(forest):
    x1, x2 = forest.var(1), forest.var(2)
    assert forest.cofactor(x1 & x2, 1, 1) == x2
    assert forest.cofactor(x1 & x2, 1, 0).is_false()
    rng = random.Random(4)
    for _ in range(30):
        t = random_table(rng)
        g = table_fn(forest, t)
        v, b = rng.randrange(NV), rng.randrange(2)
        got = forest.cofactor(g, v, b)
        assert v not in forest.support(got)
        for a in ASSIGNMENTS:
            s = list(a)
            s[v] = b
            assert forest.evaluate(got, dict(enumerate(a))) == (tuple(s) in t)


def test_cofactor_cube(forest):
    rng = random.Random(5)
    for _ in range(30):
        g = table_fn(forest, random_table(rng))
        assign = {v: rng.randrange(2) for v in rng.sample(range(NV), 3)}
        want = g
        for v, b in assign.items():
            want = forest.cofactor(want, v, b)
        assert forest.cofactor_cube(g, assign) == want


def test_smooth_and_forall(forest):
    x1, x2 = forest.var(1), forest.var(2)
    assert forest.smooth(x1 ^ x2, {1}).is_true()
    assert forest.smooth(x1 & x2, {1}) == x2
    rng = random.Random(6)
    for _ in range(30):
        t = random_table(rng)
        g = table_fn(forest, t)
        vs = set(rng.sample(range(NV), 2))
        ex, fa = forest.smooth(g, vs), forest.forall(g, vs)
        for a in ASSIGNMENTS:
            variants = []
            for bits in itertools.product((0, 1), repeat=len(vs)):
                s = list(a)
                for v, b in zip(sorted(vs), bits):
                    s[v] = b
                variants.append(tuple(s) in t)
            env = dict(enumerate(a))
            assert forest.evaluate(ex, env) == any(variants)
            assert forest.evaluate(fa, env) == all(variants)


def test_smooth_drops_output_block():
    # x1 x2' x3 y1 y2 y3' with x on 0..2 and y on 3..5
    f = Forest(6)
    lits = [(0, 1), (1, 0), (2, 1), (3, 1), (4, 1), (5, 0)]
    c = f.cube(dict(lits))
    assert f.smooth(c, {3, 4, 5}) == f.cube(dict(lits[:3]))


def test_and_exists(forest):
    rng = random.Random(7)
    for _ in range(30):
        a = table_fn(forest, random_table(rng))
        b = table_fn(forest, random_table(rng))
        vs = set(rng.sample(range(NV), 3))
        assert forest.and_exists(a, b, vs) == forest.smooth(a & b, vs)


def test_compose(forest):
    x1, x2 = forest.var(1), forest.var(2)
    rng = random.Random(8)
    g = table_fn(forest, random_table(rng))
    assert forest.compose(x1, 1, g) == g
    assert forest.compose(x1 & x2, 2, forest.true) == x1
    for _ in range(30):
        ft = random_table(rng)
        gt = random_table(rng)
        fb, gb = table_fn(forest, ft), table_fn(forest, gt)
        v = rng.randrange(NV)
        got = forest.compose(fb, v, gb)
        for a in ASSIGNMENTS:
            s = list(a)
            s[v] = int(a in gt)
            assert forest.evaluate(got, dict(enumerate(a))) == (tuple(s) in ft)


def test_xor_substitute(forest):
    rng = random.Random(9)
    for _ in range(40):
        ft = random_table(rng)
        fb = table_fn(forest, ft)
        v1, v2 = rng.sample(range(NV), 2)
        c1 = forest.smooth(table_fn(forest, random_table(rng)), {v1, v2})
        c2 = forest.smooth(table_fn(forest, random_table(rng)), {v1, v2})
        single = forest.xor_substitute(fb, v1, c1)
        assert single == forest.compose(fb, v1, forest.var(v1) ^ c1)
        pair = forest.xor_substitute_pair(fb, v1, c1, v2, c2)
        for a in ASSIGNMENTS:
            env = dict(enumerate(a))
            s = list(a)
            s[v1] ^= forest.evaluate(c1, env)
            s[v2] ^= forest.evaluate(c2, env)
            assert forest.evaluate(pair, env) == (tuple(s) in ft)
    with pytest.raises(BddError):
        forest.xor_substitute(forest.var(0), 0, forest.var(0))
    with pytest.raises(BddError):
        forest.xor_substitute_pair(forest.var(0), 0, forest.true, 0, forest.true)


def test_intersects(forest):
    rng = random.Random(10)
    for _ in range(50):
        a = table_fn(forest, random_table(rng))
        b = table_fn(forest, {s for s in ASSIGNMENTS if rng.random() < 0.1})
        assert forest.intersects(a, b) == (not (a & b).is_false())


def test_from_minterms_and_cube(forest):
    g = forest.from_minterms([0, 2], [(0, 1), (1, 0)])
    assert g == (~forest.var(0) & forest.var(2)) | (forest.var(0) & ~forest.var(2))
    assert forest.from_minterms([0, 1], []).is_false()
    assert forest.cube({}).is_true()


def test_count_minterms():
    f = Forest(6)
    assert f.count_minterms(f.true, {0, 1, 2}) == 8
    assert f.count_minterms(f.var(1) ^ f.var(2), {1, 2}) == 2
    assert f.count_minterms(f.var(1), {1, 2, 3}) == 4
    rng = random.Random(11)
    for _ in range(20):
        t = random_table(rng)
        assert f.count_minterms(f.from_minterms(list(range(NV)), sorted(t)),
                                range(NV)) == len(t)


def test_count_minterms_of_example(example):
    lay = example.layout
    assert example.forest.count_minterms(example.F, lay.xs | lay.ys) == 8


def test_pick_minterm(forest):
    x1, x2 = forest.var(1), forest.var(2)
    assert forest.pick_minterm(forest.true, {1, 2}) == {1: 0, 2: 0}
    assert forest.pick_minterm(x1 | x2, {1, 2}) == {1: 0, 2: 1}
    with pytest.raises(BddError):
        forest.pick_minterm(forest.false, {1, 2})
    rng = random.Random(12)
    for _ in range(30):
        t = random_table(rng)
        if not t:
            continue
        g = table_fn(forest, t)
        m = forest.pick_minterm(g, range(NV))
        assert tuple(m[v] for v in range(NV)) == min(t)
        c = forest.cube(m)
        assert c & g == c


def test_find_minterm_fixed(forest):
    rng = random.Random(13)
    for _ in range(30):
        t = random_table(rng)
        g = table_fn(forest, t)
        fixed = {0: 1, 3: 0}
        m = forest.find_minterm(g, range(NV), fixed)
        cands = [a for a in t if a[0] == 1 and a[3] == 0]
        if not cands:
            assert m is None
        else:
            assert tuple(m[v] for v in range(NV)) == min(cands)


def test_paths(forest):
    rng = random.Random(14)
    for _ in range(30):
        t = random_table(rng)
        g = table_fn(forest, t)
        paths = list(forest.iter_paths(g))
        assert len(paths) == forest.count_paths(g)
        hist = {}
        for p in paths:
            hist[len(p)] = hist.get(len(p), 0) + 1
        assert forest.path_length_counts(g) == hist
        # disjoint cubes covering exactly the on-set
        covered = []
        for p in paths:
            covered.extend(a for a in ASSIGNMENTS if all(a[v] == b for v, b in p.items()))
        assert sorted(covered) == sorted(t)
    assert list(forest.iter_paths(forest.false)) == []
    assert list(forest.iter_paths(forest.true)) == [{}]


def test_rename_and_support(forest):
    g = forest.var(0) & ~forest.var(1)
    h = forest.rename(g, {0: 3, 1: 4})
    assert h == forest.var(3) & ~forest.var(4)
    assert forest.support(h) == frozenset({3, 4})


def test_variable_range_checked(forest):
    with pytest.raises(BddError):
        forest.var(NV)

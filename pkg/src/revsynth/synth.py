"""Symbolic decomposition of reversible functions into single-target gates.

Each line ``i`` is equalised by a pair of gates so that
``f = T[l, i] . f' . T[r, i]`` (read left to right) where ``f'`` passes line
``i`` through unchanged.  After all lines are processed the remaining
function is the identity and the gates form a V-shaped cascade.

Everything works on the characteristic function ``F(x, y)``; no truth table
is ever built.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .bdd import BddFunction
from .charfn import CharFn
from .circuit import DEFAULT_COST_MODEL, Circuit, SingleTargetGate

ORDERINGS = ("natural", "greedy", "hamming")

# Drop operation caches once they hold this many entries.
CACHE_LIMIT = 1 << 20

# Walk cycles on an explicit row table when F has at most this many rows.
EXPLICIT_ROWS = 1 << 16


class SynthesisError(ValueError):
    """The input cannot be synthesised (not reversible, not injective, ...)."""


class InternalError(RuntimeError):
    """An invariant of the algorithm was violated.  Always a bug."""


@dataclass(frozen=True)
class SynthesisOptions:
    ordering: str = "natural"
    enable_single_gate_shortcut: bool = True
    enable_small_cycles: bool = True
    rng_seed: int = 0
    cost_model: str = DEFAULT_COST_MODEL

    def __post_init__(self):
        if self.ordering not in ORDERINGS:
            raise SynthesisError(f"unknown ordering {self.ordering!r}")


@dataclass(frozen=True)
class DecompositionResult:
    """Controls of the left and right gate on ``line``, both over x variables."""

    l: BddFunction
    r: BddFunction
    line: int


def _apply_pair(F: CharFn, i: int, l: BddFunction, r: BddFunction) -> CharFn:
    """``f <- T[l, i] . f . T[r, i]``; ``r`` is over x variables."""
    return F.apply_gate_pair(i, l, r)


def _pick(pool: BddFunction, over, rng: Optional[random.Random]) -> Dict[int, int]:
    f = pool.forest
    if rng is None:
        return f.pick_minterm(pool, over)
    order = sorted(over)
    prefer = {v: rng.getrandbits(1) for v in order}
    return f.pick_minterm(pool, order, prefer)


# ------------------------------------------------------------ cycle walking

def resolve_cycle(F: CharFn, i: int, start: Dict[int, int],
                  rng: Optional[random.Random] = None,
                  reverse: bool = False,
                  keep: Optional[BddFunction] = None) -> Tuple[BddFunction, BddFunction, CharFn]:
    """Walk one cycle from ``start`` and collect its gate cubes.

    Forward mode starts at a row ``x_i = 1 -> y_i = 0``.  Input steps move to
    the row with the same other inputs and ``x_i = 0``, output steps to the
    row with the same other outputs and ``y_i = 1``.  The walk stops at the
    first row where ``x_i != y_i``.  Reverse mode starts at a row
    ``x_i = 0 -> y_i = 1`` with an output step and mirrors both targets.

    Returns ``(l', r', F)`` with ``r'`` still over y variables.  ``F`` only
    differs from the argument when a step needs an unspecified row; then
    ``rng`` must be given and the row is added (partial functions).  Added
    rows satisfy ``keep``, which callers use to leave already equalised
    lines alone.
    """
    lay, f = F.layout, F.forest
    xi, yi = lay.x[i], lay.y[i]
    over = lay.xs | lay.ys
    G = F.F
    keep = f.true if keep is None else keep
    if not f.evaluate(G, start):
        raise InternalError("start row is not a row of the function")
    in_target = 1 if reverse else 0
    out_target = 0 if reverse else 1
    lcubes = []
    rcubes = []
    c = start
    d = 1 if reverse else 0
    # a walk visits every row at most once
    for _ in range((2 << F.n) + 4):
        if d == 0:
            rest = {v: c[v] for v in lay.x if v != xi}
            lcubes.append(rest)
            fixed = dict(rest)
            fixed[xi] = in_target
            nc = f.find_minterm(G, over, fixed)
            if nc is None:
                if rng is None:
                    raise SynthesisError("function is not total: missing input row")
                # new row: prefer an output that closes the cycle here
                free = f.cofactor_cube(keep, fixed) & ~f.smooth(G, lay.xs)
                pool = free & (f.var(yi) if 1 - in_target else f.nvar(yi))
                if pool.is_false():
                    pool = free
                if pool.is_false():
                    raise InternalError("no unspecified output left for completion")
                nc = dict(fixed)
                nc.update(_pick(pool, lay.ys, rng))
                G = G | f.cube(nc)
        else:
            rest = {v: c[v] for v in lay.y if v != yi}
            rcubes.append(rest)
            fixed = dict(rest)
            fixed[yi] = out_target
            nc = f.find_minterm(G, over, fixed)
            if nc is None:
                if rng is None:
                    raise SynthesisError("function is not total: missing output row")
                free = f.cofactor_cube(keep, fixed) & ~f.smooth(G, lay.ys)
                pool = free & (f.var(xi) if 1 - out_target else f.nvar(xi))
                if pool.is_false():
                    pool = free
                if pool.is_false():
                    raise InternalError("no unspecified input left for completion")
                nc = dict(fixed)
                nc.update(_pick(pool, lay.xs, rng))
                G = G | f.cube(nc)
        c = nc
        d = 1 - d
        if c[xi] != c[yi]:
            lp = f.false
            for cube in lcubes:
                lp = lp | f.cube(cube)
            rp = f.false
            for cube in rcubes:
                rp = rp | f.cube(cube)
            return lp, rp, F.with_function(G)
    raise InternalError("cycle walk did not close")


def _row_words(F: CharFn):
    """Paths of ``F`` as ``(input word, output word, literal count)``.

    Paths come out in lexicographic variable order; free variables read 0.
    """
    lay, f = F.layout, F.forest
    n = F.n
    bit: Dict[int, Tuple[int, int]] = {}
    for j in range(n):
        bit[lay.x[j]] = (1 << (n - 1 - j), 0)
        bit[lay.y[j]] = (0, 1 << (n - 1 - j))
    var, lo, hi = f._var, f._lo, f._hi
    stack = [(f._node(F.F), 0, 0, 0)]
    while stack:
        u, x, y, k = stack.pop()
        if u <= 1:
            if u:
                yield x, y, k
            continue
        bx, by = bit[var[u]]
        stack.append((hi[u], x | bx, y | by, k + 1))
        stack.append((lo[u], x, y, k + 1))


def fill_cycles(F: CharFn, i: int) -> Tuple[BddFunction, BddFunction]:
    """Resolve every remaining cycle of a total ``F`` on line ``i`` at once.

    Rows are linked to their input partner (same other inputs) and their
    output partner (same other outputs); these links form closed cycles in
    which the new common value of ``x_i`` and ``y_i`` must alternate.  Each
    cycle that contains a row ``x_i = 1 -> y_i = 0`` is walked once, and
    the row with the smallest input word receives the value 1.  Nothing is
    applied in between, so ``F`` is rebuilt once per line instead of once
    per cycle.

    Rows are looked up in the BDD, or in a table read off its paths when
    ``F`` has at most ``EXPLICIT_ROWS`` of them.  Both give the same result.

    Returns ``(l, r)`` with ``r`` over x variables.
    """
    lay, f = F.layout, F.forest
    n = F.n
    xi, yi = lay.x[i], lay.y[i]
    m = 1 << (n - 1 - i)
    G = F.F

    def word(c, vs):
        w = 0
        for v in vs:
            w = (w << 1) | c[v]
        return w

    def cube(w, vs):
        return {v: (w >> (n - 1 - j)) & 1 for j, v in enumerate(vs)}

    # paths of a bijection's characteristic function are full minterms,
    # and they come out in lexicographic order
    if f.count_paths(G) <= EXPLICIT_ROWS:
        fwd: Dict[int, int] = {}
        bwd: Dict[int, int] = {}
        starts = []
        for x, y, k in _row_words(F):
            if k != 2 * n:
                raise SynthesisError("function is not total: row with free variables")
            fwd[x] = y
            bwd[y] = x
            if x & m and not y & m:
                starts.append((x, y))
        if len(fwd) != 1 << n:
            raise SynthesisError("function is not total: missing row")
        image, preimage = fwd.__getitem__, bwd.__getitem__
    else:
        order = sorted(lay.xs | lay.ys)
        allowed = frozenset(order)
        g = f._node(G)

        def image(x):
            c = f._find(g, order, allowed, cube(x, lay.x), {})
            if c is None:
                raise SynthesisError("function is not total: missing row")
            return word(c, lay.y)

        def preimage(y):
            c = f._find(g, order, allowed, cube(y, lay.y), {})
            if c is None:
                raise SynthesisError("function is not total: missing row")
            return word(c, lay.x)

        starts = ((word(c, lay.x), word(c, lay.y))
                  for c in f.iter_paths(G & f.var(xi) & f.nvar(yi)))

    lset = set()
    rset = set()
    seen = set()
    for a in starts:
        if a[0] in seen:
            continue
        x, y = a
        rows = []
        for _ in range((2 << n) + 2):
            # input step, then output step; consecutive rows alternate
            seen.add(x)
            rows.append((x, y))
            x ^= m
            y = image(x)
            seen.add(x)
            rows.append((x, y))
            y ^= m
            x = preimage(y)
            if x == a[0]:
                break
        else:
            raise InternalError("cycle did not close")
        # the row with the smallest input gets the value 1, as in the
        # truth-table engine
        first = min(range(len(rows)), key=lambda k: rows[k][0])
        for k, (x, y) in enumerate(rows):
            val = (k - first + 1) & 1
            if bool(x & m) != val:
                lset.add(x & ~m)
            if bool(y & m) != val:
                rset.add(y & ~m)

    rest = [j for j in range(n) if j != i]
    xrest = [lay.x[j] for j in rest]

    def build(words):
        return f.from_minterms(xrest, [[(w >> (n - 1 - j)) & 1 for j in rest] for w in words])

    return build(lset), build(rset)


# --------------------------------------------------------- special cases

SHORTCUT_PROBES = 8
# below this many lines the full check is cheaper than probing
PROBE_MIN_LINES = 6


def _shortcut_refuted(F: CharFn, i: int) -> Tuple[bool, bool]:
    """Cheap exact refutation of the single-gate check on either side.

    An input-side gate can only work if the two rows that differ just in
    ``x_i`` disagree on ``y_i``; the output side needs the mirrored
    property.  A few fixed probe rows usually find a witness against both.
    """
    lay, f = F.layout, F.forest
    xi, yi = lay.x[i], lay.y[i]
    order = sorted(lay.xs | lay.ys)
    allowed = frozenset(order)
    g = f._node(F.F)
    xrest = [v for v in lay.x if v != xi]
    yrest = [v for v in lay.y if v != yi]
    rng = random.Random(f"probe:{F.n}:{i}")
    no_in = no_out = False
    for _ in range(SHORTCUT_PROBES):
        bits = [rng.getrandbits(1) for _ in xrest]
        if not no_in:
            a = f._find(g, order, allowed, {**dict(zip(xrest, bits)), xi: 0}, {})
            b = f._find(g, order, allowed, {**dict(zip(xrest, bits)), xi: 1}, {})
            no_in = a is not None and b is not None and a[yi] == b[yi]
        if not no_out:
            a = f._find(g, order, allowed, {**dict(zip(yrest, bits)), yi: 0}, {})
            b = f._find(g, order, allowed, {**dict(zip(yrest, bits)), yi: 1}, {})
            no_out = a is not None and b is not None and a[xi] == b[xi]
        if no_in and no_out:
            break
    return no_in, no_out


def shortcut_single_gate(F: CharFn, i: int) -> Optional[Tuple[str, BddFunction]]:
    """Check whether one gate on line ``i`` equalises it.

    Returns ``("input", l)`` or ``("output", r)`` with the control over x
    variables, or ``None``.  Only defined for total reversible ``F``.

    The control is read off the rows that change, ``F xor F'``; the plain
    conjunction of ``F`` and ``F'`` would give the rows that stay, i.e. the
    complement of the wanted control.
    """
    lay, f = F.layout, F.forest
    xi, yi = lay.x[i], lay.y[i]
    eq = f.var(xi).equiv(f.var(yi))
    no_in = no_out = False
    if F.n >= PROBE_MIN_LINES:
        no_in, no_out = _shortcut_refuted(F, i)
    # input side: overwrite x_i by y_i and see whether every input survives
    Fx = None if no_in else f.smooth(F.F, [xi])
    if Fx is not None and f.and_exists(Fx, eq, lay.ys).is_true():
        l = f.smooth(F.F ^ (Fx & eq), lay.ys | {xi})
        return "input", l
    Fy = None if no_out else f.smooth(F.F, [yi])
    if Fy is not None and f.and_exists(Fy, eq, lay.xs).is_true():
        r = f.smooth(F.F ^ (Fy & eq), lay.xs | {yi})
        return "output", lay.control_to_x(r)
    return None


def resolve_1cycles(F: CharFn, i: int) -> Tuple[BddFunction, BddFunction, CharFn]:
    """Resolve all cycles of length 1 at once.

    The left control is applied first and the right one is computed on the
    updated function.  Returns ``(l', r', F')`` with ``r'`` over x.
    """
    lay, f = F.layout, F.forest
    q = F.cofactors(i)
    l = f.smooth(q.p_inner, lay.ys) & f.smooth(q.n_inner, lay.ys)
    F = _apply_pair(F, i, l, f.false)
    q = F.cofactors(i)
    r = f.smooth(q.p_inner, lay.xs) & f.smooth(q.n_inner, lay.xs)
    r = lay.control_to_x(r)
    F = _apply_pair(F, i, f.false, r)
    return l, r, F


def _two_cycle_controls(F: CharFn, outer: BddFunction, a: BddFunction,
                        b: BddFunction) -> Tuple[BddFunction, BddFunction]:
    lay, f = F.layout, F.forest
    g = outer & f.smooth(a, lay.ys) & f.smooth(b, lay.xs)
    return f.smooth(g, lay.ys), lay.control_to_x(f.smooth(g, lay.xs))


def resolve_2cycles(F: CharFn, i: int) -> Tuple[BddFunction, BddFunction, CharFn]:
    """Resolve all cycles of length 2 in two mirrored passes.

    Returns the accumulated ``(l', r', F')`` with ``r'`` over x.
    """
    q = F.cofactors(i)
    l1, r1 = _two_cycle_controls(F, q.n, q.p_inner, q.n_inner)
    F = _apply_pair(F, i, l1, r1)
    q = F.cofactors(i)
    l2, r2 = _two_cycle_controls(F, q.p, q.n_inner, q.p_inner)
    F = _apply_pair(F, i, l2, r2)
    return l1 ^ l2, r1 ^ r2, F


# ------------------------------------------------------------ one variable

def decompose_variable(F: CharFn, i: int, opts: Optional[SynthesisOptions] = None,
                       partial: bool = False, reversible: Optional[bool] = None
                       ) -> Tuple[DecompositionResult, CharFn]:
    """Equalise line ``i``: returns the gate controls and the updated ``F``.

    With ``partial`` the function may be partially specified; missing rows
    are added on demand while walking cycles.  ``reversible`` skips the
    reversibility test when the caller already knows the answer.
    """
    opts = opts or SynthesisOptions()
    F._check_line(i)
    lay, f = F.layout, F.forest
    l = f.false
    r = f.false
    if F.line_is_identity(i):
        return DecompositionResult(l, r, i), F
    total = F.is_reversible() if reversible is None else reversible
    if not total and not partial:
        raise SynthesisError("function is not reversible")

    def done() -> bool:
        return F.line_is_identity(i)

    if opts.enable_single_gate_shortcut and total:
        hit = shortcut_single_gate(F, i)
        if hit is not None:
            side, c = hit
            if side == "input":
                l, F = c, _apply_pair(F, i, c, f.false)
            else:
                r, F = c, _apply_pair(F, i, f.false, c)
            if not done():
                raise InternalError(f"single-gate shortcut left line {i} unequal")
            return DecompositionResult(l, r, i), F

    if opts.enable_small_cycles:
        for step in (resolve_1cycles, resolve_2cycles):
            if done():
                break
            lp, rp, F = step(F, i)
            l, r = l ^ lp, r ^ rp

    xi, yi = lay.x[i], lay.y[i]
    over = lay.xs | lay.ys
    if total:
        lp, rp = fill_cycles(F, i)
        F = _apply_pair(F, i, lp, rp)
        l, r = l ^ lp, r ^ rp
    ext = 0
    # rows added to a partial function must not disturb lines that
    # already pass through unchanged
    keep = f.true
    if not total:
        for j in range(F.n):
            if j != i and F.line_is_identity(j):
                keep = keep & f.var(lay.x[j]).equiv(f.var(lay.y[j]))
    while True:
        c = f.find_minterm(F.F, over, {xi: 1, yi: 0})
        reverse = c is None
        if reverse:
            # a partial function may have x_i=0 -> y_i=1 rows left over only
            c = f.find_minterm(F.F, over, {xi: 0, yi: 1})
            if c is None:
                break
            if total:
                raise InternalError("unbalanced inner co-factors in a total function")
        rng = None
        if not total:
            rng = random.Random(f"{opts.rng_seed}:{i}:{ext}")
            ext += 1
        lp, rp, F = resolve_cycle(F, i, c, rng, reverse, keep)
        rp = lay.control_to_x(rp)
        F = _apply_pair(F, i, lp, rp)
        l, r = l ^ lp, r ^ rp
        if not total:
            total = F.is_reversible()
    if not done():
        raise InternalError(f"line {i} still differs after decomposition")
    return DecompositionResult(l, r, i), F


# ------------------------------------------------------------- full cascade

def _run(F: CharFn, opts: SynthesisOptions, partial: bool) -> Circuit:
    from .ordering import choose

    lay, f = F.layout, F.forest
    n = F.n
    remaining = set(range(n))
    left: List[SingleTargetGate] = []
    right: List[SingleTargetGate] = []
    while remaining:
        # gates keep a total function total, so test only partial ones
        res, F = choose(opts.ordering, F, remaining, opts, partial,
                        None if partial else True)
        remaining.discard(res.line)
        if not res.l.is_false():
            left.append(SingleTargetGate(res.line, res.l, lay))
        if not res.r.is_false():
            right.append(SingleTargetGate(res.line, res.r, lay))
        if f.cache_size() > CACHE_LIMIT:
            f.clear_caches()
    if partial:
        ok = (F.F & ~lay.identity()).is_false()
    else:
        ok = F.F == lay.identity()
    if not ok:
        raise InternalError("remaining function is not the identity")
    return Circuit(n, left + right[::-1])


def synthesize(F: CharFn, opts: Optional[SynthesisOptions] = None) -> Circuit:
    """Single-target cascade (at most ``2n - 1`` gates) realising ``F``."""
    opts = opts or SynthesisOptions()
    if not F.is_reversible():
        raise SynthesisError("function is not reversible")
    return _run(F, opts, partial=False)


def synthesize_partial(F: CharFn, opts: Optional[SynthesisOptions] = None) -> Circuit:
    """Cascade agreeing with every specified row of a partial function.

    Unspecified rows are filled in while cycles are walked; the choice is
    driven by ``opts.rng_seed``.
    """
    opts = opts or SynthesisOptions()
    if F.is_reversible():
        return _run(F, opts, partial=False)
    if not F.is_injective():
        raise SynthesisError("specification is not injective")
    return _run(F, opts, partial=True)

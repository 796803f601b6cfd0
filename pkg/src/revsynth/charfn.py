"""Characteristic functions of (partial) reversible functions.

A reversible function ``f`` on ``n`` lines is stored as the single-output
function ``F(x, y)`` that is 1 exactly when ``f(x) = y``.  Every line owns
three adjacent BDD variables ``x_i < y_i < z_i``; the ``z`` block is
scratch space for relational composition.  Lines are 0-based and line 0 is
the most significant bit of an input/output word.

By default line ``i`` occupies block ``i``.  A :class:`Layout` may place the
line blocks in another static order, which never changes the semantics,
only BDD sizes.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .bdd import BddFunction, Forest

MAX_TABLE_LINES = 16
MAX_PERMUTATION_LINES = 20

FAMILIES = ("identity", "invert", "rotate", "invert_or_rotate", "bitwise_xor")


class CharFnError(ValueError):
    """Invalid characteristic-function input or operation."""


class Layout:
    """Maps lines to BDD variables.

    ``block_order[p]`` is the line whose three variables sit at block ``p``.
    """

    def __init__(self, n: int, block_order: Optional[Sequence[int]] = None):
        if n < 1:
            raise CharFnError(f"need at least one line, got {n}")
        if block_order is None:
            block_order = range(n)
        block_order = list(block_order)
        if sorted(block_order) != list(range(n)):
            raise CharFnError(f"block order {block_order} is not a permutation of {n} lines")
        self.n = n
        self.block_order = tuple(block_order)
        self._pos = [0] * n
        for p, line in enumerate(block_order):
            self._pos[line] = p
        self.forest = Forest(3 * n)
        self.x = [3 * self._pos[i] for i in range(n)]
        self.y = [3 * self._pos[i] + 1 for i in range(n)]
        self.z = [3 * self._pos[i] + 2 for i in range(n)]
        self.xs = frozenset(self.x)
        self.ys = frozenset(self.y)
        self.zs = frozenset(self.z)
        self.x_to_y = {self.x[i]: self.y[i] for i in range(n)}
        self.y_to_x = {self.y[i]: self.x[i] for i in range(n)}
        self._x_to_line = {self.x[i]: i for i in range(n)}
        self._y_to_line = {self.y[i]: i for i in range(n)}
        self._identity: Optional[BddFunction] = None

    @property
    def natural(self) -> bool:
        return self.block_order == tuple(range(self.n))

    def line_of_x(self, v: int) -> int:
        return self._x_to_line[v]

    def line_of_y(self, v: int) -> int:
        return self._y_to_line[v]

    def identity(self) -> BddFunction:
        """``AND_i (x_i <-> y_i)``, built bottom-up in linear size."""
        if self._identity is None:
            f = self.forest
            u = 1
            for p in reversed(range(self.n)):
                line = self.block_order[p]
                xv, yv = self.x[line], self.y[line]
                u = f.mk(xv, f.mk(yv, u, 0), f.mk(yv, 0, u))
            self._identity = f._wrap(u)
        return self._identity

    def word_to_x(self, word: int) -> Dict[int, int]:
        n = self.n
        return {self.x[i]: (word >> (n - 1 - i)) & 1 for i in range(n)}

    def word_to_y(self, word: int) -> Dict[int, int]:
        n = self.n
        return {self.y[i]: (word >> (n - 1 - i)) & 1 for i in range(n)}

    def control_to_y(self, c: BddFunction) -> BddFunction:
        return self.forest.rename(c, self.x_to_y)

    def control_to_x(self, c: BddFunction) -> BddFunction:
        return self.forest.rename(c, self.y_to_x)


@dataclass(frozen=True)
class CofactorQuad:
    """The four restrictions of ``F`` by the values of ``(x_i, y_i)``.

    ``n``: 0 -> 0, ``p_inner``: 1 -> 0, ``n_inner``: 0 -> 1, ``p``: 1 -> 1.
    """

    n: BddFunction
    p_inner: BddFunction
    n_inner: BddFunction
    p: BddFunction


class CharFn:
    """Characteristic function ``F(x, y)`` of a function on ``layout.n`` lines."""

    __slots__ = ("layout", "F")

    def __init__(self, layout: Layout, F: BddFunction):
        if F.forest is not layout.forest:
            raise CharFnError("function does not live in the layout's forest")
        self.layout = layout
        self.F = F

    # -------------------------------------------------------------- basics

    @property
    def n(self) -> int:
        return self.layout.n

    @property
    def forest(self) -> Forest:
        return self.layout.forest

    def with_function(self, F: BddFunction) -> "CharFn":
        return CharFn(self.layout, F)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CharFn):
            return NotImplemented
        return self.layout is other.layout and self.F == other.F

    def __hash__(self) -> int:
        return hash((id(self.layout), self.F))

    def __repr__(self) -> str:
        return f"CharFn(n={self.n}, rows={self.count()})"

    def count(self) -> int:
        """Number of specified rows, i.e. ``|on(F)|``."""
        lay = self.layout
        return self.forest.count_minterms(self.F, lay.xs | lay.ys)

    def inputs(self) -> BddFunction:
        """Specified input patterns, ``exists y. F``."""
        return self.forest.smooth(self.F, self.layout.ys)

    def outputs(self) -> BddFunction:
        """Produced output patterns, ``exists x. F``."""
        return self.forest.smooth(self.F, self.layout.xs)

    def is_reversible(self) -> bool:
        """Total bijection test: ``2^n`` rows, every input and every output present."""
        return (self.count() == 1 << self.n
                and self.inputs().is_true()
                and self.outputs().is_true())

    def is_injective(self) -> bool:
        """Each specified input has one output and each output one input."""
        f, lay = self.forest, self.layout
        rows = self.count()
        return (rows == f.count_minterms(self.inputs(), lay.xs)
                and rows == f.count_minterms(self.outputs(), lay.ys))

    def is_total(self) -> bool:
        return self.inputs().is_true()

    def lookup(self, word: int) -> Optional[int]:
        """Output word for input ``word`` or ``None`` when unspecified."""
        lay, f = self.layout, self.forest
        row = f._node(self.F)
        var, lo, hi = f._var, f._lo, f._hi
        xbits = lay.word_to_x(word)
        sat: Dict[int, bool] = {}

        def ok(u: int) -> bool:
            if u <= 1:
                return u == 1
            r = sat.get(u)
            if r is None:
                b = xbits.get(var[u])
                if b is None:
                    r = ok(lo[u]) or ok(hi[u])
                else:
                    r = ok(hi[u] if b else lo[u])
                sat[u] = r
            return r

        if not ok(row):
            return None
        ybits: Dict[int, int] = {}
        u = row
        while u > 1:
            v = var[u]
            b = xbits.get(v)
            if b is not None:
                u = hi[u] if b else lo[u]
            elif ok(lo[u]):
                ybits[v] = 0
                u = lo[u]
            else:
                ybits[v] = 1
                u = hi[u]
        out = 0
        for i in range(self.n):
            out = (out << 1) | ybits.get(lay.y[i], 0)
        return out

    def rows(self) -> Iterator[Tuple[int, int]]:
        """All specified ``(input, output)`` word pairs, sorted by input."""
        lay, f = self.layout, self.forest
        n = self.n
        out: List[Tuple[int, int]] = []
        for path in f.iter_paths(self.F):
            free = [v for v in sorted(lay.xs | lay.ys) if v not in path]
            for k in range(1 << len(free)):
                full = dict(path)
                for j, v in enumerate(free):
                    full[v] = (k >> j) & 1
                xw = yw = 0
                for i in range(n):
                    xw = (xw << 1) | full[lay.x[i]]
                    yw = (yw << 1) | full[lay.y[i]]
                out.append((xw, yw))
        out.sort()
        return iter(out)

    def to_permutation(self) -> List[int]:
        if self.n > MAX_PERMUTATION_LINES:
            raise CharFnError(f"{self.n} lines is too many for an explicit permutation")
        if not self.is_reversible():
            raise CharFnError("function is not total and reversible")
        image = [0] * (1 << self.n)
        for xw, yw in self.rows():
            image[xw] = yw
        return image

    # ----------------------------------------------------- decomposition

    def cofactors(self, i: int) -> CofactorQuad:
        self._check_line(i)
        f, lay = self.forest, self.layout
        F0 = f.cofactor(self.F, lay.x[i], 0)
        F1 = f.cofactor(self.F, lay.x[i], 1)
        yv = lay.y[i]
        return CofactorQuad(
            n=f.cofactor(F0, yv, 0),
            p_inner=f.cofactor(F1, yv, 0),
            n_inner=f.cofactor(F0, yv, 1),
            p=f.cofactor(F1, yv, 1),
        )

    def line_is_identity(self, i: int) -> bool:
        """Whether no row changes line ``i``; cheaper than building :meth:`mismatch`."""
        self._check_line(i)
        lay, f = self.layout, self.forest
        return not f.intersects(self.F, f.var(lay.x[i]) ^ f.var(lay.y[i]))

    def mismatch(self, i: int) -> BddFunction:
        """Rows whose line ``i`` changes value: ``F & (x_i xor y_i)``."""
        self._check_line(i)
        lay, f = self.layout, self.forest
        return self.F & (f.var(lay.x[i]) ^ f.var(lay.y[i]))

    def _check_control(self, target: int, control: BddFunction) -> None:
        lay, f = self.layout, self.forest
        supp = f.support(control)
        if not supp <= lay.xs:
            raise CharFnError("control function must range over x variables only")
        if lay.x[target] in supp:
            raise CharFnError(f"control function depends on target line {target}")

    def apply_st_gate(self, target: int, control: BddFunction,
                      side: str = "input") -> "CharFn":
        """Put the single-target gate ``T[control, target]`` before (input
        side) or after (output side) the function.

        ``control`` is expressed over x variables.  On the input side this
        substitutes ``x_t <- x_t xor c(x)``, on the output side
        ``y_t <- y_t xor c(y)``.
        """
        if side == "input":
            return self.apply_gate_pair(target, control, self.forest.false)
        if side == "output":
            return self.apply_gate_pair(target, self.forest.false, control)
        raise CharFnError(f"unknown side {side!r}")

    def apply_gate_pair(self, target: int, left: BddFunction,
                        right: BddFunction) -> "CharFn":
        """``T[left, target]`` before and ``T[right, target]`` after the
        function, in a single pass.  Both controls are over x variables."""
        self._check_line(target)
        lay, f = self.layout, self.forest
        self._check_control(target, left)
        self._check_control(target, right)
        x, y = lay.x[target], lay.y[target]
        G = f._node(self.F)
        if left.is_false() and right.is_false():
            return self
        if right.is_false():
            G = f._xor_subst(G, x, f._node(left))
        elif left.is_false():
            G = f._xor_subst(G, y, f._node(lay.control_to_y(right)))
        else:
            G = f._xor_subst_pair(G, x, f._node(left), y, f._node(lay.control_to_y(right)))
        return self.with_function(f._wrap(G))

    # -------------------------------------------------------- composition

    def compose(self, other: "CharFn") -> "CharFn":
        """Characteristic function of ``self`` followed by ``other``.

        Relational product ``exists y. F(x, y) & G(y, z)`` with ``G`` moved
        onto the scratch block, then ``z`` renamed back to ``y``.
        """
        if other.layout is not self.layout:
            if other.n != self.n:
                raise CharFnError(f"line count mismatch: {self.n} vs {other.n}")
            raise CharFnError("functions live in different forests")
        lay, f = self.layout, self.forest
        shift = {}
        for i in range(self.n):
            shift[lay.x[i]] = lay.y[i]
            shift[lay.y[i]] = lay.z[i]
        G = f.rename(other.F, shift)
        H = f.and_exists(self.F, G, lay.ys)
        back = {lay.z[i]: lay.y[i] for i in range(self.n)}
        return self.with_function(f.rename(H, back))

    def inverse(self) -> "CharFn":
        """Swap the roles of inputs and outputs."""
        lay, f = self.layout, self.forest
        link_xz = f.true
        link_yx = f.true
        for i in reversed(range(self.n)):
            link_xz = link_xz & f.var(lay.x[i]).equiv(f.var(lay.z[i]))
            link_yx = link_yx & f.var(lay.y[i]).equiv(f.var(lay.x[i]))
        # A(y, z) = F(z, y)
        A = f.and_exists(self.F, link_xz, lay.xs)
        # B(x, z) = A(x, z) = F(z, x)
        B = f.and_exists(A, link_yx, lay.ys)
        back = {lay.z[i]: lay.y[i] for i in range(self.n)}
        return self.with_function(f.rename(B, back))

    def _check_line(self, i: int) -> None:
        if not 0 <= i < self.n:
            raise CharFnError(f"line {i} out of range for {self.n} lines")


# ------------------------------------------------------------ construction

def _rows_to_bdd(layout: Layout, rows: Sequence[Tuple[int, int]]) -> BddFunction:
    """Disjunction of the row minterms, built by recursive partitioning."""
    f = layout.forest
    n = layout.n
    # bit positions in level order: block p -> (x of line, y of line)
    levels: List[Tuple[int, int, int]] = []
    for p in range(n):
        line = layout.block_order[p]
        shift = n - 1 - line
        levels.append((layout.x[line], 0, shift))
        levels.append((layout.y[line], 1, shift))
    depth = len(levels)

    def build(part: Sequence[Tuple[int, int]], k: int) -> int:
        if k == depth:
            return 1
        v, side, shift = levels[k]
        lo_rows = [r for r in part if not (r[side] >> shift) & 1]
        hi_rows = [r for r in part if (r[side] >> shift) & 1]
        lo = build(lo_rows, k + 1) if lo_rows else 0
        hi = build(hi_rows, k + 1) if hi_rows else 0
        return f.mk(v, lo, hi)

    if not rows:
        return f.false
    return f._wrap(build(list(rows), 0))


def from_rows(n: int, rows: Iterable[Tuple[int, int]],
              layout: Optional[Layout] = None, injective: bool = True) -> CharFn:
    """Characteristic function of explicitly listed ``(input, output)`` rows.

    Raises :class:`CharFnError` when an input word repeats, or an output
    word repeats while ``injective`` is set.  Clearing ``injective`` admits
    the characteristic function of any (irreversible) multi-output function.
    """
    if n > MAX_TABLE_LINES:
        raise CharFnError(f"explicit tables are limited to {MAX_TABLE_LINES} lines")
    if layout is None:
        layout = Layout(n)
    elif layout.n != n:
        raise CharFnError(f"layout has {layout.n} lines, table has {n}")
    rows = list(rows)
    limit = 1 << n
    seen_in: Dict[int, int] = {}
    seen_out: Dict[int, int] = {}
    for k, (xw, yw) in enumerate(rows):
        if not (0 <= xw < limit and 0 <= yw < limit):
            raise CharFnError(f"row {k}: word out of range for {n} lines")
        if xw in seen_in:
            raise CharFnError(f"rows {seen_in[xw]} and {k}: input {xw:0{n}b} appears twice")
        if injective and yw in seen_out:
            raise CharFnError(f"rows {seen_out[yw]} and {k}: output {yw:0{n}b} appears twice")
        seen_in[xw] = k
        seen_out[yw] = k
    return CharFn(layout, _rows_to_bdd(layout, rows))


def from_truth_table(table, layout: Optional[Layout] = None) -> CharFn:
    """Characteristic function of a :class:`~revsynth.tt.TruthTable`."""
    return from_rows(table.n, table.items(), layout)


def from_permutation(image: Sequence[int], layout: Optional[Layout] = None) -> CharFn:
    size = len(image)
    n = size.bit_length() - 1
    if n < 1 or size != 1 << n:
        raise CharFnError(f"permutation length {size} is not a power of two >= 2")
    if sorted(image) != list(range(size)):
        raise CharFnError("image is not a permutation")
    return from_rows(n, enumerate(image), layout)


def identity(n: int, layout: Optional[Layout] = None) -> CharFn:
    layout = layout or Layout(n)
    return CharFn(layout, layout.identity())


def wire_sources(family: str, n: int, k: int = 0) -> List[Tuple[int, ...]]:
    """For each output line, the input lines it is the XOR of, plus a
    trailing constant-flip flag.  0-based lines.

    The one-based index formula ``(i + k) mod n + 1`` of the rotate family
    becomes ``(j + 1 + k) mod n`` for 0-based ``j``.
    """
    if n < 1:
        raise CharFnError("need at least one line")
    if family in ("invert_or_rotate", "bitwise_xor") and n % 2:
        raise CharFnError(f"{family} needs an even number of lines, got {n}")
    out: List[Tuple[int, ...]] = []
    for j in range(n):
        i = j + 1
        if family == "identity":
            out.append((j, 0))
        elif family == "invert":
            out.append((j, 1))
        elif family == "rotate":
            out.append(((i + k) % n, 0))
        elif family == "invert_or_rotate":
            if i % 2:
                out.append((j, 1))
            else:
                # even lines rotate among themselves by one even slot
                out.append(((i + 1) % n, 0))
        elif family == "bitwise_xor":
            if i % 2:
                out.append((j, 0))
            else:
                out.append((j - 1, j, 0))
        else:
            raise CharFnError(f"unknown family {family!r}")
    return out


def family_block_order(family: str, n: int, k: int = 0) -> List[int]:
    """Block order that keeps each output line next to the input it reads.

    Lines are listed along the cycles of the wire permutation, so in the
    rotating families every ``y_j`` meets its source ``x`` one block later
    and the BDD width stays constant.  In the natural order a rotation by
    ``k`` has to carry about ``k`` pending values across every block.
    """
    sources = wire_sources(family, n, k)
    if any(len(spec) != 2 for spec in sources):
        return list(range(n))
    order: List[int] = []
    seen = set()
    for start in range(n):
        j = start
        while j not in seen:
            seen.add(j)
            order.append(j)
            j = sources[j][0]
    return order


def evaluate_family(family: str, n: int, word: int, k: int = 0) -> int:
    """Direct word-level evaluation of a generator family (index formula)."""
    bits = [(word >> (n - 1 - i)) & 1 for i in range(n)]
    out = 0
    for spec in wire_sources(family, n, k):
        *srcs, flip = spec
        b = flip
        for s in srcs:
            b ^= bits[s]
        out = (out << 1) | b
    return out


def generator(family: str, n: int, k: int = 0,
              layout: Optional[Layout] = None) -> CharFn:
    """Benchmark families built directly as BDDs (no table)."""
    sources = wire_sources(family, n, k)
    layout = layout or Layout(n)
    if family == "identity":
        return CharFn(layout, layout.identity())
    f = layout.forest
    # conjoin in reverse block order keeps intermediate results small
    terms = []
    for j, spec in enumerate(sources):
        *srcs, flip = spec
        rhs = f.false
        for s in srcs:
            rhs = rhs ^ f.var(layout.x[s])
        if flip:
            rhs = ~rhs
        terms.append((layout._pos[j], f.var(layout.y[j]).equiv(rhs)))
    terms.sort(key=lambda t: -t[0])
    F = f.true
    for _, t in terms:
        F = F & t
    return CharFn(layout, F)

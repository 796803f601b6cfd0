"""Reduced ordered binary decision diagrams.

A :class:`Forest` owns every node; functions are handed out as
:class:`BddFunction` handles that compare equal iff they denote the same
Boolean function.  Nodes are hash-consed in a unique table, there are no
complement edges, and the variable order is fixed when the forest is
created (variable ``v`` sits at level ``v``).

The kernel works on plain integer node ids.  Node ``0`` is the constant
false, node ``1`` the constant true.
"""
from __future__ import annotations

import sys
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

# recursion depth is bounded by the number of variables
sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

FALSE = 0
TRUE = 1

AND = "and"
OR = "or"
XOR = "xor"
XNOR = "xnor"
OPERATORS = (AND, OR, XOR, XNOR)

Cube = Dict[int, int]


class BddError(Exception):
    """Raised on misuse of the BDD kernel."""


class Forest:
    """A shared BDD forest over ``num_vars`` ordered variables."""

    def __init__(self, num_vars: int):
        if num_vars < 0:
            raise BddError(f"negative variable count {num_vars}")
        self.num_vars = num_vars
        # terminals sit below every variable
        self._var: List[int] = [num_vars, num_vars]
        self._lo: List[int] = [0, 1]
        self._hi: List[int] = [0, 1]
        self._unique: Dict[Tuple[int, int, int], int] = {}
        self._and_cache: Dict[Tuple[int, int], int] = {}
        self._or_cache: Dict[Tuple[int, int], int] = {}
        self._xor_cache: Dict[Tuple[int, int], int] = {}
        self._not_cache: Dict[int, int] = {}
        self._ite_cache: Dict[Tuple[int, int, int], int] = {}
        self._exists_cache: Dict[FrozenSet[int], Dict[int, int]] = {}
        self._relprod_cache: Dict[FrozenSet[int], Dict[Tuple[int, int], int]] = {}
        self._build_kernels()
        self.true = BddFunction(self, TRUE)
        self.false = BddFunction(self, FALSE)

    # ------------------------------------------------------------------
    # bookkeeping

    def __len__(self) -> int:
        return len(self._var)

    def clear_caches(self) -> None:
        """Drop all operation caches.  Live handles stay valid."""
        self._and_cache.clear()
        self._or_cache.clear()
        self._xor_cache.clear()
        self._not_cache.clear()
        self._ite_cache.clear()
        self._exists_cache.clear()
        self._relprod_cache.clear()

    def cache_size(self) -> int:
        return (len(self._and_cache) + len(self._or_cache) + len(self._xor_cache)
                + len(self._not_cache) + len(self._ite_cache)
                + sum(len(c) for c in self._exists_cache.values())
                + sum(len(c) for c in self._relprod_cache.values()))

    def _check_var(self, v: int) -> None:
        if not 0 <= v < self.num_vars:
            raise BddError(f"unknown variable {v} (forest has {self.num_vars})")

    def _wrap(self, u: int) -> "BddFunction":
        if u == TRUE:
            return self.true
        if u == FALSE:
            return self.false
        return BddFunction(self, u)

    def _node(self, f: "BddFunction") -> int:
        if f.forest is not self:
            raise BddError("function belongs to a different forest")
        return f.node

    def _build_kernels(self) -> None:
        """Bind the hot recursive operations as closures over local names.

        They are the bulk of the run time, and attribute lookups on ``self``
        cost more than the work per call.
        """
        var, lo, hi, unique = self._var, self._lo, self._hi, self._unique
        and_cache, or_cache = self._and_cache, self._or_cache
        xor_cache, ite_cache = self._xor_cache, self._ite_cache

        def mk(v: int, l: int, h: int) -> int:
            if l == h:
                return l
            key = (v, l, h)
            u = unique.get(key)
            if u is None:
                u = len(var)
                var.append(v)
                lo.append(l)
                hi.append(h)
                unique[key] = u
            return u

        def and_(f: int, g: int) -> int:
            if f <= 1:
                return g if f else 0
            if g <= 1:
                return f if g else 0
            if f == g:
                return f
            if f > g:
                f, g = g, f
            key = (f, g)
            r = and_cache.get(key)
            if r is not None:
                return r
            vf, vg = var[f], var[g]
            if vf == vg:
                r = mk(vf, and_(lo[f], lo[g]), and_(hi[f], hi[g]))
            elif vf < vg:
                r = mk(vf, and_(lo[f], g), and_(hi[f], g))
            else:
                r = mk(vg, and_(f, lo[g]), and_(f, hi[g]))
            and_cache[key] = r
            return r

        def or_(f: int, g: int) -> int:
            if f <= 1:
                return 1 if f else g
            if g <= 1:
                return 1 if g else f
            if f == g:
                return f
            if f > g:
                f, g = g, f
            key = (f, g)
            r = or_cache.get(key)
            if r is not None:
                return r
            vf, vg = var[f], var[g]
            if vf == vg:
                r = mk(vf, or_(lo[f], lo[g]), or_(hi[f], hi[g]))
            elif vf < vg:
                r = mk(vf, or_(lo[f], g), or_(hi[f], g))
            else:
                r = mk(vg, or_(f, lo[g]), or_(f, hi[g]))
            or_cache[key] = r
            return r

        def xor_(f: int, g: int) -> int:
            if f == g:
                return 0
            if f == 0:
                return g
            if g == 0:
                return f
            if f == 1:
                return self._not(g)
            if g == 1:
                return self._not(f)
            if f > g:
                f, g = g, f
            key = (f, g)
            r = xor_cache.get(key)
            if r is not None:
                return r
            vf, vg = var[f], var[g]
            if vf == vg:
                r = mk(vf, xor_(lo[f], lo[g]), xor_(hi[f], hi[g]))
            elif vf < vg:
                r = mk(vf, xor_(lo[f], g), xor_(hi[f], g))
            else:
                r = mk(vg, xor_(f, lo[g]), xor_(f, hi[g]))
            xor_cache[key] = r
            return r

        def ite(f: int, g: int, h: int) -> int:
            if f <= 1:
                return g if f else h
            if g == h:
                return g
            if g <= 1 and h <= 1:
                return f if g else self._not(f)
            if g == 1:
                return or_(f, h)
            if h == 0:
                return and_(f, g)
            key = (f, g, h)
            r = ite_cache.get(key)
            if r is not None:
                return r
            vf, vg, vh = var[f], var[g], var[h]
            v = vf if vf < vg else vg
            if vh < v:
                v = vh
            f0, f1 = (lo[f], hi[f]) if vf == v else (f, f)
            g0, g1 = (lo[g], hi[g]) if vg == v else (g, g)
            h0, h1 = (lo[h], hi[h]) if vh == v else (h, h)
            r = mk(v, ite(f0, g0, h0), ite(f1, g1, h1))
            ite_cache[key] = r
            return r

        def swap(g: int, a: int, b: int) -> Tuple[int, int]:
            """``(ite(g, a, b), ite(g, b, a))`` in one traversal."""
            if g <= 1:
                return (a, b) if g else (b, a)
            if a == b:
                return a, a
            if a <= 1 and b <= 1:
                ng = self._not(g)
                return (g, ng) if a else (ng, g)
            key = (g, a, b)
            r1 = ite_cache.get(key)
            if r1 is not None:
                r2 = ite_cache.get((g, b, a))
                if r2 is not None:
                    return r1, r2
            vg, va, vb = var[g], var[a], var[b]
            v = vg if vg < va else va
            if vb < v:
                v = vb
            g0, g1 = (lo[g], hi[g]) if vg == v else (g, g)
            a0, a1 = (lo[a], hi[a]) if va == v else (a, a)
            b0, b1 = (lo[b], hi[b]) if vb == v else (b, b)
            p0, q0 = swap(g0, a0, b0)
            p1, q1 = swap(g1, a1, b1)
            r1, r2 = mk(v, p0, p1), mk(v, q0, q1)
            ite_cache[key] = r1
            ite_cache[(g, b, a)] = r2
            return r1, r2

        self.mk = mk
        self._swap = swap
        self._and = and_
        self._or = or_
        self._xor = xor_
        self._ite = ite

    def _not(self, f: int) -> int:
        if f <= 1:
            return 1 - f
        r = self._not_cache.get(f)
        if r is not None:
            return r
        r = self.mk(self._var[f], self._not(self._lo[f]), self._not(self._hi[f]))
        self._not_cache[f] = r
        self._not_cache[r] = f
        return r

    def _xor_subst_fn(self, v: int):
        """Memoised ``(u, g) -> u[v <- v xor g]`` for ``g`` free of ``v``."""
        memo: Dict[Tuple[int, int], int] = {}
        var, lo, hi = self._var, self._lo, self._hi
        mk, swap = self.mk, self._swap

        def rec(u: int, g: int) -> int:
            if g == FALSE or var[u] > v:
                return u
            key = (u, g)
            r = memo.get(key)
            if r is not None:
                return r
            vu, vg = var[u], var[g]
            if vu == v and vg > v:
                r = mk(v, *swap(g, hi[u], lo[u]))
            else:
                t = vu if vu < vg else vg
                u0, u1 = (lo[u], hi[u]) if vu == t else (u, u)
                g0, g1 = (lo[g], hi[g]) if vg == t else (g, g)
                r = mk(t, rec(u0, g0), rec(u1, g1))
            memo[key] = r
            return r

        return rec

    def _xor_subst(self, f: int, v: int, c: int) -> int:
        """``f[v <- v xor c]`` for a ``c`` that does not depend on ``v``."""
        return self._xor_subst_fn(v)(f, c)

    def _xor_subst_pair(self, f: int, v1: int, c1: int, v2: int, c2: int) -> int:
        """Both substitutions at once; neither ``c`` may depend on ``v1`` or ``v2``."""
        if v1 > v2:
            v1, c1, v2, c2 = v2, c2, v1, c1
        memo: Dict[Tuple[int, int, int], int] = {}
        var, lo, hi = self._var, self._lo, self._hi
        mk, swap = self.mk, self._swap
        sub1 = self._xor_subst_fn(v1)
        sub2 = self._xor_subst_fn(v2)

        def rec(u: int, g1: int, g2: int) -> int:
            if g1 == FALSE:
                return sub2(u, g2)
            if g2 == FALSE:
                return sub1(u, g1)
            vu, vg1, vg2 = var[u], var[g1], var[g2]
            if vu > v1:
                # u does not depend on v1 any more
                return sub2(u, g2)
            key = (u, g1, g2)
            r = memo.get(key)
            if r is not None:
                return r
            t = min(vu, vg1, vg2)
            if t == v1:
                s0, s1 = sub2(lo[u], g2), sub2(hi[u], g2)
                r = mk(v1, *swap(g1, s1, s0))
            else:
                u0, u1 = (lo[u], hi[u]) if vu == t else (u, u)
                a0, a1 = (lo[g1], hi[g1]) if vg1 == t else (g1, g1)
                b0, b1 = (lo[g2], hi[g2]) if vg2 == t else (g2, g2)
                r = mk(t, rec(u0, a0, b0), rec(u1, a1, b1))
            memo[key] = r
            return r

        return rec(f, c1, c2)

    def _restrict(self, f: int, v: int, value: int) -> int:
        memo: Dict[int, int] = {}
        var, lo, hi = self._var, self._lo, self._hi
        mk = self.mk

        def rec(u: int) -> int:
            vu = var[u]
            if vu > v:
                return u
            if vu == v:
                return hi[u] if value else lo[u]
            r = memo.get(u)
            if r is None:
                r = mk(vu, rec(lo[u]), rec(hi[u]))
                memo[u] = r
            return r

        return rec(f)

    def _exists(self, f: int, vs: FrozenSet[int]) -> int:
        if not vs or f <= 1:
            return f
        memo = self._exists_cache.get(vs)
        if memo is None:
            memo = self._exists_cache[vs] = {}
        top = max(vs)
        var, lo, hi = self._var, self._lo, self._hi
        mk, or_ = self.mk, self._or

        def rec(u: int) -> int:
            vu = var[u]
            if vu > top:
                return u
            r = memo.get(u)
            if r is not None:
                return r
            if vu in vs:
                r0 = rec(lo[u])
                r = 1 if r0 == 1 else or_(r0, rec(hi[u]))
            else:
                r = mk(vu, rec(lo[u]), rec(hi[u]))
            memo[u] = r
            return r

        return rec(f)

    def _and_exists(self, f: int, g: int, vs: FrozenSet[int]) -> int:
        """``exists vs. f & g`` without building the full conjunction."""
        if not vs:
            return self._and(f, g)
        memo = self._relprod_cache.get(vs)
        if memo is None:
            memo = self._relprod_cache[vs] = {}
        top = max(vs)
        var, lo, hi = self._var, self._lo, self._hi
        mk, or_ = self.mk, self._or

        def rec(a: int, b: int) -> int:
            if a == 0 or b == 0:
                return 0
            if a == 1 and b == 1:
                return 1
            if a == 1 or a == b:
                return self._exists(b, vs)
            if b == 1:
                return self._exists(a, vs)
            if a > b:
                a, b = b, a
            va, vb = var[a], var[b]
            v = va if va < vb else vb
            if v > top:
                return self._and(a, b)
            key = (a, b)
            r = memo.get(key)
            if r is not None:
                return r
            a0, a1 = (lo[a], hi[a]) if va == v else (a, a)
            b0, b1 = (lo[b], hi[b]) if vb == v else (b, b)
            r0 = rec(a0, b0)
            if v in vs:
                r = 1 if r0 == 1 else or_(r0, rec(a1, b1))
            else:
                r = mk(v, r0, rec(a1, b1))
            memo[key] = r
            return r

        return rec(f, g)

    def _compose(self, f: int, v: int, g: int) -> int:
        memo: Dict[int, int] = {}
        var, lo, hi = self._var, self._lo, self._hi

        def rec(u: int) -> int:
            vu = var[u]
            if vu > v:
                return u
            if vu == v:
                return self._ite(g, hi[u], lo[u])
            r = memo.get(u)
            if r is None:
                x = self.mk(vu, 0, 1)
                r = self._ite(x, rec(hi[u]), rec(lo[u]))
                memo[u] = r
            return r

        return rec(f)

    def _rename(self, f: int, mapping: Mapping[int, int]) -> int:
        """Relabel variables by an order-preserving map on the support."""
        memo: Dict[int, int] = {}
        var, lo, hi = self._var, self._lo, self._hi

        def rec(u: int) -> int:
            if u <= 1:
                return u
            r = memo.get(u)
            if r is None:
                vu = var[u]
                r = self.mk(mapping.get(vu, vu), rec(lo[u]), rec(hi[u]))
                memo[u] = r
            return r

        return rec(f)

    def _support(self, f: int) -> set:
        seen = set()
        out = set()
        stack = [f]
        var, lo, hi = self._var, self._lo, self._hi
        while stack:
            u = stack.pop()
            if u <= 1 or u in seen:
                continue
            seen.add(u)
            out.add(var[u])
            stack.append(lo[u])
            stack.append(hi[u])
        return out

    # ------------------------------------------------------------------
    # public API

    def var(self, v: int) -> "BddFunction":
        """Projection function of variable ``v``."""
        self._check_var(v)
        return BddFunction(self, self.mk(v, FALSE, TRUE))

    mk_var = var

    def nvar(self, v: int) -> "BddFunction":
        self._check_var(v)
        return BddFunction(self, self.mk(v, TRUE, FALSE))

    def constant(self, value: bool) -> "BddFunction":
        return self.true if value else self.false

    def apply(self, op: str, f: "BddFunction", g: "BddFunction") -> "BddFunction":
        a, b = self._node(f), self._node(g)
        if op == AND:
            r = self._and(a, b)
        elif op == OR:
            r = self._or(a, b)
        elif op == XOR:
            r = self._xor(a, b)
        elif op == XNOR:
            r = self._not(self._xor(a, b))
        else:
            raise BddError(f"unknown operator {op!r}")
        return self._wrap(r)

    def complement(self, f: "BddFunction") -> "BddFunction":
        return self._wrap(self._not(self._node(f)))

    def ite(self, f: "BddFunction", g: "BddFunction", h: "BddFunction") -> "BddFunction":
        return self._wrap(self._ite(self._node(f), self._node(g), self._node(h)))

    def intersects(self, f: "BddFunction", g: "BddFunction") -> bool:
        """Whether ``f & g`` is satisfiable, without building it."""
        a, b = self._node(f), self._node(g)
        var, lo, hi = self._var, self._lo, self._hi
        memo: Dict[Tuple[int, int], bool] = {}

        def rec(a: int, b: int) -> bool:
            if a == FALSE or b == FALSE:
                return False
            if a == TRUE or b == TRUE or a == b:
                return True
            if a > b:
                a, b = b, a
            key = (a, b)
            r = memo.get(key)
            if r is None:
                va, vb = var[a], var[b]
                if va == vb:
                    r = rec(lo[a], lo[b]) or rec(hi[a], hi[b])
                elif va < vb:
                    r = rec(lo[a], b) or rec(hi[a], b)
                else:
                    r = rec(a, lo[b]) or rec(a, hi[b])
                memo[key] = r
            return r

        return rec(a, b)

    def xor_substitute(self, f: "BddFunction", v: int, c: "BddFunction") -> "BddFunction":
        """``f`` with ``v`` replaced by ``v xor c``; ``c`` must not depend on ``v``."""
        self._check_var(v)
        a, g = self._node(f), self._node(c)
        if v in self._support(g):
            raise BddError(f"substituted function depends on variable {v}")
        return self._wrap(self._xor_subst(a, v, g))

    def xor_substitute_pair(self, f: "BddFunction", v1: int, c1: "BddFunction",
                            v2: int, c2: "BddFunction") -> "BddFunction":
        """``f`` with ``v1 <- v1 xor c1`` and ``v2 <- v2 xor c2`` simultaneously."""
        self._check_var(v1)
        self._check_var(v2)
        if v1 == v2:
            raise BddError("pair substitution needs two distinct variables")
        a, g1, g2 = self._node(f), self._node(c1), self._node(c2)
        if {v1, v2} & (self._support(g1) | self._support(g2)):
            raise BddError("substituted functions depend on a substituted variable")
        return self._wrap(self._xor_subst_pair(a, v1, g1, v2, g2))

    def from_minterms(self, vars: Sequence[int], minterms: Iterable[Sequence[int]]) -> "BddFunction":
        """Disjunction of the given minterms, each a bit tuple aligned with ``vars``."""
        for v in vars:
            self._check_var(v)
        perm = sorted(range(len(vars)), key=lambda k: vars[k])
        order = [vars[k] for k in perm]
        rows = sorted({tuple(m[k] for k in perm) for m in minterms})
        if any(len(m) != len(vars) for m in rows):
            raise BddError("minterm width differs from the variable list")
        depth = len(order)

        def build(lo_i: int, hi_i: int, k: int) -> int:
            if lo_i == hi_i:
                return FALSE
            if k == depth:
                return TRUE
            mid = lo_i
            while mid < hi_i and rows[mid][k] == 0:
                mid += 1
            return self.mk(order[k], build(lo_i, mid, k + 1), build(mid, hi_i, k + 1))

        return self._wrap(build(0, len(rows), 0))

    def cofactor_cube(self, f: "BddFunction", assignment: Mapping[int, int]) -> "BddFunction":
        """``f`` restricted by every literal of ``assignment``."""
        u = self._node(f)
        for v in sorted(assignment):
            self._check_var(v)
            u = self._restrict(u, v, assignment[v])
        return self._wrap(u)

    def cofactor(self, f: "BddFunction", v: int, value: int) -> "BddFunction":
        self._check_var(v)
        return self._wrap(self._restrict(self._node(f), v, 1 if value else 0))

    def smooth(self, f: "BddFunction", vars: Iterable[int]) -> "BddFunction":
        """Existentially quantify ``vars`` out of ``f``."""
        vs = frozenset(vars)
        for v in vs:
            self._check_var(v)
        return self._wrap(self._exists(self._node(f), vs))

    exists = smooth

    def forall(self, f: "BddFunction", vars: Iterable[int]) -> "BddFunction":
        vs = frozenset(vars)
        return self._wrap(self._not(self._exists(self._not(self._node(f)), vs)))

    def and_exists(self, f: "BddFunction", g: "BddFunction",
                   vars: Iterable[int]) -> "BddFunction":
        vs = frozenset(vars)
        return self._wrap(self._and_exists(self._node(f), self._node(g), vs))

    def compose(self, f: "BddFunction", v: int, g: "BddFunction") -> "BddFunction":
        """Substitute ``g`` for variable ``v`` in ``f``."""
        self._check_var(v)
        return self._wrap(self._compose(self._node(f), v, self._node(g)))

    def rename(self, f: "BddFunction", mapping: Mapping[int, int]) -> "BddFunction":
        """Rename variables of ``f``.

        The map must be injective on the support of ``f`` and preserve
        the relative order of the support variables; anything else would
        need reordering and is rejected.
        """
        a = self._node(f)
        supp = sorted(self._support(a))
        image = [mapping.get(v, v) for v in supp]
        for w in image:
            self._check_var(w)
        if any(image[k] >= image[k + 1] for k in range(len(image) - 1)):
            raise BddError("rename must preserve the variable order on the support")
        return self._wrap(self._rename(a, mapping))

    def support(self, f: "BddFunction") -> FrozenSet[int]:
        return frozenset(self._support(self._node(f)))

    def evaluate(self, f: "BddFunction", assignment: Mapping[int, int]) -> int:
        """Evaluate ``f``; variables missing from ``assignment`` must not matter."""
        u = self._node(f)
        var, lo, hi = self._var, self._lo, self._hi
        while u > 1:
            v = var[u]
            try:
                b = assignment[v]
            except KeyError:
                raise BddError(f"variable {v} unassigned") from None
            u = hi[u] if b else lo[u]
        return u

    def count_minterms(self, f: "BddFunction", over: Iterable[int]) -> int:
        """Exact size of the on-set of ``f`` as a function of ``over``."""
        order = sorted(set(over))
        for v in order:
            self._check_var(v)
        rank = {v: k for k, v in enumerate(order)}
        nover = len(order)
        a = self._node(f)
        var, lo, hi = self._var, self._lo, self._hi
        memo: Dict[int, int] = {0: 0, 1: 1}

        def level(u: int) -> int:
            return nover if u <= 1 else rank[var[u]]

        for v in self._support(a):
            if v not in rank:
                raise BddError(f"support variable {v} not among the counted variables")

        def rec(u: int) -> int:
            r = memo.get(u)
            if r is not None:
                return r
            k = rank[var[u]]
            l, h = lo[u], hi[u]
            r = (rec(l) << (level(l) - k - 1)) + (rec(h) << (level(h) - k - 1))
            memo[u] = r
            return r

        return rec(a) << level(a)

    def find_minterm(self, f: "BddFunction", over: Iterable[int],
                     fixed: Optional[Mapping[int, int]] = None,
                     prefer: Optional[Mapping[int, int]] = None) -> Optional[Cube]:
        """Smallest minterm of ``f & cube(fixed)`` over ``over``, or ``None``.

        Same tie-breaking as :meth:`pick_minterm`.  No nodes are created,
        so this is the cheap way to look up one row under a partial
        assignment.
        """
        fixed = dict(fixed or {})
        order = sorted(set(over) | set(fixed))
        for v in order:
            self._check_var(v)
        return self._find(self._node(f), order, frozenset(order), fixed, prefer or {})

    def _find(self, a: int, order: Sequence[int], allowed, fixed: Mapping[int, int],
              prefer: Mapping[int, int]) -> Optional[Cube]:
        var, lo, hi = self._var, self._lo, self._hi
        memo: Dict[int, bool] = {FALSE: False, TRUE: True}

        def sat(u: int) -> bool:
            r = memo.get(u)
            if r is None:
                v = var[u]
                if v not in allowed:
                    raise BddError(f"support variable {v} not among the picked variables")
                b = fixed.get(v)
                if b is None:
                    r = sat(lo[u]) or sat(hi[u])
                else:
                    r = sat(hi[u] if b else lo[u])
                memo[u] = r
            return r

        if not sat(a):
            return None
        cube: Cube = {}
        u = a
        for v in order:
            b = fixed.get(v)
            want = prefer.get(v, 0) if b is None else b
            if var[u] == v:
                first, second = (hi[u], lo[u]) if want else (lo[u], hi[u])
                if b is None and not sat(first):
                    want, first = 1 - want, second
                cube[v] = want
                u = first
            else:
                cube[v] = want
        return cube

    def pick_minterm(self, f: "BddFunction", over: Iterable[int],
                     prefer: Optional[Mapping[int, int]] = None) -> Cube:
        """Lexicographically smallest satisfying assignment over ``over``.

        Variables are visited in the global order and 0 is preferred, unless
        ``prefer`` names another preferred value for a variable.
        """
        a = self._node(f)
        if a == FALSE:
            raise BddError("cannot pick a minterm from the constant false")
        over = set(over)
        extra = self._support(a) - over
        if extra:
            raise BddError(f"support variables {sorted(extra)} not among the picked variables")
        return self.find_minterm(f, over, None, prefer)

    def cube(self, assignment: Mapping[int, int]) -> "BddFunction":
        """Product term of the given literals."""
        u = TRUE
        for v in sorted(assignment, reverse=True):
            self._check_var(v)
            u = self.mk(v, FALSE, u) if assignment[v] else self.mk(v, u, FALSE)
        return self._wrap(u)

    def iter_paths(self, f: "BddFunction"):
        """Yield every path to the true terminal as a cube (disjoint cubes)."""
        a = self._node(f)
        if a == FALSE:
            return
        var, lo, hi = self._var, self._lo, self._hi
        path: List[Tuple[int, int]] = []
        # entries: (node, path length before the literal, literal)
        stack: List[Tuple[int, int, Optional[Tuple[int, int]]]] = [(a, 0, None)]
        while stack:
            u, depth, lit = stack.pop()
            del path[depth:]
            if lit is not None:
                path.append(lit)
            if u == TRUE:
                yield dict(path)
                continue
            v = var[u]
            d = len(path)
            # push high first so the low branch comes out first
            if hi[u] != FALSE:
                stack.append((hi[u], d, (v, 1)))
            if lo[u] != FALSE:
                stack.append((lo[u], d, (v, 0)))

    def count_paths(self, f: "BddFunction") -> int:
        a = self._node(f)
        lo, hi = self._lo, self._hi
        memo: Dict[int, int] = {0: 0, 1: 1}

        def rec(u: int) -> int:
            r = memo.get(u)
            if r is None:
                r = rec(lo[u]) + rec(hi[u])
                memo[u] = r
            return r

        return rec(a)

    def path_length_counts(self, f: "BddFunction") -> Dict[int, int]:
        """Number of paths to true per literal count."""
        a = self._node(f)
        lo, hi = self._lo, self._hi
        memo: Dict[int, Dict[int, int]] = {0: {}, 1: {0: 1}}

        def rec(u: int) -> Dict[int, int]:
            r = memo.get(u)
            if r is None:
                r = {}
                for child in (lo[u], hi[u]):
                    for k, c in rec(child).items():
                        r[k + 1] = r.get(k + 1, 0) + c
                memo[u] = r
            return r

        return dict(rec(a))

    def dag_size(self, f: "BddFunction") -> int:
        """Number of non-terminal nodes reachable from ``f``."""
        a = self._node(f)
        seen = set()
        stack = [a]
        lo, hi = self._lo, self._hi
        while stack:
            u = stack.pop()
            if u <= 1 or u in seen:
                continue
            seen.add(u)
            stack.append(lo[u])
            stack.append(hi[u])
        return len(seen)

    def top_var(self, f: "BddFunction") -> Optional[int]:
        u = self._node(f)
        return None if u <= 1 else self._var[u]


class BddFunction:
    """Handle on a function stored in a :class:`Forest`."""

    __slots__ = ("forest", "node")

    def __init__(self, forest: Forest, node: int):
        self.forest = forest
        self.node = node

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BddFunction):
            return NotImplemented
        return self.forest is other.forest and self.node == other.node

    def __ne__(self, other: object) -> bool:
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self) -> int:
        return hash((id(self.forest), self.node))

    def __repr__(self) -> str:
        if self.node == TRUE:
            return "BddFunction(TRUE)"
        if self.node == FALSE:
            return "BddFunction(FALSE)"
        return f"BddFunction(node={self.node})"

    def __bool__(self) -> bool:
        raise TypeError("use is_true()/is_false() instead of truthiness")

    def __and__(self, other: "BddFunction") -> "BddFunction":
        return self.forest.apply(AND, self, other)

    def __or__(self, other: "BddFunction") -> "BddFunction":
        return self.forest.apply(OR, self, other)

    def __xor__(self, other: "BddFunction") -> "BddFunction":
        return self.forest.apply(XOR, self, other)

    def __invert__(self) -> "BddFunction":
        return self.forest.complement(self)

    def equiv(self, other: "BddFunction") -> "BddFunction":
        return self.forest.apply(XNOR, self, other)

    def is_true(self) -> bool:
        return self.node == TRUE

    def is_false(self) -> bool:
        return self.node == FALSE

    @property
    def var(self) -> Optional[int]:
        return self.forest.top_var(self)

    def exists(self, vars: Iterable[int]) -> "BddFunction":
        return self.forest.smooth(self, vars)

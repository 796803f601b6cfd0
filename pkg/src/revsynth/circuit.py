"""Reversible circuits over single-target and Toffoli gates."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from .bdd import BddFunction
from .charfn import CharFn, Layout, identity as identity_charfn


class CircuitError(ValueError):
    pass


@dataclass(frozen=True)
class SingleTargetGate:
    """``T[control, target]``: flip ``target`` iff ``control`` holds.

    ``control`` is a BDD over the x variables of ``layout`` and must not
    depend on the target line.
    """

    target: int
    control: BddFunction
    layout: Layout = field(compare=False, repr=False)

    def __post_init__(self):
        lay = self.layout
        if not 0 <= self.target < lay.n:
            raise CircuitError(f"target {self.target} out of range")
        supp = lay.forest.support(self.control)
        if not supp <= lay.xs:
            raise CircuitError("control must range over line (x) variables")
        if lay.x[self.target] in supp:
            raise CircuitError(f"control depends on its target line {self.target}")

    def lines(self) -> Tuple[int, ...]:
        lay = self.layout
        return tuple(sorted(lay.line_of_x(v) for v in lay.forest.support(self.control)))

    def fires(self, word: int, n: int) -> bool:
        lay = self.layout
        return bool(lay.forest.evaluate(self.control, lay.word_to_x(word)))


@dataclass(frozen=True, order=True)
class ToffoliGate:
    """Mixed-polarity multiple-control Toffoli gate.

    ``controls`` holds ``(line, polarity)`` pairs sorted by line; polarity 1
    is a positive control, 0 a negative one.
    """

    target: int
    controls: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        lines = [c for c, _ in self.controls]
        if len(set(lines)) != len(lines):
            raise CircuitError("repeated control line")
        if self.target in lines:
            raise CircuitError("target used as control")
        if list(self.controls) != sorted(self.controls):
            object.__setattr__(self, "controls", tuple(sorted(self.controls)))

    def lines(self) -> Tuple[int, ...]:
        return tuple(c for c, _ in self.controls)

    def fires(self, word: int, n: int) -> bool:
        for line, pol in self.controls:
            if ((word >> (n - 1 - line)) & 1) != pol:
                return False
        return True

    def masks(self, n: int) -> Tuple[int, int, int]:
        """``(positive mask, negative mask, target mask)`` for bit-parallel use."""
        pos = neg = 0
        for line, pol in self.controls:
            if pol:
                pos |= 1 << (n - 1 - line)
            else:
                neg |= 1 << (n - 1 - line)
        return pos, neg, 1 << (n - 1 - self.target)


Gate = Union[SingleTargetGate, ToffoliGate]


@dataclass(frozen=True)
class Circuit:
    lines: int
    gates: Tuple[Gate, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            if not 0 <= g.target < self.lines or any(
                    not 0 <= c < self.lines for c in g.lines()):
                raise CircuitError(f"gate {g} uses a line outside 0..{self.lines - 1}")
            if isinstance(g, SingleTargetGate) and g.layout.n != self.lines:
                raise CircuitError("single-target gate built for a different line count")

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def is_toffoli(self) -> bool:
        return all(isinstance(g, ToffoliGate) for g in self.gates)


# ---------------------------------------------------------------- expansion

def expand_st_gate(gate: SingleTargetGate) -> List[ToffoliGate]:
    """One Toffoli gate per path to true in the control BDD.

    Paths are disjoint cubes, so their XOR equals their OR and the cascade
    realises the control exactly.
    """
    lay = gate.layout
    out = []
    for cube in lay.forest.iter_paths(gate.control):
        ctrls = tuple(sorted((lay.line_of_x(v), b) for v, b in cube.items()))
        out.append(ToffoliGate(gate.target, ctrls))
    return out


def expand(circuit: Circuit) -> Circuit:
    gates: List[ToffoliGate] = []
    for g in circuit.gates:
        if isinstance(g, SingleTargetGate):
            gates.extend(expand_st_gate(g))
        else:
            gates.append(g)
    return Circuit(circuit.lines, gates)


def toffoli_control(gate: ToffoliGate, layout: Layout) -> BddFunction:
    f = layout.forest
    return f.cube({layout.x[line]: pol for line, pol in gate.controls})


# --------------------------------------------------------------- simulation

def simulate(circuit: Circuit, word: int) -> int:
    n = circuit.lines
    if not 0 <= word < 1 << n:
        raise CircuitError(f"input {word} does not fit {n} lines")
    for g in circuit.gates:
        if g.fires(word, n):
            word ^= 1 << (n - 1 - g.target)
    return word


class Simulator:
    """Reusable fast simulator; Toffoli gates run on precomputed masks."""

    def __init__(self, circuit: Circuit):
        self.n = circuit.lines
        self._steps: List[Tuple] = []
        for g in expand(circuit).gates:
            self._steps.append(g.masks(self.n))

    def __call__(self, word: int) -> int:
        for pos, neg, t in self._steps:
            if word & pos == pos and not word & neg:
                word ^= t
        return word


def _to_slices(words: Sequence[int], n: int) -> List[int]:
    """Line ``j`` as an integer whose bit ``s`` is line ``j`` of ``words[s]``."""
    if not words:
        return [0] * n
    rows = [format(w, f"0{n}b") for w in words]
    return [int(col[::-1], 2) for col in map("".join, zip(*rows))]


def _from_slices(slices: List[int], count: int) -> List[int]:
    cols = [format(s, f"0{count}b")[::-1] for s in slices]
    return [int("".join(bits), 2) for bits in zip(*cols)]


def _control_vector(gate: SingleTargetGate, slices: List[int], full: int) -> int:
    lay = gate.layout
    f = lay.forest
    var, lo, hi = f._var, f._lo, f._hi
    memo = {0: 0, 1: full}

    def rec(u: int) -> int:
        r = memo.get(u)
        if r is None:
            s = slices[lay.line_of_x(var[u])]
            r = (s & rec(hi[u])) | (~s & rec(lo[u]) & full)
            memo[u] = r
        return r

    return rec(f._node(gate.control))


def simulate_words(circuit: Circuit, words: Sequence[int]) -> List[int]:
    """Outputs for many inputs at once.

    Bit-sliced: each line is one integer with a bit per input word, so a
    Toffoli gate costs a few big-integer operations and a single-target
    gate one operation per BDD node of its control.  Nothing is expanded.
    """
    n = circuit.lines
    words = list(words)
    for w in words:
        if not 0 <= w < 1 << n:
            raise CircuitError(f"input {w} does not fit {n} lines")
    if not words:
        return []
    full = (1 << len(words)) - 1
    slices = _to_slices(words, n)
    for g in circuit.gates:
        if isinstance(g, ToffoliGate):
            cond = full
            for line, pol in g.controls:
                cond &= slices[line] if pol else full ^ slices[line]
        else:
            cond = _control_vector(g, slices, full)
        slices[g.target] ^= cond
    return _from_slices(slices, len(words))


def simulate_all(circuit: Circuit) -> List[int]:
    """Exhaustive simulation table, indexed by input word."""
    return simulate_words(circuit, range(1 << circuit.lines))


def circuit_to_charfn(circuit: Circuit, layout: Optional[Layout] = None) -> CharFn:
    """Characteristic function of the whole cascade.

    Starts from the identity and appends each gate on the output side.
    """
    if layout is None:
        layout = next((g.layout for g in circuit.gates
                       if isinstance(g, SingleTargetGate)), None) or Layout(circuit.lines)
    if layout.n != circuit.lines:
        raise CircuitError("layout line count differs from circuit")
    F = identity_charfn(circuit.lines, layout)
    for g in circuit.gates:
        if isinstance(g, SingleTargetGate):
            if g.layout is layout:
                c = g.control
            else:
                raise CircuitError("single-target gate from a different layout")
        else:
            c = toffoli_control(g, layout)
        F = F.apply_st_gate(g.target, c, "output")
    return F


# --------------------------------------------------------------------- cost

def _surrogate_v1(k: int) -> int:
    return 1 if k <= 1 else 2 * (k - 1)


def _ncv_v1(k: int) -> int:
    # NCV-style table: NOT/CNOT cost 1, Toffoli 5, then 2^(k+1) - 3
    return 1 if k <= 1 else (1 << (k + 1)) - 3


COST_MODELS: Dict[str, Callable[[int], int]] = {
    "surrogate-v1": _surrogate_v1,
    "ncv-v1": _ncv_v1,
}
DEFAULT_COST_MODEL = "surrogate-v1"


@dataclass(frozen=True)
class CostReport:
    st_gates: int
    toffoli_gates: int
    quantum_cost: int
    runtime_seconds: float = 0.0
    cost_model: str = DEFAULT_COST_MODEL

    @property
    def d(self) -> int:
        return self.toffoli_gates

    @property
    def q(self) -> int:
        return self.quantum_cost


def gate_cost(num_controls: int, model: str = DEFAULT_COST_MODEL) -> int:
    try:
        return COST_MODELS[model](num_controls)
    except KeyError:
        raise CircuitError(f"unknown cost model {model!r}") from None


def cost(circuit: Circuit, model: str = DEFAULT_COST_MODEL,
         runtime_seconds: float = 0.0) -> CostReport:
    if model not in COST_MODELS:
        raise CircuitError(f"unknown cost model {model!r}")
    st = d = q = 0
    # single-target gates are costed by counting control paths, never expanded
    for g in circuit.gates:
        if isinstance(g, SingleTargetGate):
            st += 1
            for k, c in g.layout.forest.path_length_counts(g.control).items():
                d += c
                q += c * gate_cost(k, model)
        else:
            d += 1
            q += gate_cost(len(g.controls), model)
    return CostReport(st, d, q, runtime_seconds, model)

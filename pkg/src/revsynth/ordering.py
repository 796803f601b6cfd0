"""Choice of the next line to equalise."""
from __future__ import annotations

from typing import Callable, Iterable, Optional, Union

from .bdd import BddFunction
from .charfn import CharFn, Layout
from .circuit import COST_MODELS, gate_cost

# A cost is either a named quantum-cost model, a callable on the control
# pair, or None for the plain Toffoli count.
CostFn = Callable[[BddFunction, BddFunction, Layout], float]
CostModel = Union[None, str, CostFn]


def toffoli_count(l: BddFunction, r: BddFunction, layout: Layout) -> int:
    f = layout.forest
    return f.count_paths(l) + f.count_paths(r)


def _model_cost(model: str) -> CostFn:
    if model not in COST_MODELS:
        raise ValueError(f"unknown cost model {model!r}")

    def cost(l: BddFunction, r: BddFunction, layout: Layout) -> int:
        f = layout.forest
        return sum(gate_cost(len(cube), model)
                   for c in (l, r) for cube in f.iter_paths(c))

    return cost


def _cost_fn(cost_model: CostModel) -> CostFn:
    if cost_model is None:
        return toffoli_count
    if isinstance(cost_model, str):
        return _model_cost(cost_model)
    return cost_model


def mismatch_count(F: CharFn, i: int) -> int:
    lay = F.layout
    return F.forest.count_minterms(F.mismatch(i), lay.xs | lay.ys)


def _greedy(F: CharFn, remaining: Iterable[int], opts, partial: bool,
            cost_model: CostModel, reversible: Optional[bool] = None):
    from .synth import decompose_variable

    cost = _cost_fn(cost_model)
    best = None
    for i in sorted(remaining):
        res, Fi = decompose_variable(F, i, opts, partial, reversible)
        k = cost(res.l, res.r, F.layout)
        if best is None or k < best[0]:
            best = (k, res, Fi)
    return best[1], best[2]


def next_line(heuristic: str, F: CharFn, remaining: Iterable[int],
              cost_model: CostModel = None, opts=None) -> int:
    """Line to process next.  Ties always go to the smallest index."""
    remaining = sorted(remaining)
    if not remaining:
        raise ValueError("no lines left to choose from")
    if heuristic == "natural":
        return remaining[0]
    if heuristic == "hamming":
        # fewest rows where x_i and y_i disagree, i.e. most agreement
        return min(remaining, key=lambda i: (mismatch_count(F, i), i))
    if heuristic == "greedy":
        from .synth import SynthesisOptions

        res, _ = _greedy(F, remaining, opts or SynthesisOptions(), not F.is_reversible(),
                         cost_model)
        return res.line
    raise ValueError(f"unknown ordering {heuristic!r}")


def choose(heuristic: str, F: CharFn, remaining: Iterable[int], opts,
           partial: bool = False, reversible: Optional[bool] = None):
    """Pick and decompose the next line; returns ``(result, F')``.

    Greedy reuses its trial decomposition instead of running it again.
    """
    from .synth import decompose_variable

    if heuristic == "greedy":
        return _greedy(F, remaining, opts, partial, None, reversible)
    i = next_line(heuristic, F, remaining)
    return decompose_variable(F, i, opts, partial, reversible)

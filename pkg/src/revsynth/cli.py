"""Command-line front end: ``synth``, ``verify`` and ``bench``.

Exit codes: 0 success, 1 bad input or failed check, 2 internal error or
I/O problem.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from typing import List, Optional

from .charfn import (FAMILIES, CharFn, CharFnError, Layout, evaluate_family,
                     family_block_order, generator)
from .circuit import (COST_MODELS, DEFAULT_COST_MODEL, Circuit, CircuitError,
                      circuit_to_charfn, cost, expand, simulate_words)
from .formats import FormatError, read_pla, read_real, read_spec, write_real
from .synth import ORDERINGS, InternalError, SynthesisError, SynthesisOptions, synthesize, \
    synthesize_partial
from .tt import TruthTable, TruthTableError, synthesize_tt

STATS_SCHEMA = 1

USER_ERRORS = (FormatError, CharFnError, CircuitError, SynthesisError, TruthTableError)


def _read_function(path: str, fmt: Optional[str]) -> CharFn:
    with open(path, encoding="ascii") as fh:
        text = fh.read()
    if fmt is None:
        ext = os.path.splitext(path)[1].lower()
        if ext == ".pla":
            fmt = "pla"
        elif ext == ".spec":
            fmt = "spec"
        else:
            first = next((ln.strip() for ln in text.splitlines()
                          if ln.strip() and not ln.strip().startswith("#")), "")
            fmt = "spec" if first.startswith(".lines") else "pla"
    return read_pla(text) if fmt == "pla" else read_spec(text)


def _table(F: CharFn) -> TruthTable:
    if not F.is_reversible():
        raise TruthTableError("the tt engine needs a total reversible function")
    return TruthTable(F.n, tuple(F.rows()))


def _check(circuit: Circuit, F: CharFn):
    """First specified input the circuit gets wrong, or ``None``."""
    C = circuit_to_charfn(circuit, F.layout)
    lay, f = F.layout, F.forest
    bad = f.smooth(F.F & ~C.F, lay.ys)
    if bad.is_false():
        return None
    cube = f.pick_minterm(bad, lay.xs)
    n = F.n
    word = sum(cube[lay.x[i]] << (n - 1 - i) for i in range(n))
    return word, F.lookup(word), C.lookup(word)


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)


def cmd_synth(args) -> int:
    try:
        F = _read_function(args.input, args.format)
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except USER_ERRORS as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    opts = SynthesisOptions(
        ordering=args.ordering,
        enable_single_gate_shortcut=not args.no_shortcut,
        enable_small_cycles=not args.no_small_cycles,
        rng_seed=args.seed,
        cost_model=args.cost_model,
    )
    try:
        t0 = time.perf_counter()
        if args.engine == "tt":
            circuit = synthesize_tt(_table(F), F.layout)
        elif F.is_reversible():
            circuit = synthesize(F, opts)
        else:
            circuit = synthesize_partial(F, opts)
        tof = expand(circuit)
        elapsed = time.perf_counter() - t0
    except InternalError as e:
        print(f"internal error: {e}", file=sys.stderr)
        return 2
    except USER_ERRORS as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    if args.verify_after:
        bad = _check(circuit, F)
        if bad is not None:
            n = F.n
            print(f"internal error: circuit maps {bad[0]:0{n}b} to {bad[2]:0{n}b}, "
                  f"expected {bad[1]:0{n}b}", file=sys.stderr)
            return 2
    report = cost(circuit, args.cost_model)
    stats = {
        "schema": STATS_SCHEMA,
        "engine": args.engine,
        "ordering": args.ordering if args.engine == "bdd" else "natural",
        "n": F.n,
        "st_gates": report.st_gates,
        "d": report.d,
        "q": report.q,
        "t": None if args.no_timing else round(elapsed, 6),
        "seed": args.seed,
        "cost_model": args.cost_model,
    }
    try:
        _write(args.output, write_real(tof))
        if args.stats:
            _write(args.stats, json.dumps(stats) + "\n")
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if not args.quiet:
        print(f"{F.n} lines: {report.st_gates} single-target gates, d={report.d}, "
              f"q={report.q}", file=sys.stderr)
    return 0


def cmd_verify(args) -> int:
    try:
        with open(args.circuit, encoding="ascii") as fh:
            circuit = read_real(fh.read())
        F = _read_function(args.spec, args.format)
    except (OSError, *USER_ERRORS) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if circuit.lines != F.n:
        print(f"mismatch: circuit has {circuit.lines} lines, spec has {F.n}")
        return 1
    bad = _check(circuit, F)
    if bad is None:
        print("equivalent")
        return 0
    n = F.n
    word, want, got = bad
    print(f"counterexample: input {word:0{n}b} expected {want:0{n}b} got {got:0{n}b}")
    return 1


def _parse_n_list(text: str) -> List[int]:
    try:
        out = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad line count list {text!r}") from None
    if not out or any(n < 1 for n in out):
        raise argparse.ArgumentTypeError("line counts must be positive")
    return out


def bench_one(family: str, n: int, k: int = 0, ordering: str = "natural",
              samples: int = 10000, seed: int = 0,
              cost_model: str = DEFAULT_COST_MODEL, layout: str = "cycles") -> dict:
    """Synthesise one generator instance and check it by random sampling."""
    t0 = time.perf_counter()
    order = family_block_order(family, n, k) if layout == "cycles" else None
    F = generator(family, n, k, Layout(n, order))
    circuit = synthesize(F, SynthesisOptions(ordering=ordering, rng_seed=seed,
                                             cost_model=cost_model))
    elapsed = time.perf_counter() - t0
    rng = random.Random(f"bench:{family}:{n}:{k}:{seed}")
    if n <= 16 and samples >= 1 << n:
        words = list(range(1 << n))
    else:
        words = [rng.getrandbits(n) for _ in range(samples)]
    got = simulate_words(circuit, words)
    failures = sum(1 for w, o in zip(words, got) if o != evaluate_family(family, n, w, k))
    checked = len(words)
    report = cost(circuit, cost_model)
    return {
        "family": family, "n": n, "k": k, "layout": layout, "st_gates": report.st_gates,
        "d": report.d, "q": report.q, "t": round(elapsed, 6),
        "samples": checked, "failures": failures, "cost_model": cost_model,
    }


def cmd_bench(args) -> int:
    status = 0
    for n in args.n_list:
        try:
            row = bench_one(args.family, n, args.k, args.ordering, args.samples,
                            args.seed, args.cost_model, args.layout)
        except InternalError as e:
            print(f"internal error: {e}", file=sys.stderr)
            return 2
        except USER_ERRORS as e:
            print(f"error: {e}", file=sys.stderr)
            return 1
        print(json.dumps(row), flush=True)
        if row["failures"]:
            status = 1
    return status


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="revsynth",
                                description="Ancilla-free reversible logic synthesis.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("synth", help="synthesise a circuit from a function")
    s.add_argument("--input", required=True)
    s.add_argument("--format", choices=("pla", "spec"))
    s.add_argument("--engine", choices=("bdd", "tt"), default="bdd")
    s.add_argument("--ordering", choices=ORDERINGS, default="natural")
    s.add_argument("--no-shortcut", action="store_true",
                   help="skip the single-gate check")
    s.add_argument("--no-small-cycles", action="store_true",
                   help="skip the batch resolution of cycles of length 1 and 2")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--cost-model", choices=sorted(COST_MODELS), default=DEFAULT_COST_MODEL)
    s.add_argument("--output", help="circuit file (.real); default stdout")
    s.add_argument("--stats", help="JSON-lines statistics file")
    s.add_argument("--no-timing", action="store_true",
                   help="write t as null so stats files are reproducible")
    s.add_argument("--verify-after", action="store_true",
                   help="check the circuit against the input before writing")
    s.add_argument("--quiet", action="store_true")
    s.set_defaults(func=cmd_synth)

    v = sub.add_parser("verify", help="check a circuit against a specification")
    v.add_argument("--circuit", required=True)
    v.add_argument("--spec", required=True)
    v.add_argument("--format", choices=("pla", "spec"))
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="scalability runs on generated functions")
    b.add_argument("--family", choices=FAMILIES, required=True)
    b.add_argument("--k", type=int, default=0, help="rotation amount (rotate only)")
    b.add_argument("--n-list", type=_parse_n_list, required=True)
    b.add_argument("--ordering", choices=ORDERINGS, default="natural")
    b.add_argument("--samples", type=int, default=10000)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--cost-model", choices=sorted(COST_MODELS), default=DEFAULT_COST_MODEL)
    b.add_argument("--layout", choices=("cycles", "natural"), default="cycles",
                   help="BDD block order: along the wire cycles (default) or by line index")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

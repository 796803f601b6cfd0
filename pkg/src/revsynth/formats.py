"""Text formats: PLA subset, explicit truth-table specs and ``.real`` circuits.

All writers emit ASCII with LF line endings and are deterministic.
``#`` starts a comment in every format.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .charfn import MAX_TABLE_LINES, CharFn, Layout, from_rows
from .circuit import Circuit, ToffoliGate, expand


class FormatError(ValueError):
    """Malformed document.  ``line`` is 1-based when known."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        s = raw.split("#", 1)[0].strip()
        if s:
            yield no, s


def _check_injective(n: int, rows: Sequence[Tuple[int, int, int]],
                     outputs: bool = True) -> None:
    """``rows`` holds ``(input, output, source line)``."""
    seen_in: Dict[int, int] = {}
    seen_out: Dict[int, int] = {}
    for x, y, no in rows:
        if x in seen_in:
            raise FormatError(f"input {x:0{n}b} already specified on line {seen_in[x]}", no)
        if outputs and y in seen_out:
            raise FormatError(f"output {y:0{n}b} already produced on line {seen_out[y]}", no)
        seen_in[x] = no
        seen_out[y] = no


# ---------------------------------------------------------------------- PLA

@dataclass
class PlaDocument:
    inputs: int
    outputs: int
    cubes: List[Tuple[str, str, int]] = field(default_factory=list)  # (in, out, line)
    input_names: List[str] = field(default_factory=list)
    output_names: List[str] = field(default_factory=list)

    def rows(self) -> List[Tuple[int, int, int]]:
        """Expand don't-cares into ``(input word, output word, line)``."""
        out = []
        for pattern, value, no in self.cubes:
            y = int(value, 2) if value else 0
            free = [k for k, ch in enumerate(pattern) if ch == "-"]
            base = int(pattern.replace("-", "0"), 2) if pattern else 0
            w = len(pattern)
            for m in range(1 << len(free)):
                x = base
                for b, k in enumerate(free):
                    if (m >> b) & 1:
                        x |= 1 << (w - 1 - k)
                out.append((x, y, no))
        return out


def parse_pla(text: str) -> PlaDocument:
    ni = no_ = None
    declared_p = None
    cubes: List[Tuple[str, str, int]] = []
    ilb: List[str] = []
    ob: List[str] = []
    ended = False
    for no, s in _lines(text):
        if ended:
            raise FormatError("content after .e", no)
        if s.startswith("."):
            parts = s.split()
            key = parts[0]
            args = parts[1:]
            if key in (".i", ".o", ".p"):
                if len(args) != 1 or not args[0].isdigit():
                    raise FormatError(f"{key} needs one non-negative integer", no)
                val = int(args[0])
                if key == ".i":
                    ni = val
                elif key == ".o":
                    no_ = val
                else:
                    declared_p = (val, no)
            elif key == ".ilb":
                ilb = args
            elif key == ".ob":
                ob = args
            elif key == ".type":
                if args != ["fd"]:
                    raise FormatError(f"unsupported .type {' '.join(args)!r} (only fd)", no)
            elif key in (".e", ".end"):
                ended = True
            else:
                raise FormatError(f"unsupported directive {key}", no)
            continue
        if ni is None or no_ is None:
            raise FormatError("cube row before .i and .o", no)
        parts = s.split()
        if len(parts) == 1 and ni + no_ == len(parts[0]):
            parts = [parts[0][:ni], parts[0][ni:]]
        if len(parts) != 2:
            raise FormatError("expected '<inputs> <outputs>'", no)
        pin, pout = parts
        if len(pin) != ni or len(pout) != no_:
            raise FormatError(f"row width {len(pin)}/{len(pout)} differs from .i {ni}/.o {no_}", no)
        if set(pin) - set("01-"):
            raise FormatError(f"bad input pattern {pin!r}", no)
        if set(pout) - set("01"):
            raise FormatError(f"bad output pattern {pout!r} (output don't-cares are not supported)", no)
        cubes.append((pin, pout, no))
    if ni is None or no_ is None:
        raise FormatError("missing .i or .o")
    if declared_p is not None and declared_p[0] != len(cubes):
        raise FormatError(f".p {declared_p[0]} but {len(cubes)} rows", declared_p[1])
    if ilb and len(ilb) != ni:
        raise FormatError(".ilb name count differs from .i")
    if ob and len(ob) != no_:
        raise FormatError(".ob name count differs from .o")
    return PlaDocument(ni, no_, cubes, ilb, ob)


def read_pla(text: str, layout: Optional[Layout] = None,
             injective: bool = True) -> CharFn:
    """Characteristic function of a reversible (possibly partial) PLA.

    With ``injective`` cleared repeated outputs are accepted, which gives
    the characteristic function of an irreversible function.
    """
    doc = parse_pla(text)
    if doc.inputs != doc.outputs:
        raise FormatError(f"reversible use needs .i == .o, got {doc.inputs} and {doc.outputs}")
    n = doc.inputs
    if not 1 <= n <= MAX_TABLE_LINES:
        raise FormatError(f"PLA files are limited to 1..{MAX_TABLE_LINES} lines, got {n}")
    rows = doc.rows()
    _check_injective(n, rows, injective)
    return from_rows(n, [(x, y) for x, y, _ in rows], layout, injective)


# --------------------------------------------------------------------- spec

def parse_spec(text: str) -> Tuple[int, List[Tuple[int, int, int]]]:
    n = None
    rows: List[Tuple[int, int, int]] = []
    ended = False
    for no, s in _lines(text):
        if ended:
            raise FormatError("content after .end", no)
        if s.startswith("."):
            parts = s.split()
            if parts[0] == ".lines":
                if n is not None:
                    raise FormatError("repeated .lines", no)
                if len(parts) != 2 or not parts[1].isdigit():
                    raise FormatError(".lines needs one integer", no)
                n = int(parts[1])
                if not 1 <= n <= MAX_TABLE_LINES:
                    raise FormatError(f"spec files support 1..{MAX_TABLE_LINES} lines", no)
            elif parts[0] == ".end":
                ended = True
            else:
                raise FormatError(f"unsupported directive {parts[0]}", no)
            continue
        if n is None:
            raise FormatError("row before .lines", no)
        parts = s.split()
        if len(parts) != 2:
            raise FormatError("expected '<input bits> <output bits>'", no)
        a, b = parts
        if len(a) != n or len(b) != n or set(a + b) - set("01"):
            raise FormatError(f"rows need two {n}-bit binary words", no)
        rows.append((int(a, 2), int(b, 2), no))
    if n is None:
        raise FormatError("missing .lines")
    _check_injective(n, rows)
    return n, rows


def read_spec(text: str, layout: Optional[Layout] = None) -> CharFn:
    n, rows = parse_spec(text)
    return from_rows(n, [(x, y) for x, y, _ in rows], layout)


def write_spec(F: CharFn) -> str:
    n = F.n
    if n > MAX_TABLE_LINES:
        raise FormatError(f"spec files support at most {MAX_TABLE_LINES} lines")
    out = [f".lines {n}"]
    for x, y in F.rows():
        out.append(f"{x:0{n}b} {y:0{n}b}")
    out.append(".end")
    return "\n".join(out) + "\n"


# --------------------------------------------------------------------- real

_GATE = re.compile(r"^t(\d+)$")


def write_real(circuit: Circuit) -> str:
    """RevLib-style circuit; single-target gates are written expanded."""
    n = circuit.lines
    names = [f"x{k + 1}" for k in range(n)]
    out = [
        ".version 1.0",
        f".numvars {n}",
        ".variables " + " ".join(names),
        ".inputs " + " ".join(names),
        ".outputs " + " ".join(names),
        ".constants " + "-" * n,
        ".garbage " + "-" * n,
        ".begin",
    ]
    for g in expand(circuit).gates:
        ctrl = [("" if pol else "-") + names[line] for line, pol in g.controls]
        out.append(f"t{len(ctrl) + 1} " + " ".join(ctrl + [names[g.target]]))
    out.append(".end")
    return "\n".join(out) + "\n"


def read_real(text: str) -> Circuit:
    n = None
    names: Optional[List[str]] = None
    gates: List[ToffoliGate] = []
    state = "header"
    for no, s in _lines(text):
        parts = s.split()
        key = parts[0]
        if state == "done":
            raise FormatError("content after .end", no)
        if state == "header":
            if key == ".numvars":
                if len(parts) != 2 or not parts[1].isdigit() or int(parts[1]) < 1:
                    raise FormatError(".numvars needs a positive integer", no)
                n = int(parts[1])
            elif key == ".variables":
                names = parts[1:]
                if len(set(names)) != len(names):
                    raise FormatError("duplicate variable name", no)
            elif key in (".version", ".inputs", ".outputs", ".constants", ".garbage",
                         ".model", ".inputbus", ".outputbus", ".define", ".enddefine"):
                pass
            elif key == ".begin":
                if n is None:
                    raise FormatError(".begin before .numvars", no)
                if names is None:
                    names = [f"x{k + 1}" for k in range(n)]
                if len(names) != n:
                    raise FormatError(f".variables lists {len(names)} names for {n} lines", no)
                index = {name: k for k, name in enumerate(names)}
                state = "body"
            else:
                raise FormatError(f"unexpected {key} in header", no)
            continue
        if key == ".end":
            state = "done"
            continue
        m = _GATE.match(key)
        if not m:
            raise FormatError(f"unsupported gate {key!r} (only t<k> Toffoli gates)", no)
        wires = parts[1:]
        if int(m.group(1)) != len(wires) or not wires:
            raise FormatError(f"{key} expects {m.group(1)} wires, got {len(wires)}", no)
        ctrls = []
        for w in wires[:-1]:
            pol = 0 if w.startswith("-") else 1
            name = w.lstrip("-")
            if name not in index:
                raise FormatError(f"undeclared wire {name!r}", no)
            ctrls.append((index[name], pol))
        tname = wires[-1]
        if tname not in index:
            raise FormatError(f"undeclared target wire {tname!r}", no)
        try:
            gates.append(ToffoliGate(index[tname], tuple(ctrls)))
        except ValueError as e:
            raise FormatError(str(e), no) from None
    if state == "header":
        raise FormatError("missing .begin")
    if state == "body":
        raise FormatError("missing .end")
    return Circuit(n, gates)

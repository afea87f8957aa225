"""Reader and writer for the supported BLIF subset.

Supported directives: ``.model``, ``.inputs``, ``.outputs``, ``.names``
(LUT), ``.latch`` (FF), ``.subckt dsp|bram`` (H-blocks) and ``.end``.
``#`` starts a comment and a trailing ``\\`` continues a line.

H-block ports are matched by name: formals called ``out``, ``dout`` or
``q`` (optionally indexed, e.g. ``out3`` or ``dout[2]``) are outputs,
everything else is an input.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator

from ..errors import NetlistError
from ..model import Block, BlockType, LogicalNetlist

HBLOCK_KINDS = {"dsp": BlockType.DSP, "bram": BlockType.BRAM}
_OUTPUT_FORMAL = re.compile(r"^(out|dout|q)(\d+|\[\d+\])?$")


def _logical_lines(text: str) -> Iterator[tuple[int, list[tuple[int, str]]]]:
    """Yield (line number, [(column, token), ...]) with comments stripped and
    continuations joined. Columns are 1-based."""
    pending: list[tuple[int, str]] = []
    start = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        cont = line.endswith("\\")
        if cont:
            line = line[:-1]
        toks = [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", line)]
        if start is None:
            start = lineno
        pending.extend(toks)
        if cont:
            continue
        if pending:
            yield start, pending
        pending, start = [], None
    if pending:
        yield start, pending


def parse_netlist(text: str) -> LogicalNetlist:
    """Parse a BLIF-subset document into a validated netlist.

    Raises :class:`NetlistError` carrying the line (and column where
    meaningful) for syntax errors, unknown directives, multiple drivers,
    undriven nets and unsupported ``.subckt`` models.
    """
    name = None
    inputs: list[str] = []
    outputs: list[str] = []
    cells: list[Block] = []
    driver_line: dict[str, int] = {}
    use_line: dict[str, int] = {}
    current_names: dict | None = None
    ended = False

    def drive(net, line, col):
        if net in driver_line:
            raise NetlistError(f"net {net!r} has multiple drivers (first driven on line {driver_line[net]})",
                               line, col)
        driver_line[net] = line

    def use(net, line):
        use_line.setdefault(net, line)

    def close_names():
        nonlocal current_names
        if current_names is not None:
            c = current_names
            cells.append(Block(f"lut:{c['out']}", BlockType.LUT, tuple(c["ins"]), (c["out"],),
                               cover=tuple(c["cover"])))
            current_names = None

    for line, toks in _logical_lines(text):
        col, head = toks[0]
        args = [t for _, t in toks[1:]]
        if ended:
            raise NetlistError(f"content after .end: {head!r}", line, col)
        if not head.startswith("."):
            if current_names is None:
                raise NetlistError(f"unexpected token {head!r} outside a .names cover", line, col)
            row = " ".join(t for _, t in toks)
            if not re.fullmatch(r"[01\-]* ?[01]", row):
                raise NetlistError(f"malformed cover row {row!r}", line, col)
            current_names["cover"].append(row)
            continue
        close_names()
        if head == ".model":
            if name is not None:
                raise NetlistError("only one .model per file is supported", line, col)
            if len(args) != 1:
                raise NetlistError(".model takes exactly one name", line, col)
            name = args[0]
        elif head == ".inputs":
            for c, net in toks[1:]:
                drive(net, line, c)
                inputs.append(net)
        elif head == ".outputs":
            for c, net in toks[1:]:
                if net in outputs:
                    raise NetlistError(f"output {net!r} listed twice", line, c)
                use(net, line)
                outputs.append(net)
        elif head == ".names":
            if not args:
                raise NetlistError(".names needs at least an output net", line, col)
            c_out, out = toks[-1]
            drive(out, line, c_out)
            for n in args[:-1]:
                use(n, line)
            current_names = {"ins": args[:-1], "out": out, "cover": []}
        elif head == ".latch":
            if len(args) not in (2, 3, 4, 5):
                raise NetlistError(".latch expects: input output [type control] [init]", line, col)
            d, q = args[0], args[1]
            latch_type = clock = init = None
            rest = args[2:]
            if len(rest) >= 2:
                latch_type, clock = rest[0], rest[1]
                rest = rest[2:]
            if rest:
                init = rest[0]
            if latch_type is not None and latch_type not in ("fe", "re", "ah", "al", "as"):
                raise NetlistError(f"unknown latch type {latch_type!r}", line, toks[3][0])
            if clock == "NIL":
                clock = None
            use(d, line)
            if clock is not None:
                use(clock, line)
            drive(q, line, toks[2][0])
            cells.append(Block(f"ff:{q}", BlockType.FF, (d,), (q,), clock=clock, latch_type=latch_type, init=init))
        elif head == ".subckt":
            if not args:
                raise NetlistError(".subckt needs a model name", line, col)
            model = args[0]
            if model not in HBLOCK_KINDS:
                raise NetlistError(f"unsupported .subckt model {model!r} (supported: {', '.join(HBLOCK_KINDS)})",
                                   line, toks[1][0])
            f_in, a_in, f_out, a_out = [], [], [], []
            for c, conn in toks[2:]:
                formal, eq, actual = conn.partition("=")
                if not eq or not formal or not actual:
                    raise NetlistError(f"expected formal=actual, got {conn!r}", line, c)
                if formal in f_in or formal in f_out:
                    raise NetlistError(f"port {formal!r} connected twice", line, c)
                if _OUTPUT_FORMAL.match(formal):
                    drive(actual, line, c)
                    f_out.append(formal)
                    a_out.append(actual)
                else:
                    use(actual, line)
                    f_in.append(formal)
                    a_in.append(actual)
            if not a_out or not a_in:
                raise NetlistError(f".subckt {model} needs at least one input and one output port", line, col)
            cells.append(Block(f"{model}:{a_out[0]}", HBLOCK_KINDS[model], tuple(a_in), tuple(a_out),
                               formals=tuple(f_in + f_out)))
        elif head == ".end":
            ended = True
        else:
            raise NetlistError(f"unsupported directive {head!r}", line, col)
    close_names()
    if name is None:
        raise NetlistError("missing .model")
    for net, line in sorted(use_line.items(), key=lambda kv: kv[1]):
        if net not in driver_line:
            raise NetlistError(f"net {net!r} is used but never declared or driven", line)

    blocks = [Block(f"in:{n}", BlockType.INPUT, outputs=(n,)) for n in inputs]
    blocks += [Block(f"out:{n}", BlockType.OUTPUT, inputs=(n,)) for n in outputs]
    return LogicalNetlist(name, tuple(blocks + cells))


def write_netlist(netlist: LogicalNetlist) -> str:
    """Canonical BLIF text; ``parse_netlist(write_netlist(n)) == n``."""
    out = [f".model {netlist.name}"]
    ins = [b.outputs[0] for b in netlist.blocks if b.type is BlockType.INPUT]
    outs = [b.inputs[0] for b in netlist.blocks if b.type is BlockType.OUTPUT]
    out.append(" ".join([".inputs", *ins]))
    out.append(" ".join([".outputs", *outs]))
    for b in netlist.blocks:
        if b.type is BlockType.LUT:
            out.append(" ".join([".names", *b.inputs, b.outputs[0]]))
            out.extend(b.cover)
        elif b.type is BlockType.FF:
            parts = [".latch", b.inputs[0], b.outputs[0]]
            if b.latch_type is not None or b.clock is not None:
                parts += [b.latch_type or "re", b.clock or "NIL"]
            if b.init is not None:
                parts.append(b.init)
            out.append(" ".join(parts))
        elif b.kind is not None:
            actuals = b.inputs + b.outputs
            out.append(" ".join([".subckt", b.kind, *(f"{f}={a}" for f, a in zip(b.formals, actuals))]))
    out.append(".end")
    return "\n".join(out) + "\n"


def read_netlist(path) -> LogicalNetlist:
    with open(path, encoding="utf-8") as fh:
        return parse_netlist(fh.read())


def netlist_summary(netlist: LogicalNetlist) -> dict[str, int]:
    return {t.value.lower(): netlist.count(t) for t in BlockType}


def iter_netlist_files(paths: Iterable) -> list:
    from pathlib import Path

    found = []
    for p in map(Path, paths):
        found.extend(sorted(p.rglob("*.blif")) if p.is_dir() else [p])
    return found

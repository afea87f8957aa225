"""Command-line front end.

Exit codes: 0 success, 1 analysis error (cycle, capacity, target delay not
below the critical path, ...), 2 usage or input error (bad flags, missing
or malformed files).
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .congruence import profile
from .errors import ArchitectureError, CongruenceError, NetlistError
from .fabric import SyntheticProfile, generate_synthetic, implement
from .fabric.synthetic import BOTTLENECKS
from .fabric.variants import VARIANT_PATTERNS, variant
from .io.architecture import read_architecture, write_architecture
from .io.netlist import iter_netlist_files, read_netlist, write_netlist
from .io.radar import write_radar_svg
from .io.report import ResultRow, format_table, summarize, write_path_report, write_report
from .model import ArchitectureSpec, BlockType, ProfileConfig
from .sta import critical_path
from .units import parse_duration

SEED_ENV = "CONGRUENCE_SEED"
log = logging.getLogger("congruence_profiler")


class InputError(Exception):
    """Bad user input; maps to exit code 2."""


def _duration(text: str) -> float:
    try:
        value = parse_duration(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    return value


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 1
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"{SEED_ENV}={raw!r} is not an integer") from None


def _existing(path: str) -> Path:
    p = Path(path)
    if not p.exists():
        raise InputError(f"file not found: {path}")
    return p


def _load_arch(ref: Optional[str]) -> ArchitectureSpec:
    """A path to an architecture file, or the name of a built-in variant."""
    if ref is None:
        return variant("baseline")
    if not Path(ref).exists() and ref in VARIANT_PATTERNS:
        return variant(ref)
    return read_architecture(_existing(ref))


def _config(args) -> ProfileConfig:
    return ProfileConfig(beta_ps=args.beta, epsilon_ps=args.epsilon, per_kind_hrcs=args.per_kind_hrcs,
                         normalize_aggregate=args.normalize, clamp_scores=args.clamp)


def _f(v, digits=3) -> str:
    return "-" if v is None else f"{v:.{digits}f}"


def _write(path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


def _report_format(args) -> str:
    if args.format:
        return args.format
    return "json" if args.out and str(args.out).endswith(".json") else "csv"


# ---------------------------------------------------------------- commands

def cmd_profile(args) -> int:
    netlist = read_netlist(_existing(args.netlist))
    arch = _load_arch(args.arch)
    design = implement(netlist, arch, seed=args.seed, effort=args.effort)
    before = design.placement_hash()
    scores = profile(design, _config(args))
    after = design.placement_hash()

    rows = [(name.upper(), _f(scores.alphas_ps[name] / 1000.0), _f(getattr(scores, name)))
            for name in ("ics", "hrcs", "lbcs")]
    rows += [(f"HRCS:{k}", _f(scores.alphas_ps[f'hrcs:{k}'] / 1000.0), _f(v)) for k, v in scores.per_kind.items()]
    out = sys.stdout
    out.write(f"design {netlist.name} on {arch.name} (seed {args.seed})\n\n")
    out.write(format_table(("class", "alpha_ns", "score"), rows))
    out.write(f"\naggregate_raw        {scores.aggregate_raw:.3f}\n")
    out.write(f"aggregate_normalized {scores.aggregate_normalized:.3f}\n")
    out.write("\naudit:\n")
    out.write(f"  beta_ps={scores.beta_ps:g}\n")
    out.write(f"  epsilon_ps={scores.epsilon_ps:g}\n")
    out.write(f"  gamma_ps={scores.gamma_ps:g}\n")
    for name, a in scores.alphas_ps.items():
        out.write(f"  alpha_ps[{name}]={a:g}\n")
    out.write(f"  placement_hash_gamma={before}\n")
    out.write(f"  placement_hash_masked={after}\n")
    for w in scores.warnings:
        out.write(f"  warning: {w}\n")

    if args.radar:
        write_radar_svg(scores, output=args.radar, clamp=args.clamp, title=f"{netlist.name} on {arch.name}")
    if args.out:
        extra = {"placement_hash": before, "seed": args.seed}
        _write(args.out, write_report([ResultRow(netlist.name, arch.name, scores, extra)], _report_format(args),
                                      normalized=args.normalize))
    return 0


def _benchmarks(root: Path) -> list[tuple[str, Path]]:
    if root.is_file():
        return [(root.stem, root)]
    found = []
    for p in iter_netlist_files([root]):
        rel = p.relative_to(root).with_suffix("")
        found.append((rel.as_posix(), p))
    return found


def cmd_sweep(args) -> int:
    root = _existing(args.netlists)
    benches = _benchmarks(root)
    if not benches:
        raise InputError(f"no .blif netlists under {root}")
    archs = [_load_arch(a) for a in args.archs]
    names = [a.name for a in archs]
    if len(set(names)) != len(names):
        raise InputError(f"architecture names must be distinct, got {names}")
    config = _config(args)

    results, failures = [], []
    for bench, path in benches:
        try:
            netlist = read_netlist(path)
        except NetlistError as exc:
            failures.append(f"{bench}: {exc}")
            continue
        for arch in archs:
            try:
                design = implement(netlist, arch, seed=args.seed, effort=args.effort)
                scores = profile(design, config)
            except CongruenceError as exc:
                failures.append(f"{bench} on {arch.name}: {exc}")
                continue
            results.append(ResultRow(bench, arch.name, scores, {"placement_hash": design.placement_hash()}))
    for f in failures:
        print(f"skipped {f}", file=sys.stderr)
    if not results:
        print("error: every benchmark failed", file=sys.stderr)
        return 1

    summary = summarize(results, args.normalize)
    table = [(r.benchmark, r.architecture, _f(r.scores.ics), _f(r.scores.hrcs), _f(r.scores.lbcs),
              _f(r.scores.aggregate(args.normalize))) for r in summary.rows]
    for m in summary.means:
        table.append((f"mean:{m['suite']}" if m["suite"] else "mean", m["architecture"], _f(m["ics"]),
                      _f(m["hrcs"]), _f(m["lbcs"]), _f(m[summary.ranked_by])))
    for c in summary.combined:
        table.append(("aggregate", c["architecture"], "", "", "", _f(c[summary.ranked_by])))
    sys.stdout.write(format_table(("benchmark", "architecture", "ICS", "HRCS", "LBCS", "aggregate"), table))
    sys.stdout.write("\nranking (lowest aggregate first):\n")
    for i, (arch, value) in enumerate(summary.ranking, 1):
        sys.stdout.write(f"  {i}. {arch}  {value:.3f}\n")

    if args.out:
        meta = {"seed": args.seed, "beta_ps": config.beta_ps, "epsilon_ps": config.epsilon_ps}
        _write(args.out, write_report(results, _report_format(args), normalized=args.normalize, meta=meta))
    if args.figures:
        from .plotting import render_figures

        for p in render_figures(results, args.figures, normalized=args.normalize):
            sys.stdout.write(f"wrote {p}\n")
    return 1 if failures and args.strict else 0


def cmd_generate(args) -> int:
    arch = _load_arch(args.arch)
    spec = SyntheticProfile.preset(args.bottleneck, args.seed, luts=args.luts, ffs=args.ffs, dsps=args.dsps,
                                   brams=args.brams, ios=args.ios, depth=args.depth)
    netlist = generate_synthetic(spec, arch)
    text = write_netlist(netlist)
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    # keep stdout clean for the netlist when no file is given
    dest = sys.stdout if args.out else sys.stderr
    counts = ", ".join(f"{t.value}={netlist.count(t)}" for t in BlockType)
    print(f"generated {netlist.name}: bottleneck={spec.bottleneck} depth={spec.depth} {counts}", file=dest)
    return 0


def cmd_sta(args) -> int:
    netlist = read_netlist(_existing(args.netlist))
    arch = _load_arch(args.arch)
    design = implement(netlist, arch, seed=args.seed, effort=args.effort)
    report = critical_path(design.timing_graph)
    if args.json:
        sys.stdout.write(write_path_report(report, {"design": netlist.name, "architecture": arch.name,
                                                    "seed": args.seed}))
        return 0
    out = sys.stdout
    out.write(f"critical path of {netlist.name} on {arch.name}: {report.delay_ps:g} ps\n\n")
    segs = [(report.path[0], "", "")]
    for node, d, e in zip(report.path[1:], report.edge_delays, _edge_classes(design.timing_graph, report)):
        segs.append((node, f"{d:g}", e))
    out.write(format_table(("node", "delay_ps", "class"), segs))
    out.write("\nbreakdown:\n")
    for cls, d in report.per_class_breakdown.items():
        out.write(f"  {str(cls):<20} {d:g} ps\n")
    return 0


def _edge_classes(graph, report) -> list[str]:
    # recover the class of each hop; the path report keeps delays only
    out = []
    for src, dst, d in zip(report.path, report.path[1:], report.edge_delays):
        cands = [graph.edges[i] for i in graph.fanout[src] if graph.edges[i].dst == dst and graph.edges[i].delay == d]
        out.append(str(min(cands, key=lambda e: e.dclass).dclass) if cands else "?")
    return out


def cmd_arch(args) -> int:
    arch = variant(args.variant, width=args.width, height=args.height)
    text = write_architecture(arch)
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="congruence", description="Congruence profiling for FPGA architectures.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="log warnings to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def impl_flags(sp):
        sp.add_argument("--seed", type=int, default=None, help=f"placement seed (default ${SEED_ENV} or 1)")
        sp.add_argument("--effort", type=float, default=1.0, help="annealing effort multiplier")

    def score_flags(sp):
        sp.add_argument("--beta", type=_duration, default=200.0, help="target delay, e.g. 0.2ns (default)")
        sp.add_argument("--epsilon", type=_duration, default=0.0, help="masked delay value (default 0ps)")
        sp.add_argument("--per-kind-hrcs", action="store_true", help="also score each H-block kind")
        sp.add_argument("--normalize", action="store_true", help="rank by aggregate / sqrt(n)")
        sp.add_argument("--clamp", action="store_true", help="clamp scores into [0, 1]")
        sp.add_argument("--out", help="write the report to this file")
        sp.add_argument("--format", choices=("csv", "json"), help="report format (default from --out suffix)")

    sp = sub.add_parser("profile", help="score one netlist on one architecture")
    sp.add_argument("netlist")
    sp.add_argument("arch", nargs="?", help="architecture file or built-in variant (default baseline)")
    impl_flags(sp)
    score_flags(sp)
    sp.add_argument("--radar", help="write a radar svg here")
    sp.set_defaults(func=cmd_profile)

    sp = sub.add_parser("sweep", help="score every netlist on every architecture")
    sp.add_argument("netlists", help="directory searched recursively for .blif files; subdirectories are suites")
    sp.add_argument("archs", nargs="+", help="architecture files or built-in variants")
    impl_flags(sp)
    score_flags(sp)
    sp.add_argument("--strict", action="store_true", help="exit 1 if any benchmark fails")
    sp.add_argument("--figures", help="render summary svg figures into this directory")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("generate", help="write a synthetic netlist with a chosen bottleneck")
    sp.add_argument("--bottleneck", choices=BOTTLENECKS, required=True)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--arch", help="architecture whose capacity must fit the design")
    for name in ("luts", "ffs", "dsps", "brams", "ios", "depth"):
        sp.add_argument(f"--{name}", type=int)
    sp.add_argument("--out", help="output .blif (default stdout)")
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("sta", help="report the critical path of a placed netlist")
    sp.add_argument("netlist")
    sp.add_argument("arch", nargs="?")
    impl_flags(sp)
    sp.add_argument("--json", action="store_true", help="machine-readable output")
    sp.set_defaults(func=cmd_sta)

    sp = sub.add_parser("arch", help="print a built-in architecture variant as YAML")
    sp.add_argument("variant", choices=sorted(VARIANT_PATTERNS))
    sp.add_argument("--width", type=int, default=26)
    sp.add_argument("--height", type=int, default=16)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_arch)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING if args.verbose else logging.ERROR,
                        format="%(levelname)s: %(message)s")
    try:
        if getattr(args, "seed", 0) is None:
            args.seed = _default_seed()
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (NetlistError, ArchitectureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CongruenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        # e.g. radar values out of range without --clamp
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

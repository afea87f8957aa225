"""Score reports (CSV and JSON) and critical-path reports (JSON).

A benchmark named ``suite/name`` belongs to ``suite``; benchmarks without a
slash form one unnamed suite. Reports carry one row per (benchmark,
architecture), a mean row per (suite, architecture), a combined
``aggregate`` row per architecture when more than one suite is present
(the sum of that architecture's suite means) and a ranking, lowest
aggregate first.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Optional, Sequence

from ..congruence import mean_score, rank_architectures
from ..model import DelayClass, ScoreSet
from ..sta import PathReport

REPORT_FORMAT = "congruence-report/1"
PATH_FORMAT = "congruence-path/1"
CSV_COLUMNS = ("benchmark", "architecture", "ics", "hrcs", "lbcs",
               "aggregate_raw", "aggregate_normalized", "gamma_ns", "beta_ns")
_SCORE_FIELDS = ("ics", "hrcs", "lbcs", "aggregate_raw", "aggregate_normalized")


def suite_of(benchmark: str) -> str:
    return benchmark.split("/", 1)[0] if "/" in benchmark else ""


@dataclass(frozen=True)
class ResultRow:
    benchmark: str
    architecture: str
    scores: ScoreSet
    # extra audit fields, e.g. placement hashes
    extra: Mapping[str, Any] = field(default_factory=dict)


@dataclass
class Summary:
    rows: list[ResultRow]
    means: list[dict]          # suite, architecture, count and averaged fields
    combined: list[dict]       # architecture, aggregate_raw, aggregate_normalized
    ranking: list[tuple[str, float]]
    ranked_by: str


def _rows(results: Iterable) -> list[ResultRow]:
    rows = []
    for r in results:
        rows.append(r if isinstance(r, ResultRow) else ResultRow(*r))
    return sorted(rows, key=lambda r: (suite_of(r.benchmark), r.benchmark, r.architecture))


def summarize(results: Iterable, normalized: bool = False) -> Summary:
    rows = _rows(results)
    if not rows:
        raise ValueError("no results to report")
    groups: dict[tuple[str, str], list[ScoreSet]] = {}
    for r in rows:
        groups.setdefault((suite_of(r.benchmark), r.architecture), []).append(r.scores)
    means = []
    for (suite, arch), sets in sorted(groups.items()):
        m = {"suite": suite, "architecture": arch, "count": len(sets)}
        for f in _SCORE_FIELDS:
            vals = [getattr(s, f) for s in sets if getattr(s, f) is not None]
            m[f] = mean_score(vals) if vals else None
        means.append(m)

    suites = sorted({m["suite"] for m in means})
    archs = sorted({m["architecture"] for m in means})
    combined = []
    totals = {}
    for arch in archs:
        mine = [m for m in means if m["architecture"] == arch]
        entry = {"architecture": arch}
        for f in ("aggregate_raw", "aggregate_normalized"):
            entry[f] = math.fsum(m[f] for m in mine)
        combined.append(entry)
        totals[arch] = entry["aggregate_normalized" if normalized else "aggregate_raw"]
    order = rank_architectures(totals)
    return Summary(rows, means, combined if len(suites) > 1 else [],
                   [(a, totals[a]) for a in order],
                   "aggregate_normalized" if normalized else "aggregate_raw")


def _fmt(v: Optional[float]) -> str:
    if v is None:
        return ""
    s = f"{v:.3f}"
    return "0.000" if s == "-0.000" else s


def write_report(results: Iterable, format: str = "csv", normalized: bool = False,
                 meta: Optional[Mapping[str, Any]] = None) -> str:
    """Render results as ``"csv"`` (3-decimal fixed point) or ``"json"``
    (full precision with audit fields). Rows are sorted by suite, benchmark
    and architecture, so input order does not matter."""
    s = summarize(results, normalized)
    if format == "csv":
        return _write_csv(s)
    if format in ("json", "structured"):
        return _write_json(s, meta)
    raise ValueError(f"unknown report format {format!r} (csv or json)")


def _write_csv(s: Summary) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in s.rows:
        sc = r.scores
        w.writerow([r.benchmark, r.architecture, *(_fmt(getattr(sc, f)) for f in _SCORE_FIELDS),
                    _fmt(sc.gamma_ps / 1000.0), _fmt(sc.beta_ps / 1000.0)])
    for m in s.means:
        label = f"mean:{m['suite']}" if m["suite"] else "mean"
        w.writerow([label, m["architecture"], *(_fmt(m[f]) for f in _SCORE_FIELDS), "", ""])
    for c in s.combined:
        w.writerow(["aggregate", c["architecture"], "", "", "",
                    _fmt(c["aggregate_raw"]), _fmt(c["aggregate_normalized"]), "", ""])
    col = CSV_COLUMNS.index(s.ranked_by)
    for i, (arch, value) in enumerate(s.ranking, 1):
        row = [f"rank:{i}", arch] + [""] * (len(CSV_COLUMNS) - 2)
        row[col] = _fmt(value)
        w.writerow(row)
    return buf.getvalue()


def scoreset_to_dict(sc: ScoreSet) -> dict:
    return {
        "ics": sc.ics,
        "hrcs": sc.hrcs,
        "lbcs": sc.lbcs,
        "per_kind": dict(sc.per_kind),
        "aggregate_raw": sc.aggregate_raw,
        "aggregate_normalized": sc.aggregate_normalized,
        "raw_scores": dict(sc.raw_scores),
        "gamma_ps": sc.gamma_ps,
        "alphas_ps": dict(sc.alphas_ps),
        "beta_ps": sc.beta_ps,
        "epsilon_ps": sc.epsilon_ps,
        "warnings": list(sc.warnings),
    }


def scoreset_from_dict(d: Mapping[str, Any]) -> ScoreSet:
    return ScoreSet(
        ics=d["ics"], hrcs=d["hrcs"], lbcs=d["lbcs"],
        aggregate_raw=d["aggregate_raw"],
        aggregate_normalized=d["aggregate_normalized"],
        gamma_ps=d["gamma_ps"],
        alphas_ps=dict(d["alphas_ps"]),
        beta_ps=d["beta_ps"],
        epsilon_ps=d.get("epsilon_ps", 0.0),
        per_kind=dict(d.get("per_kind", {})),
        raw_scores=dict(d.get("raw_scores", {})),
        warnings=tuple(d.get("warnings", ())),
    )


def _write_json(s: Summary, meta) -> str:
    doc = {
        "format": REPORT_FORMAT,
        "meta": dict(meta or {}),
        "results": [
            {"benchmark": r.benchmark, "suite": suite_of(r.benchmark), "architecture": r.architecture,
             "scores": scoreset_to_dict(r.scores), "extra": dict(r.extra)}
            for r in s.rows
        ],
        "means": s.means,
        "combined": s.combined,
        "ranking": {"by": s.ranked_by, "order": [{"architecture": a, "value": v} for a, v in s.ranking]},
    }
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def parse_report_document(text: str) -> dict:
    doc = json.loads(text)
    if not isinstance(doc, dict) or doc.get("format") != REPORT_FORMAT:
        raise ValueError(f"not a {REPORT_FORMAT} document")
    return doc


def parse_report(text: str) -> list[ResultRow]:
    """Rows of a JSON report, in report order, with their ScoreSets restored exactly."""
    doc = parse_report_document(text)
    return [ResultRow(r["benchmark"], r["architecture"], scoreset_from_dict(r["scores"]), r.get("extra", {}))
            for r in doc["results"]]


def read_csv_report(text: str) -> list[dict[str, str]]:
    return list(csv.DictReader(io.StringIO(text)))


# ---------------------------------------------------------------- paths

def path_report_to_dict(report: PathReport) -> dict:
    return {
        "delay_ps": report.delay_ps,
        "path": list(report.path),
        "edge_delays_ps": list(report.edge_delays),
        "per_class_breakdown_ps": {str(k): v for k, v in report.per_class_breakdown.items()},
    }


def write_path_report(report: PathReport, meta: Optional[Mapping[str, Any]] = None) -> str:
    doc = {"format": PATH_FORMAT, "meta": dict(meta or {}), "critical_path": path_report_to_dict(report)}
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def parse_path_report(text: str) -> PathReport:
    doc = json.loads(text)
    if not isinstance(doc, dict) or doc.get("format") != PATH_FORMAT:
        raise ValueError(f"not a {PATH_FORMAT} document")
    cp = doc["critical_path"]
    return PathReport(
        cp["delay_ps"], tuple(cp["path"]),
        {DelayClass.parse(k): v for k, v in cp["per_class_breakdown_ps"].items()},
        tuple(cp["edge_delays_ps"]),
    )


def format_table(headers: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    """Plain aligned text table for terminal output."""
    widths = [max(len(str(h)), *(len(str(r[i])) for r in rows)) if rows else len(str(h))
              for i, h in enumerate(headers)]
    line = lambda cells: "  ".join(str(c).ljust(w) for c, w in zip(cells, widths)).rstrip()
    out = [line(headers), line("-" * w for w in widths)]
    out += [line(r) for r in rows]
    return "\n".join(out) + "\n"

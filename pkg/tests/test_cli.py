import json
import subprocess
import sys

import pytest

from congruence_profiler.cli import main
from congruence_profiler.io import parse_path_report, parse_report
from congruence_profiler.io.report import read_csv_report


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture(scope="module")
def logic_blif(tmp_path_factory):
    path = tmp_path_factory.mktemp("gen") / "logic.blif"
    assert main(["generate", "--bottleneck", "logic-bound", "--seed", "3", "--out", str(path)]) == 0
    return path


def audit(out):
    return dict(line.strip().split("=", 1) for line in out.splitlines() if line.startswith("  ") and "=" in line)


class TestProfile:
    def test_logic_bound_lbcs_max(self, capsys, logic_blif, tmp_path):
        code, out, _ = run(capsys, "profile", logic_blif, "--out", tmp_path / "r.json")
        assert code == 0
        (row,) = parse_report((tmp_path / "r.json").read_text())
        s = row.scores
        assert s.lbcs == max(s.ics, s.hrcs, s.lbcs)

    def test_beta_echo_and_hash(self, capsys, logic_blif):
        code, out, _ = run(capsys, "profile", logic_blif, "--beta", "0.2ns")
        a = audit(out)
        assert a["beta_ps"] == "200"
        assert a["placement_hash_gamma"] == a["placement_hash_masked"]
        assert float(a["gamma_ps"]) >= max(float(a[f"alpha_ps[{c}]"]) for c in ("ics", "hrcs", "lbcs"))

    def test_radar(self, capsys, logic_blif, tmp_path):
        svg = tmp_path / "r.svg"
        assert run(capsys, "profile", logic_blif, "--radar", svg)[0] == 0
        assert svg.read_text().count("<text") == 3

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "profile", "does/not/exist.blif")
        assert code == 2
        assert "file not found" in err

    def test_bad_duration_is_usage_error(self, capsys, logic_blif):
        with pytest.raises(SystemExit) as exc:
            main(["profile", str(logic_blif), "--beta", "fast"])
        assert exc.value.code == 2

    def test_beta_above_gamma(self, capsys, logic_blif):
        code, _, err = run(capsys, "profile", logic_blif, "--beta", "1000ns")
        assert code == 1
        assert "not below" in err

    def test_malformed_netlist(self, capsys, tmp_path):
        bad = tmp_path / "bad.blif"
        bad.write_text(".model m\n.inputs a\n.bogus\n.end\n")
        code, _, err = run(capsys, "profile", bad)
        assert code == 2 and "line 3" in err

    def test_seed_from_env(self, capsys, logic_blif, monkeypatch):
        monkeypatch.setenv("CONGRUENCE_SEED", "5")
        _, out, _ = run(capsys, "profile", logic_blif)
        assert "(seed 5)" in out


class TestSta:
    def test_single_lut(self, capsys, data_dir):
        code, out, _ = run(capsys, "sta", data_dir / "netlists" / "handwritten" / "passthrough.blif")
        assert code == 0
        assert "interconnect" in out and "logic" in out

    def test_json(self, capsys, data_dir):
        code, out, _ = run(capsys, "sta", data_dir / "netlists" / "handwritten" / "passthrough.blif", "--json")
        r = parse_path_report(out)
        assert len(r.path) == 4
        assert r.delay_ps == sum(r.edge_delays) == sum(r.per_class_breakdown.values())

    def test_cycle(self, capsys, tmp_path):
        loop = tmp_path / "loop.blif"
        loop.write_text(".model loop\n.inputs a\n.outputs y\n.names a z x\n11 1\n.names x z\n1 1\n"
                        ".names x y\n1 1\n.end\n")
        code, _, err = run(capsys, "sta", loop)
        assert code == 1
        assert "cycle" in err


@pytest.fixture(scope="module")
def bench_dir(tmp_path_factory):
    d = tmp_path_factory.mktemp("bench")
    for b, s in (("logic-bound", 1), ("hblock-bound", 2)):
        assert main(["generate", "--bottleneck", b, "--seed", str(s), "--out", str(d / f"{b}.blif")]) == 0
    return d


class TestSweep:
    def test_rows_and_ranking(self, capsys, bench_dir, tmp_path):
        out_csv = tmp_path / "s.csv"
        code, out, _ = run(capsys, "sweep", bench_dir, "baseline", "denser", "densest", "--seed", 7,
                           "--out", out_csv)
        assert code == 0
        rows = read_csv_report(out_csv.read_text())
        data = [r for r in rows if not r["benchmark"].startswith(("mean", "aggregate", "rank:"))]
        assert len(data) == 6
        means = {r["architecture"]: float(r["aggregate_raw"]) for r in rows if r["benchmark"] == "mean"}
        ranks = [r["architecture"] for r in rows if r["benchmark"].startswith("rank:")]
        assert ranks == sorted(means, key=lambda a: (means[a], a))
        assert "ranking (lowest aggregate first)" in out

    def test_strict_failure(self, capsys, bench_dir, tmp_path):
        d = tmp_path / "mixed"
        d.mkdir()
        (d / "good.blif").write_text((bench_dir / "logic-bound.blif").read_text())
        (d / "bad.blif").write_text(".model bad\n.nonsense\n")
        code, _, err = run(capsys, "sweep", d, "baseline")
        assert code == 0 and "skipped bad" in err
        code, _, _ = run(capsys, "sweep", d, "baseline", "--strict")
        assert code == 1

    def test_json_and_figures(self, capsys, bench_dir, tmp_path):
        code, out, _ = run(capsys, "sweep", bench_dir, "baseline", "--out", tmp_path / "s.json",
                           "--figures", tmp_path / "figs")
        assert code == 0
        doc = json.loads((tmp_path / "s.json").read_text())
        assert len(doc["results"]) == 2
        assert sorted(p.name for p in (tmp_path / "figs").iterdir()) == ["aggregate.svg", "radar_grid.svg"]


def test_generate_unachievable(capsys):
    code, _, err = run(capsys, "generate", "--bottleneck", "hblock-bound", "--dsps", "0", "--brams", "0")
    assert code == 1 and "error" in err


def test_arch_dump(capsys):
    code, out, _ = run(capsys, "arch", "densest")
    assert code == 0 and out.startswith("name: densest")


def test_module_entry_point(data_dir):
    proc = subprocess.run([sys.executable, "-m", "congruence_profiler", "sta",
                           str(data_dir / "netlists" / "handwritten" / "passthrough.blif")],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "critical path" in proc.stdout

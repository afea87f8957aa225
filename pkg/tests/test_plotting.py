import xml.etree.ElementTree as ET

from congruence_profiler.congruence import aggregate
from congruence_profiler.model import ScoreSet
from congruence_profiler.plotting import render_figures


def _results():
    out = []
    for b, vals in (("vpr/a", (0.7, 0.1, 0.2)), ("vpr/b", (0.2, 0.6, 0.1)), ("koios/c", (0.3, 0.3, 0.3))):
        for k, arch in enumerate(("baseline", "denser")):
            v = [x * (1 - 0.1 * k) for x in vals]
            out.append((b, arch, ScoreSet(*v, aggregate(v), aggregate(v, True), 1000.0, {}, 200.0)))
    return out


def test_figures_written_and_well_formed(tmp_path):
    paths = render_figures(_results(), tmp_path / "figs")
    assert [p.name for p in paths] == ["radar_grid.svg", "aggregate.svg"]
    for p in paths:
        assert ET.parse(p).getroot().tag.endswith("svg")


def test_figures_deterministic(tmp_path):
    a = [p.read_bytes() for p in render_figures(_results(), tmp_path / "a")]
    b = [p.read_bytes() for p in render_figures(list(reversed(_results())), tmp_path / "b")]
    assert a == b

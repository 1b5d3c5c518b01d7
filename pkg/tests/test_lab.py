import csv
import json

import numpy as np
import pytest

from ppt_forge import lab
from ppt_forge.spectra import SchmidtVector, parse_vector


def test_sample_simplex_uniform_marginal():
    rng = np.random.default_rng(0)
    draws = np.array([lab.sample_simplex(rng, 3).array for _ in range(3000)])
    assert np.allclose(draws.sum(axis=1), 1)
    assert np.all(np.diff(draws, axis=1) >= 0)
    # smallest of three uniform spacings has mean 1/9
    assert draws[:, 0].mean() == pytest.approx(1 / 9, abs=0.01)


def test_sweep_small():
    records, summary = lab.conjecture_sweep(20, [3, 4], [2, 3], seed=4)
    assert [r.index for r in records] == list(range(20))
    assert not summary.violations
    for r in records:
        assert r.T1 <= r.T + lab.LOWER_BOUND_SLACK
        assert r.gap == r.T - r.T1


def test_sweep_rank3_exact():
    _, summary = lab.conjecture_sweep(30, [3], [2], seed=9)
    assert summary.max_gap <= 1e-6 and not summary.flagged


def test_sweep_reproducible(tmp_path):
    a, _ = lab.conjecture_sweep(12, seed=7)
    b, _ = lab.conjecture_sweep(12, seed=7, jobs=2)
    lab.emit_sweep_csv(a, tmp_path / "a.csv")
    lab.emit_sweep_csv(b, tmp_path / "b.csv")
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()
    c, _ = lab.conjecture_sweep(12, seed=8)
    assert c != a


def test_sweep_summary_flags(tmp_path):
    rec = lab.SweepRecord(0, 0, 4, 2, (0.1, 0.2, 0.3, 0.4), 0.5, 0.6, 0.1, "Optimal")
    summary = lab.SweepSummary(n=1, max_gap=0.1, min_gap=0.1, flagged=[rec], violations=[])
    doc = json.loads(lab.emit_sweep_summary(summary, tmp_path / "s.json").read_text())
    assert doc["flagged"][0]["lambda"] == [0.1, 0.2, 0.3, 0.4]
    assert rec.flagged


def test_sweep_guard():
    with pytest.raises(ValueError):
        lab.conjecture_sweep(1, [40], [2])


def test_uniform_instances():
    for K in range(2, 6):
        from ppt_forge import closed_form, ppt_sdp
        lam = SchmidtVector.uniform(K)
        assert closed_form.t1_value(lam, K) == pytest.approx(1.0, abs=1e-12)
        assert ppt_sdp.t_value(lam, K) == pytest.approx(1.0, abs=1e-7)


@pytest.mark.parametrize("text,klass", [("1/3,1/3,1/3", lab.UNREACHABLE),
                                        ("0.05,0.05,0.9", lab.CATALYTIC_ONLY),
                                        ("0.02,0.02,0.96", lab.DIRECT)])
def test_classify_examples(text, klass):
    s = lab.classify(parse_vector(text))
    assert s.klass == klass


def test_symmetric_point_values():
    s = lab.classify(parse_vector("1/3,1/3,1/3"))
    assert s.thm5_lhs == pytest.approx(8 / 3)
    assert s.catalytic_lhs == pytest.approx(2.0)


def test_direct_mode():
    samples = lab.region_sample(20, "Direct")
    assert lab.region_counts(samples)[lab.CATALYTIC_ONLY] == 0
    with pytest.raises(ValueError):
        lab.region_sample(20, "Both")
    with pytest.raises(ValueError):
        lab.region_sample(1)


def test_grid_on_cell():
    pts = lab.cell_grid(7)
    assert len(pts) == 28
    for p in pts:
        assert p.sum() == pytest.approx(1.0)
        assert np.all(np.diff(p) >= -1e-15)
        assert p[0] <= 1 / 3 + 1e-12 and p[1] <= 0.5 + 1e-12


def test_region_nesting_and_gap():
    samples = lab.region_sample(60)
    for s in samples:
        if s.thm5_lhs <= 1:
            assert s.catalytic_lhs <= 1 + 1e-12
    assert lab.region_counts(samples)[lab.CATALYTIC_ONLY] > 0


def test_region_csv_smallest(tmp_path):
    path = lab.emit_region_csv(lab.region_sample(2), tmp_path / "r.csv")
    rows = list(csv.reader(path.open()))
    assert rows[0] == list(lab.REGION_COLUMNS)
    assert len(rows) == 4


def test_region_svg(tmp_path):
    samples = lab.region_sample(10)
    a = lab.emit_region_svg(samples, tmp_path / "a.svg").read_text()
    b = lab.region_svg(lab.region_sample(10))
    assert a == b
    assert a.startswith("<svg") and "<script" not in a
    assert a.count("<circle") == len(samples)


def test_emit_error_has_path(tmp_path):
    bad = tmp_path / "missing" / "r.csv"
    with pytest.raises(OSError, match="missing"):
        lab.emit_region_csv(lab.region_sample(2), bad)

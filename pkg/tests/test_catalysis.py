import json
import math

import numpy as np
import pytest

from ppt_forge import catalysis as cat
from ppt_forge import ppt_sdp
from ppt_forge.feasibility import FEASIBLE, MaxEnt, TransformQuery, decide
from ppt_forge.spectra import SchmidtVector, parse_vector, renyi_entropy, s_half_power, tensor

GAP = parse_vector("0.05,0.05,0.9")
TWENTIETHS = parse_vector("1/20,1/20,1/20,4/20,4/20,9/20")


def test_possible_examples():
    assert cat.ppt_maxent_catalysis_possible(2, GAP)
    assert s_half_power(GAP) == pytest.approx(1.94853, abs=1e-5)
    assert cat.ppt_maxent_catalysis_possible(3, SchmidtVector.uniform(3))
    assert not cat.ppt_maxent_catalysis_possible(5, TWENTIETHS)


def test_scan_gap_witness():
    report = cat.catalyst_scan(cat.CatalysisQuery(2, GAP))
    C = report.minimal_C
    assert C is not None and C >= 2
    assert report.certain
    assert report.scan[0].verdict != FEASIBLE and report.scan[-1].verdict == FEASIBLE
    for C_check, expected in ((C, True), (C - 1, False)):
        tgt = tensor(GAP, SchmidtVector.uniform(C_check))
        v = decide(TransformQuery(MaxEnt(2 * C_check), tgt))
        assert (v.decision == FEASIBLE) is expected
    doc = json.loads(json.dumps(report.to_json()))
    assert doc["minimal_C"] == C and doc["possible"] is True
    assert {"C", "T1", "T", "verdict"} <= set(doc["scan"][0])


def test_scan_no_catalyst_needed():
    assert cat.minimal_catalyst_rank(cat.CatalysisQuery(2, parse_vector("0.02,0.02,0.96"))) == 1


def test_scan_impossible():
    report = cat.catalyst_scan(cat.CatalysisQuery(5, TWENTIETHS, c_max=4))
    assert not report.possible and report.minimal_C is None and report.scan == []


def test_scan_budget_and_guard():
    with pytest.raises(ValueError):
        cat.CatalysisQuery(2, GAP, c_max=0)
    report = cat.catalyst_scan(cat.CatalysisQuery(2, GAP, c_max=3), max_sdp_dim=3)
    assert report.minimal_C is None and not report.certain
    assert [e.verdict for e in report.scan][1:] == ["Inconclusive"] * 2


def test_additivity_with_uniform():
    for C in (1, 2, 7, 64):
        lhs = renyi_entropy(tensor(GAP, SchmidtVector.uniform(C)), 0.5)
        assert lhs == pytest.approx(renyi_entropy(GAP, 0.5) + math.log2(C), abs=1e-12)


def test_bounds_converge():
    limit = s_half_power(GAP) / 2
    prev = None
    for C in (1, 2, 4, 8, 16, 32, 64):
        lo, hi = ppt_sdp.bounds(tensor(GAP, SchmidtVector.uniform(C)), 2 * C)
        assert lo <= limit <= hi + 1e-12
        if prev is not None:
            assert hi - limit <= prev[1] - limit + 1e-12
            assert limit - lo <= limit - prev[0] + 1e-12
        prev = (lo, hi)
    assert abs(prev[0] - limit) <= 1e-3 and abs(prev[1] - limit) <= 1e-3


def test_locc_screen_examples():
    res = cat.locc_catalysis_screen(parse_vector("0.5,0.5"), parse_vector("0.6,0.4"))
    assert res.status == cat.PASS and res.to_json()["certifying"] is False
    with pytest.raises(ValueError):
        cat.locc_catalysis_screen(parse_vector("0.6,0.4"), parse_vector("0.4,0.6"))
    # reversed direction: the more entangled state cannot be produced
    res = cat.locc_catalysis_screen(parse_vector("0.6,0.4"), parse_vector("0.5,0.5"))
    assert res.status == cat.FAIL


def test_locc_screen_zero_component():
    # mu has a zero where lambda does not: the t = 0 f-condition holds trivially
    lam = parse_vector("0.1,0.2,0.3,0.4")
    mu = parse_vector("0,0.1,0.3,0.6")
    res = cat.locc_catalysis_screen(lam, mu, t_grid=[0.5, 1.0], f_grid=[0.0])
    assert res.status == cat.PASS
    with pytest.raises(ValueError):
        cat.locc_catalysis_screen(parse_vector("0,0.5,0.5"), parse_vector("0,0.2,0.8"))


def test_locc_screen_rejects_bad_grid():
    with pytest.raises(ValueError):
        cat.locc_catalysis_screen(parse_vector("0.5,0.5"), parse_vector("0.6,0.4"), t_grid=[0])
    with pytest.raises(ValueError):
        cat.locc_catalysis_screen(parse_vector("0.5,0.5"), parse_vector("0.6,0.4"), f_grid=[1])


def test_locc_screen_trumping_example():
    # classic catalysis pair: not comparable under majorization, catalysable
    lam = parse_vector("0.1,0.1,0.4,0.4")
    mu = parse_vector("0,0.25,0.25,0.5")
    assert cat.locc_catalysis_screen(lam, mu).status == cat.PASS


def test_default_grids():
    assert len([t for t in cat.DEFAULT_S_GRID if math.isfinite(t)]) >= 64
    assert {0.5, 1.0, math.inf} <= set(cat.DEFAULT_S_GRID)
    assert min(cat.DEFAULT_F_GRID) == pytest.approx(-32) and max(cat.DEFAULT_F_GRID) == 0.0
    # no order crowds t = 1, where the power-sum branch loses digits
    assert all(t == 1.0 or abs(t - 1) > 1e-6 for t in cat.DEFAULT_S_GRID)


def test_conjecture_screen():
    res = cat.ppt_catalysis_conjecture_screen(SchmidtVector.uniform(2), GAP)
    assert res.status == cat.PASS and res.conjectural
    res = cat.ppt_catalysis_conjecture_screen(parse_vector("0.1,0.9"), parse_vector("0.2,0.8"))
    assert res.status == cat.FAIL
    res = cat.ppt_catalysis_conjecture_screen(parse_vector("0.1,0.45,0.45"), parse_vector("0.3,0.3,0.4"),
                                              t_grid=[math.inf])
    assert res.status == cat.FAIL and res.to_json()["witness"] == "inf"
    with pytest.raises(ValueError):
        cat.ppt_catalysis_conjecture_screen(GAP, GAP)

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.stats import entropy as shannon

from ppt_forge.spectra import (SchmidtVector, f_value, majorizes, parse_vector,
                               ppt_monotone_report, renyi_entropy, s_half_power, tensor)

from conftest import schmidt_vectors

TWENTIETHS = "1/20,1/20,1/20,4/20,4/20,9/20"
ORDERS = [0.0, 0.1, 0.5, 0.9, 1.0, 1.5, 2.0, 5.0, math.inf]


def test_parse_fractions_and_sort():
    lam = parse_vector("9/20, 1/20,4/20,1/20,4/20,1/20")
    assert lam.coeffs == (0.05, 0.05, 0.05, 0.2, 0.2, 0.45)
    assert parse_vector("0.5,0.5").is_uniform(2)


@pytest.mark.parametrize("bad", ["", "a,b", "0.5,0.6", "1/0,1", "-0.1,1.1"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        parse_vector(bad)


def test_from_values_snaps_and_sorts():
    lam = SchmidtVector.from_values([0.7, 1e-17, 0.3])
    assert lam.coeffs == (0.0, 0.3, 0.7)
    assert lam.rank() == 2 and lam.nonzero().coeffs == (0.3, 0.7)


def test_twentieths_entropies():
    lam = parse_vector(TWENTIETHS)
    assert renyi_entropy(lam, 0.5) == pytest.approx(math.log2(5), abs=1e-12)
    assert renyi_entropy(lam, 0) == math.log2(6)
    assert renyi_entropy(lam, math.inf) == pytest.approx(-math.log2(0.45), abs=1e-15)


def test_shannon_against_scipy():
    lam = parse_vector("0.1,0.2,0.3,0.4")
    assert renyi_entropy(lam, 1) == pytest.approx(shannon(lam.array, base=2), abs=1e-14)


def test_order_two_direct():
    p = np.array([0.1, 0.2, 0.7])
    assert renyi_entropy(p, 2) == pytest.approx(-math.log2(np.sum(p * p)), abs=1e-14)


def test_near_one_is_continuous():
    lam = parse_vector("0.6,0.4")
    h = renyi_entropy(lam, 1)
    for eps in (1e-15, 1e-12, 1e-9, -1e-12):
        assert renyi_entropy(lam, 1 + eps) == pytest.approx(h, abs=1e-8)


@pytest.mark.parametrize("t", [-0.5, float("nan")])
def test_bad_order(t):
    with pytest.raises(ValueError):
        renyi_entropy(parse_vector("0.5,0.5"), t)


def test_f_value_branches():
    lam = parse_vector("0.25,0.75")
    assert f_value(lam, 0) == pytest.approx(math.log2(0.25) + math.log2(0.75))
    assert f_value(lam, -1) == pytest.approx(math.log2(4 + 4 / 3) / -2)
    assert f_value(SchmidtVector.from_values([0, 1]), 0) == -math.inf
    assert f_value(SchmidtVector.from_values([0, 1]), -2) == -math.inf


def test_nielsen_example():
    assert majorizes(parse_vector("0.5,0.5"), parse_vector("0.25,0.75"))
    assert not majorizes(parse_vector("0.25,0.75"), parse_vector("0.5,0.5"))
    # different lengths are zero padded
    assert majorizes(parse_vector("1/3,1/3,1/3"), parse_vector("0.5,0.5"))


def test_monotone_report_twentieths():
    r = ppt_monotone_report(parse_vector(TWENTIETHS))
    assert r.E_xc == pytest.approx(math.log2(5), abs=1e-12)
    assert r.E_c == r.E_d == pytest.approx(renyi_entropy(parse_vector(TWENTIETHS), 1))
    assert r.E_xd == pytest.approx(-math.log2(0.45))


@given(schmidt_vectors())
def test_renyi_non_increasing(lam):
    vals = [renyi_entropy(lam, t) for t in ORDERS]
    assert all(b <= a + 1e-12 for a, b in zip(vals, vals[1:]))


@given(schmidt_vectors(max_size=4), schmidt_vectors(max_size=4),
       st.sampled_from(ORDERS))
def test_additivity(lam, xi, t):
    lhs = renyi_entropy(tensor(lam, xi), t)
    assert lhs == pytest.approx(renyi_entropy(lam, t) + renyi_entropy(xi, t), abs=1e-10)


@pytest.mark.parametrize("K", range(1, 8))
def test_uniform_all_orders(K):
    for t in ORDERS:
        assert renyi_entropy(SchmidtVector.uniform(K), t) == pytest.approx(math.log2(K), abs=1e-12)


@given(schmidt_vectors())
def test_half_power_identity(lam):
    direct = sum(math.sqrt(x) for x in lam.coeffs) ** 2
    assert s_half_power(lam) == pytest.approx(direct, abs=1e-12)
    assert 2 ** renyi_entropy(lam, 0.5) == pytest.approx(direct, rel=1e-12)


@given(schmidt_vectors(), schmidt_vectors(), schmidt_vectors())
def test_majorization_order(a, b, c):
    assert majorizes(a, a)
    if majorizes(a, b) and majorizes(b, c):
        assert majorizes(a, c)


def test_majorization_chain_example():
    a, b, c = (parse_vector(x) for x in ("0.25,0.25,0.25,0.25", "0.1,0.2,0.3,0.4", "0,0.1,0.2,0.7"))
    assert majorizes(a, b) and majorizes(b, c) and majorizes(a, c)


def test_tensor_exact_fractions():
    v = tensor(parse_vector("1/4,3/4"), SchmidtVector.uniform(2))
    assert v.coeffs == tuple(sorted(float(Fraction(p) / 2) for p in ("1/4", "1/4", "3/4", "3/4")))

from __future__ import annotations

from decimal import Decimal, getcontext

import numpy as np
import pytest
from hypothesis import given, strategies as st

from kneserlab.hypercore import Hypergraph
from kneserlab.kneser import complete_k_subsets, kneser_graph, kneser_power
from kneserlab.randmc import (
    PowerLaw,
    RandomModelParams,
    derived_params,
    event_a_bound_general,
    event_a_bound_kneser,
    event_a_family,
    margin_csv,
    margin_sweep,
    margin_value,
    mc_event_a,
    mc_tail,
    retained_matrix,
    sample,
    trial_uniforms,
)

getcontext().prec = 50
PETERSEN = kneser_graph(5, 2)


def _ln(x):
    return Decimal(x).ln()


def test_params_validation():
    with pytest.raises(ValueError):
        RandomModelParams(0.0)
    with pytest.raises(ValueError):
        RandomModelParams(1.5)
    with pytest.raises(ValueError):
        RandomModelParams(0.5, seed=-1)
    with pytest.raises(ValueError):
        RandomModelParams(0.5, trials=0)


def test_sample_boundaries():
    full = sample(PETERSEN, RandomModelParams(1.0))
    assert full == PETERSEN.hypergraph
    tiny = RandomModelParams(2.0**-30, trials=50)
    assert all(sample(PETERSEN, tiny, i).num_edges == 0 for i in range(50))


def test_sample_mean_binomial():
    params = RandomModelParams(0.5, seed=7, trials=10_000)
    counts = retained_matrix(15, params).sum(axis=1)
    sd = np.sqrt(15 * 0.25 / 10_000)
    assert abs(counts.mean() - 7.5) <= 3 * sd


def test_streams_are_per_trial():
    a = trial_uniforms(3, 5, 40)
    assert np.array_equal(a[:10], trial_uniforms(3, 5, 10))
    assert not np.array_equal(a, trial_uniforms(3, 6, 40))
    assert not np.array_equal(a, trial_uniforms(4, 5, 40))
    params = RandomModelParams(0.3, seed=3, trials=8)
    m = retained_matrix(40, params)
    assert np.array_equal(m[5], trial_uniforms(3, 5, 40) < 0.3)
    assert np.array_equal(retained_matrix(40, params, [5])[0], m[5])


def test_mc_tail_examples():
    assert mc_tail(PETERSEN, RandomModelParams(1.0, trials=20), 3).estimate == 1.0
    assert mc_tail(PETERSEN, RandomModelParams(1.0, trials=20), 4).estimate == 0.0
    res = mc_tail(PETERSEN, RandomModelParams(0.9, seed=1, trials=2000), 3)
    assert 0.0 <= res.estimate <= 1.0 and res.stderr <= 0.005
    assert res.unknown == 0 and len(res.records) == 2000


def test_mc_tail_threads_identical():
    p = RandomModelParams(0.7, seed=11, trials=60)
    a = mc_tail(PETERSEN, p, 3, threads=1)
    b = mc_tail(PETERSEN, p, 3, threads=3)
    assert a == b


def test_event_a_general_examples():
    L = event_a_bound_general(10, 2, 1, 6, 1.0).log_bound
    ref = -1 + 10 * _ln(3) + 2 * (1 + _ln(5))
    assert abs(Decimal(L) - ref) < Decimal("1e-12")
    rep = event_a_bound_general(10, 2, 100, 6, 1.0)
    ref = -10000 + 10 * _ln(3) + 200 * (1 + _ln(5))
    assert abs(Decimal(rep.log_bound) - ref) < Decimal("1e-9")
    assert not rep.vacuous and rep.bound == pytest.approx(float(ref.exp()), rel=1e-9)
    assert event_a_bound_general(10, 2, 1, 6, 1.0).vacuous


@given(st.floats(0.01, 0.99), st.floats(0.001, 0.009))
def test_event_a_monotone_in_rho(rho, dr):
    assert event_a_bound_general(8, 2, 3, 4, rho + dr).log_bound < event_a_bound_general(8, 2, 3, 4, rho).log_bound


def test_event_a_kneser_examples():
    dp = derived_params(20, 2, 2, 1)
    assert (dp.d, dp.q, dp.t) == (16, 3, 1)
    L = event_a_bound_kneser(20, 2, 1, 2, dp.t, dp.d, 1.0).log_bound
    ref = -1 + 6 * (_ln(20) + 1) + 2 * (1 + _ln(15))
    assert abs(Decimal(L) - ref) < Decimal("1e-12")
    assert margin_value("II", 20, 2, 1, 2, 1.0)["M"] == pytest.approx(L)
    # only the r(k+l) ln n term depends on n
    a = event_a_bound_kneser(100, 2, 1, 2, 1, 16, 1.0).log_bound
    b = event_a_bound_kneser(200, 2, 1, 2, 1, 16, 1.0).log_bound
    assert b - a == pytest.approx(6 * np.log(2))


def test_derived_params_examples():
    dp = derived_params(10, 2, 2, 1)
    assert (dp.d, dp.q, dp.t) == (6, 3, 1)
    dp = derived_params(12, 3, 2, 0)
    assert dp.q == 1 and dp.t == 1 and dp.d == 12 - 6 + 2
    with pytest.raises(ValueError):
        derived_params(4, 2, 2, 1)


@given(st.integers(6, 60), st.integers(1, 4), st.integers(0, 3))
def test_derived_params_kupavskii(n, k, l):
    if n - 2 * k - 2 * l + 2 < 2:
        return
    dp = derived_params(n, k, 2, l)
    assert dp.d == n - 2 * k - 2 * l + 2
    assert dp.t == -(-dp.q // (dp.d - 1))


def test_powerlaw():
    f = PowerLaw.parse("0.5,1,0+-0.5,0.3,0")
    assert f(1000) == pytest.approx(500 - 0.5 * 1000**0.3)
    assert PowerLaw.parse("2")(10) == 2
    assert PowerLaw.term(1, 0.5).integer(100) == 10
    with pytest.raises(ValueError):
        PowerLaw.parse("1,2")


def test_margin_sweep_columns_and_trend():
    rows = margin_sweep("I", PowerLaw.const(1), PowerLaw.const(0), PowerLaw.const(2),
                        PowerLaw.const(1.0), [10, 100, 1000])
    text = margin_csv(rows)
    assert text.splitlines()[0] == (
        "n,k,l,r,rho,d,q,t,M,ratio_kneser_k,ratio_sg_k,ratio_gap,M_trend,error"
    )
    assert [r["M_trend"] for r in rows][1:] == ["up", "up"]


def test_margin_t_growth_regime_goes_down():
    # k = n/4, l = n/8: t grows so fast that -rho t^r dominates
    rows = margin_sweep("II", PowerLaw.term(0.25, 1), PowerLaw.term(0.125, 1),
                        PowerLaw.const(2), PowerLaw.const(1.0), [40, 80, 160])
    assert all(r["M_trend"] == "down" for r in rows[1:])
    assert rows[-1]["M"] < rows[0]["M"] < 0


def test_margin_reports_d_below_2():
    rows = margin_sweep("II", PowerLaw.term(1, 1), PowerLaw.const(0), PowerLaw.const(2),
                        PowerLaw.const(1.0), [10])
    assert rows[0]["error"]


def test_event_a_family_small():
    H = Hypergraph.from_edges(4, [[1, 2], [3, 4], [1, 3]])
    K = kneser_power(H, 2)
    fam = event_a_family(H, None, 2, 1, 1, K)
    # only {12} and {34} are disjoint; every choice uses that single power edge
    assert fam.shape == (1, 1)


def test_mc_event_a_rho1_never_occurs():
    H = complete_k_subsets(5, 2)
    K = kneser_power(H, 2)
    res = mc_event_a(K, RandomModelParams(1.0, trials=50), 1, 1, 3)
    assert res.occurrences == 0 and res.containment_failures == 0


def test_mc_event_a_vacuous_k62():
    K = kneser_graph(6, 2)
    res = mc_event_a(K, RandomModelParams(0.5, seed=2, trials=200), 1, 1, 5)
    assert res.bound.vacuous and res.containment_failures == 0


def test_mc_event_a_threads_identical():
    K = kneser_graph(5, 2)
    p = RandomModelParams(0.5, seed=9, trials=100)
    a = mc_event_a(K, p, 1, 1, 3, threads=1)
    b = mc_event_a(K, p, 1, 1, 3, threads=4)
    assert a.records == b.records and a.to_dict() == b.to_dict()


def test_mc_event_a_nonvacuous_config():
    H = Hypergraph(6, tuple(m for m in range(1, 64) if m.bit_count() <= 2))
    K = kneser_power(H, 2)
    res = mc_event_a(K, RandomModelParams(0.7, seed=0, trials=300), 5, 5, 2)
    assert not res.bound.vacuous
    assert res.within_bound and res.containment_failures == 0

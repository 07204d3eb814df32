import math
from dataclasses import replace

import numpy as np
import pytest
from scipy.optimize import minimize

from subthz_ee.channel import Area, Geometry, PanelConfig, generate_gob
from subthz_ee.errors import ConfigError
from subthz_ee.sim import (Scenario, SimConfig, assign_chains, associate_and_beam,
                           drop_generators, drop_ues, evaluate_drop, link_rate, run_drop,
                           run_scenario, schedule_pf, sweep)

FAST = SimConfig(n_drops=20, n_ues=8, seed=3)


def test_drop_ues_basic():
    rng = np.random.default_rng(0)
    assert drop_ues(Area(), 0, rng).shape == (0, 3)
    a = drop_ues(Area(), 5, np.random.default_rng(1))
    b = drop_ues(Area(), 5, np.random.default_rng(1))
    assert np.array_equal(a, b)
    assert np.all(a[:, 2] == 1.5)


def test_drop_ues_uniform_mean():
    pos = drop_ues(Area(), 100_000, np.random.default_rng(7))
    assert abs(pos[:, 0].mean() - 15.0) < 0.15
    assert abs(pos[:, 1].mean() - 30.0) < 0.30
    assert pos[:, 0].min() >= 0 and pos[:, 0].max() <= 30
    assert pos[:, 1].min() >= 0 and pos[:, 1].max() <= 60


def test_associate_single_and_ties():
    bs, beam = associate_and_beam(np.array([[[1.0, 3.0, 2.0]]]))
    assert bs[0] == 0 and beam[0] == 1
    tie = np.zeros((2, 1, 4))
    bs, beam = associate_and_beam(tie)
    assert bs[0] == 0 and beam[0] == 0


def _exhaustive(p):
    n_bs, n_ues, n_beams = p.shape
    out = []
    for u in range(n_ues):
        best, arg = -np.inf, None
        for b in range(n_bs):
            for k in range(n_beams):
                if p[b, u, k] > best:
                    best, arg = p[b, u, k], (b, k)
        out.append(arg)
    return out


def test_associate_matches_exhaustive_search():
    rng = np.random.default_rng(11)
    for _ in range(50):
        p = np.round(rng.normal(size=(rng.integers(1, 9), 8, rng.integers(1, 17))), 1)
        bs, beam = associate_and_beam(p)
        assert list(zip(bs.tolist(), beam.tolist())) == _exhaustive(p)


def test_assign_chains_least_loaded():
    chain = assign_chains(np.array([0, 0, 0, 1, 0]), 2, 2)
    assert chain.tolist() == [0, 1, 0, 0, 1]


def test_schedule_pf_examples():
    assert schedule_pf([5.0]).tolist() == [1.0]
    assert np.allclose(schedule_pf([1, 2, 3]), 1 / 3)
    for n in range(1, 20):
        assert schedule_pf(np.ones(n)).sum() == pytest.approx(1.0)
    assert schedule_pf([]).size == 0


@pytest.mark.filterwarnings("ignore::RuntimeWarning")
def test_pf_equal_shares_are_optimal():
    rng = np.random.default_rng(5)
    for _ in range(20):
        r = rng.uniform(1e8, 4e10, 3)
        obj = lambda x: -np.sum(np.log(np.maximum(x, 1e-12) * r))  # noqa: E731
        res = minimize(obj, x0=np.array([0.6, 0.3, 0.1]), method="SLSQP",
                       bounds=[(1e-9, 1)] * 3,
                       constraints=[{"type": "eq", "fun": lambda x: x.sum() - 1}])
        assert np.allclose(res.x, schedule_pf(r), atol=1e-4)
        assert -obj(schedule_pf(r)) >= -res.fun - 1e-9


def test_link_rate_examples():
    assert link_rate(400.0, 5e9) == pytest.approx(40e9)
    assert link_rate(-np.inf, 5e9) == 0.0
    assert link_rate(10 * math.log10(3), 5e9) == pytest.approx(10e9)
    assert link_rate(10 * math.log10(3), 5e9, loss_factor=0.5) == pytest.approx(5e9)


def test_determinism():
    scn = Scenario()
    a = run_scenario(scn, FAST)
    b = run_scenario(scn, FAST)
    assert np.array_equal(a.per_drop_bps, b.per_drop_bps)
    assert a.mean_tput_bps == b.mean_tput_bps
    assert np.array_equal(a.mean_active_chains, b.mean_active_chains)


def test_drop_invariants():
    scn = Scenario().with_(n_bs=8, subpanels=4)
    for rng in drop_generators(9, 10):
        d = run_drop(scn, replace(FAST, n_ues=16), rng)
        assert d.total_bps == pytest.approx(float(np.sum(d.share * d.rate_bps)))
        assert np.all(d.rate_bps >= 0)
        assert np.all(d.sinr_db <= d.snr_db + 1e-12)
        cid = d.bs * 4 + d.chain
        for c in np.unique(cid):
            assert d.share[cid == c].sum() <= 1 + 1e-12
        for b in range(8):
            assert d.active_chains[b] <= min(np.sum(d.bs == b), 4)


def test_stats_mean_is_mean_of_drops():
    s = run_scenario(Scenario(), FAST)
    assert s.mean_tput_bps == pytest.approx(float(np.mean(s.per_drop_bps)), rel=1e-15)
    assert s.ci_halfwidth > 0
    assert s.summary("x")["scenario_id"] == "x"


def test_zero_power_gives_zero_throughput():
    s = run_scenario(Scenario(total_psat=-math.inf), FAST)
    assert s.mean_tput_bps == 0.0


def test_zero_ues():
    s = run_scenario(Scenario(), replace(FAST, n_ues=0))
    assert s.mean_tput_bps == 0.0 and np.all(s.mean_active_chains == 0)


def test_single_link_hand_oracle():
    tilt = math.radians(21.0)
    geom = Geometry(bs_sites=((0.0, 0.0, 4.0, 0.0),))
    scn = Scenario(n_bs=1, total_psat=10.0, geometry=geom)
    d = 1.5
    ue = np.array([[d * math.cos(tilt), 0.0, 4.0 - d * math.sin(tilt)]])
    cfg = SimConfig(n_drops=1, n_ues=1)
    out = evaluate_drop(scn, cfg, ue, np.random.default_rng(42))

    ref = np.random.default_rng(42)
    ref.random((1, 1))  # LOS draw; the UE is well inside the 5 m LOS radius
    shadow = 3.0 * ref.standard_normal((1, 1))[0, 0]
    # Best GoB beam towards broadside, by explicit element-phasor sums.
    beams = generate_gob().directions()
    best = -np.inf
    for beam in beams:
        s = sum(complex(math.cos(p), math.sin(p)) for p in
                [math.pi * (n * (0 - beam[1]) + m * (0 - beam[2]))
                 for m in range(8) for n in range(8)])
        best = max(best, 10 * math.log10(abs(s) ** 2 / 64))
    eirp = 10.0 + 8.0 + best
    pl = 32.4 + 17.3 * math.log10(d) + 20 * math.log10(140)
    snr = eirp - pl - shadow - (-174 + 10 * math.log10(5e9) + 9)
    assert out.sinr_db[0] == pytest.approx(snr, abs=1e-9)
    expected_rate = 5e9 * min(math.log2(1 + 10 ** (snr / 10)), 8)
    assert out.rate_bps[0] == pytest.approx(expected_rate, rel=1e-12)
    assert out.bs[0] == 0 and out.share[0] == 1.0


def test_more_stations_more_throughput():
    cfg = SimConfig(n_drops=100, n_ues=16, seed=1)
    for m in (1, 2, 4):
        base = Scenario().with_(subpanels=m, total_psat=23.0)
        t4 = run_scenario(base.with_(n_bs=4), cfg).mean_tput_bps
        t8 = run_scenario(base.with_(n_bs=8), cfg).mean_tput_bps
        assert t8 >= t4


def test_monotone_in_psat():
    cfg = SimConfig(n_drops=60, n_ues=16, seed=2)
    t = [run_scenario(Scenario(total_psat=p), cfg).mean_tput_bps for p in (11, 17, 23, 29, 35)]
    assert all(b >= a for a, b in zip(t, t[1:]))


def test_sweep_grid_shape():
    rows = sweep(Scenario(), SimConfig(n_drops=2, seed=0))
    assert len(rows) == 40
    assert {r["n_bs"] for r in rows} == {4, 8}
    assert sweep(Scenario(), SimConfig(n_drops=2), psat_list=()) == []


def test_invalid_configs():
    with pytest.raises(ConfigError):
        SimConfig(n_drops=0)
    with pytest.raises(ConfigError, match="subpanel_split"):
        Scenario(geometry=Geometry(panel=PanelConfig(subpanel_split=3)))
    with pytest.raises(ConfigError):
        run_scenario(Scenario(n_bs=5), FAST)


def test_scenario_ids():
    assert Scenario().with_(n_bs=8, total_psat=17, subpanels=2).scenario_id == "2x4x8_8bs_17dbm"


import math

import numpy as np
import pytest

import growpop as gp


def test_kernel_and_schedule():
    k = gp.Kernel.rational_decay(0.5, 0.5)
    assert k(1.0) == pytest.approx(0.75)
    assert (k.psi_star, k.psi_max) == (0.5, 1.0)
    s = gp.GrowthSchedule.power_exponential(0.5, 1)
    assert s.injection_time(1) == pytest.approx(math.log(2) ** 2)
    assert s.population_at(0.5) == 2
    with pytest.raises(ValueError):
        gp.Kernel.constant(0.0)
    with pytest.raises(IndexError):
        gp.GrowthSchedule.explicit_times(5, [0.1, 0.2, 0.4]).injection_time(4)


def test_dynamics_roundtrip():
    state = gp.SimState([[0.0], [2.0]])
    k = gp.Kernel.constant(1.0)
    assert gp.rhs(state, k) == [1.0, -1.0]
    sched = gp.GrowthSchedule.explicit_times(2, [10.0])
    out = gp.integrate_interval(state, k, sched, 1.0, 1e-3)
    x = [p[0] for p in out.opinions()]
    assert x[0] == pytest.approx(1 - math.exp(-1), abs=1e-9)
    with pytest.raises(RuntimeError):
        gp.integrate_interval(state, k, gp.GrowthSchedule.explicit_times(2, [0.5]), 1.0, 1e-3)
    rec = gp.compute_moments(state, k, [0.0])
    assert (rec.v, rec.w, rec.dissipation) == pytest.approx((1.0, 2.0, -2.0))
    dm1, dm2, dv = gp.predict_jumps(rec, [4.0], 1, 2)
    assert dm1[0] == pytest.approx(1.0)
    assert dv == pytest.approx(5 / 3)


def test_simulation_and_ensemble():
    cfg = gp.SimConfig(
        gp.Kernel.constant(1.0),
        gp.GrowthSchedule.power_exponential(1.0, 1),
        gp.OpinionSource(gp.SourceKind.GAUSSIAN, [0.0], 1.0),
        [[0.0]],
        max_agents=10,
    )
    run = gp.run_simulation(cfg, 42)
    assert run["n"][-1] == 11
    assert set(run["event"]) == {"record", "pre_jump", "post_jump"}
    a = gp.run_ensemble(cfg, 50, 7, workers=1)
    b = gp.run_ensemble(cfg, 50, 7, workers=4)
    np.testing.assert_array_equal(a["mean_w"], b["mean_w"])
    assert a["runs"] == 50


def test_analysis():
    t = gp.log_power_times(1.0, 1000)
    assert gp.condition_sum(1.0, t, 1000) == pytest.approx(1.0, abs=1e-12)
    assert 0.0160 < gp.dawson_F(2.0, 1.0, 30.0) < 0.0172
    assert gp.classify_schedule(2.0, 0.5, 1.0) == gp.Classification.FAILS_C2
    s = gp.GrowthSchedule.power_exponential(0.5, 1)
    assert gp.envelope_bound(1.5, 2.0, 0.4, s, 1) == pytest.approx(2 * math.exp(-1.5 * s.injection_time(1)) + 0.4)
    ts = np.linspace(1, 50, 100)
    beta, r2 = gp.fit_decay_exponent(ts, ts ** -0.4, 0.5)
    assert beta == pytest.approx(0.4) and r2 == pytest.approx(1.0)


def test_source_sampling_is_seeded():
    src = gp.OpinionSource(gp.SourceKind.TWO_POINT, [0.0], 1.0)
    x = src.sample(1000, 3)
    assert x.shape == (1000, 1)
    assert set(np.unique(x)) == {-1.0, 1.0}
    np.testing.assert_array_equal(x, src.sample(1000, 3))
    assert gp.derive_run_seed(1, 0) != gp.derive_run_seed(1, 1)

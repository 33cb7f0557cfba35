import math

import numpy as np
import pytest

import revlab


def step():
    return revlab.PiecewiseFn.steps(1.0, [0.0, 0.5, 1.0], [1.0, 0.0])


def test_piecewise_eval_and_jumps():
    f = step()
    assert f(0.25) == 1.0
    assert f(0.5) == 0.0  # right limit at a break
    vals = f(np.array([0.1, 0.9]))
    assert np.allclose(vals, [1.0, 0.0])
    assert [x for x, _ in f.jumps()] == [0.5]


def test_airy_roots_near_asymptotics():
    for n in (5, 10):
        k = revlab.airy_root(n)
        assert abs(k - (2 * n - 1 / 3) * math.pi) < 1e-9
    spec = revlab.airy_spectrum(10)
    assert len(spec["n"]) == 10
    assert np.all(spec["residual"] < 1e-11)


def test_disloc_spectrum_has_zero_mode_at_half():
    spec = revlab.disloc_spectrum(0.5, -5, 5)
    assert 0 in list(spec["n"])
    assert np.all(np.sign(spec["lambda"][spec["n"] != 0]) == np.sign(spec["n"][spec["n"] != 0]))


def test_gauss_weights_sum_to_one():
    assert abs(sum(revlab.dk_airy(1, 3, k) for k in range(3)) - 1.0) < 1e-12


def test_hilbert_routes_agree():
    f = revlab.PiecewiseFn.steps(1.0, [0.0, 0.2, 0.6, 1.0], [0.0, 1.0, 0.0])
    xs = np.array([0.1, 0.4, 0.8])
    syn = revlab.hilbert_transform(f, xs, modes=1 << 14)
    closed = np.array([revlab.hilbert_indicator(0.2, 0.6, 1.0, x) for x in xs])
    pv = np.array([revlab.hilbert_pv(f, 1.0, x) for x in xs])
    assert np.max(np.abs(syn - closed)) < 1e-3
    assert np.max(np.abs(pv - closed)) < 1e-8


def test_airy_series_matches_closed_form_away_from_singularities():
    r = revlab.airy_revival(step(), 1, 2, modes=600, grid=256, hilbert_modes=1 << 13)
    assert r["sup_err"] < 2e-2
    kept = ~np.isnan(r["ur_closed"])
    assert kept.sum() + r["excluded_points"] == 256
    assert np.allclose(r["u"] - r["ur_series"], r["uc"])


def test_solve_airy_accepts_float_and_rational_time():
    xs = np.linspace(0.05, 0.95, 7)
    a = revlab.solve_airy(step(), xs, (1, 3), modes=100)
    b = revlab.solve_airy(step(), xs, 1.0 / (3 * math.pi**2), modes=100)
    assert np.allclose(a["u"], b["u"], atol=1e-9)


def test_disloc_closed_form_and_sides():
    b = 0.35
    u0 = revlab.PiecewiseFn.steps(1.0, [0.0, b / 2, 1.0], [1.0, 0.5])
    xs = np.array([0.1, 0.3, 0.6])
    left = revlab.ur_closed_disloc(u0, b, xs, 1, 2, "left", hilbert_modes=1 << 12)
    assert not np.isnan(left[0]) and np.isnan(left[2])
    r = revlab.disloc_revival(u0, b, 1, 2, "right", modes=250, grid=128, hilbert_modes=1 << 12)
    assert np.all(r["grid"] > b)
    assert r["sup_err"] < 5e-2


def test_reflect_problem_round_trip():
    u0 = step()
    r, c = revlab.reflect_problem(u0, 0.3)
    assert c == pytest.approx(0.7)
    assert r(0.2) == u0(0.8)


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        revlab.airy_revival(step(), 2, 6)
    with pytest.raises(ValueError):
        revlab.hilbert_indicator(0.2, 0.6, 1.0, 0.2)

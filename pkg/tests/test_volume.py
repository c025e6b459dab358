import math

import numpy as np
import pytest

from slcount import volume as vol
from slcount.reps import dim, parse_rep
from slcount.volume import (
    QuadratureSpec,
    TruncationError,
    ball_volume,
    fit_growth,
    fit_powerlaw,
    simplex_growth_check,
)

STD2 = parse_rep("standard", 2)
ADJ2 = parse_rep("adjoint", 2)


def test_quadrature_spec_validation():
    with pytest.raises(ValueError):
        QuadratureSpec("mc", 100)
    with pytest.raises(ValueError):
        QuadratureSpec("trapezoid", 10_000)


def test_empty_ball_below_identity_norm():
    for spec in (STD2, ADJ2, parse_rep("ext:2", 3)):
        t = math.sqrt(dim(spec))
        assert ball_volume(spec, t, QuadratureSpec("grid", 64)).value == 0.0
        assert ball_volume(spec, 0.5 * t, QuadratureSpec("mc", 10_000)).value == 0.0


def test_doubling_slope_standard():
    # vol ~ T^6 for the standard rank-2 ball, so one doubling adds 6*log 2
    q = QuadratureSpec("grid", 256)
    big, half = (ball_volume(STD2, t, q).value for t in (200.0, 100.0))
    assert math.log(big) - math.log(half) == pytest.approx(6 * math.log(2), rel=0.02)


def test_doubling_slope_adjoint_with_log_correction():
    q = QuadratureSpec("grid", 256)
    big, half = (ball_volume(ADJ2, t, q).value for t in (200.0, 100.0))
    # ~ 2*log 2, inflated by the slowly varying log factor
    assert math.log(big) - math.log(half) == pytest.approx(2 * math.log(2), rel=0.25)


@pytest.mark.parametrize("method,samples", [("grid", 128), ("mc", 20_000)])
def test_monotone_in_radius_fixed_seed(method, samples):
    q = QuadratureSpec(method, samples, seed=3)
    vals = [ball_volume(STD2, t, q).value for t in (4.0, 6.0, 9.0, 14.0, 21.0, 32.0)]
    assert all(a <= b for a, b in zip(vals, vals[1:]))


def test_grid_resolution_convergence():
    for spec, T in ((STD2, 60.0), (ADJ2, 60.0)):
        a = ball_volume(spec, T, QuadratureSpec("grid", 512)).value
        b = ball_volume(spec, T, QuadratureSpec("grid", 256)).value
        assert abs(a - b) <= 0.01 * a


def test_mc_agrees_with_grid():
    ref = ball_volume(STD2, 50.0, QuadratureSpec("grid", 512)).value
    est = ball_volume(STD2, 50.0, QuadratureSpec("mc", 100_000, seed=5))
    assert abs(est.value - ref) <= max(4 * est.error, 0.05 * ref)


def test_truncation_guard():
    small = QuadratureSpec("grid", 64, radius=0.5)
    with pytest.raises(TruncationError):
        ball_volume(STD2, 50.0, small)
    big = QuadratureSpec("grid", 64, radius=1e3)
    assert ball_volume(STD2, 50.0, big).value > 0


def test_fit_powerlaw_exact_power():
    T = np.geomspace(10, 100, 8)
    fit = fit_powerlaw(T, T**6, "pure")
    assert fit.slope == pytest.approx(6.0, abs=1e-9)
    assert fit.r_squared == pytest.approx(1.0)


def test_fit_powerlaw_log_model_exact():
    T = np.geomspace(10, 100, 8)
    fit = fit_powerlaw(T, T**2 * np.log(T), "log")
    assert fit.slope == pytest.approx(2.0, abs=1e-8)
    assert fit.log_power == pytest.approx(1.0, abs=1e-8)


def test_fit_powerlaw_constant_is_slope_zero():
    T = np.geomspace(10, 100, 8)
    fit = fit_powerlaw(T, np.full(8, 3.7), "pure")
    assert fit.slope == pytest.approx(0.0, abs=1e-12)


def test_fit_powerlaw_input_validation():
    with pytest.raises(ValueError):
        fit_powerlaw([10, 20, 30], [1, 2, 3], "pure")  # too few points
    T = np.geomspace(10, 100, 8)
    with pytest.raises(ValueError):
        fit_powerlaw(T, T**2, "cubic")


def test_fit_growth_standard_slope():
    fit, ests, noisy = fit_growth(STD2, np.geomspace(20, 200, 8), QuadratureSpec("grid", 256), "pure")
    assert abs(fit.slope - 6.0) <= 0.2
    assert not noisy
    assert all(e.value > 0 for e in ests)


def test_fit_growth_adjoint_log_model():
    fit, _, _ = fit_growth(ADJ2, np.geomspace(100, 10_000, 10), QuadratureSpec("grid", 256), "log")
    assert abs(fit.slope - 2.0) <= 0.2


def test_simplex_check_k1_closed_form():
    # integral of e^t over [0, S] is e^S - 1; ratio tends to 1 from below
    chk = simplex_growth_check((1.0,), 0)
    for s, r in zip(chk.s_grid, chk.ratios):
        assert r == pytest.approx(1.0 - math.exp(-s), rel=1e-12)
    assert chk.passed


def test_simplex_check_k2_distinct_rates_closed_form():
    chk = simplex_growth_check((1.0, 2.0), 0)
    for s, r in zip(chk.s_grid, chk.ratios):
        exact = (math.exp(s) - 2 * math.exp(s / 2) + 1) / (math.exp(s) * s)
        assert r == pytest.approx(exact, rel=1e-10)
    assert chk.passed


def test_simplex_check_mixed_rates_pass():
    assert simplex_growth_check((1.0, 1.0, 3.0), 2).passed
    assert simplex_growth_check((1.0, 2.0, 2.0, 5.0), 1).passed


def test_simplex_check_detects_wrong_envelope():
    # dividing by one power of S too few must fail the growth caps
    chk = simplex_growth_check((1.0, 1.0), 0)
    inflated = [r * s for r, s in zip(chk.ratios, chk.s_grid)]
    tail = [r for s, r in zip(chk.s_grid, inflated) if s >= chk.burn_in]
    assert any(b > a * 1.02 for a, b in zip(tail, tail[1:])) or tail[-1] > tail[0] * 1.10


def test_simplex_check_validation():
    with pytest.raises(ValueError):
        simplex_growth_check((1.0,) * 5, 0)
    with pytest.raises(ValueError):
        simplex_growth_check((2.0, 1.0), 0)
    with pytest.raises(ValueError):
        simplex_growth_check((1.0,), 0, s_grid=(10.0, 80.0))

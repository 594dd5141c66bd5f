from __future__ import annotations

import numpy as np
import pytest

from rschoice.culture import (
    CultureParams,
    NotInteriorAtGhatError,
    culture_dynamics,
    culture_effort,
    culture_gbar,
    culture_reactance_comparative,
    culture_rsc_consistency,
    effort,
    steady_state,
    transmission_value,
)
from rschoice.media import InvalidParamsError


BASE = dict(beta=2.0, g_hat=2.0, v_hat=2.0, lambda_r=1.5, g=3.0, q0=0.3)


def test_effort_formula_examples():
    # interior branch: ((1-q)/beta * V/g)^(1/(beta-1)), corner (1/g)^(1/beta)
    assert effort(2.0, 1.0, 1.0, 0.0) == pytest.approx(0.5)
    assert effort(2.0, 2.0, 1.5, 1.0) == 0.0
    assert effort(3.0, 10.0, 1.0, 0.0) == 1.0  # corner binds


def test_transmission_value_shape():
    assert transmission_value(1.5, 2.0, 2.0, 1.5) == 2.0
    assert transmission_value(2.0, 2.0, 2.0, 1.5) == 2.0
    assert transmission_value(8.0, 2.0, 2.0, 2.0) == pytest.approx(2.0 * 16.0)


def test_culture_effort_sides():
    params = CultureParams(**BASE)
    d_minority = culture_effort(params, 0.3, 3.0, "minority")
    expected = effort(2.0, transmission_value(3.0, 2.0, 2.0, 1.5), 3.0, 0.3)
    assert d_minority == pytest.approx(expected)
    d_majority = culture_effort(params, 0.3, 1.0, "majority")
    assert d_majority == pytest.approx(effort(2.0, 2.0, 1.0, 0.7))
    with pytest.raises(InvalidParamsError):
        culture_effort(params, 1.5, 3.0, "minority")
    with pytest.raises(InvalidParamsError):
        culture_effort(params, 0.3, 3.0, "both")


def test_params_validation():
    with pytest.raises(InvalidParamsError):
        CultureParams(**{**BASE, "beta": 1.0})
    with pytest.raises(InvalidParamsError):
        CultureParams(**{**BASE, "g_hat": 0.9})
    with pytest.raises(InvalidParamsError):
        CultureParams(**{**BASE, "q0": 0.0})
    with pytest.raises(InvalidParamsError):
        CultureParams(**{**BASE, "g": 0.5})


def test_gbar_is_the_branch_crossing():
    params = CultureParams(**BASE)
    q = 0.4
    g_bar = culture_gbar(params, q)
    assert g_bar > params.g_hat
    interior = ((1 - q) / 2.0 * transmission_value(g_bar, 2.0, 2.0, 1.5) / g_bar)
    corner = (1.0 / g_bar) ** 0.5
    assert interior == pytest.approx(corner, abs=1e-8)


def test_gbar_converges_near_unit_reactance_rate():
    # a nearly flat value schedule still meets the falling budget corner
    params = CultureParams(**{**BASE, "lambda_r": 1.01})
    q = 0.3
    g_bar = culture_gbar(params, q)
    interior = (1 - q) / 2.0 * transmission_value(g_bar, 2.0, 2.0, 1.01) / g_bar
    assert interior == pytest.approx((1.0 / g_bar) ** 0.5, abs=1e-8)


def test_gbar_requires_interior_start():
    # huge base value puts the corner in charge already at the threshold
    params = CultureParams(**{**BASE, "v_hat": 50.0})
    with pytest.raises(NotInteriorAtGhatError):
        culture_gbar(params, 0.05)


def test_effort_profile_dips_then_rises_then_falls():
    params = CultureParams(**BASE)
    q = 0.35
    g_bar = culture_gbar(params, q)

    def d(g):
        return effort(2.0, transmission_value(g, 2.0, 2.0, 1.5), g, q)

    below = [d(g) for g in np.linspace(1.0, 2.0, 20)]
    assert all(b >= a - 1e-12 for a, b in zip(below[1:], below))
    middle = [d(g) for g in np.linspace(2.0 + 1e-9, g_bar, 20)]
    assert all(b >= a - 1e-12 for a, b in zip(middle, middle[1:]))
    beyond = [d(g) for g in np.linspace(g_bar, 2 * g_bar, 20)]
    assert all(b >= a - 1e-12 for a, b in zip(beyond[1:], beyond))
    # continuity at the reactance threshold and at the crossing
    assert d(2.0 - 1e-9) == pytest.approx(d(2.0 + 1e-9), abs=1e-6)
    assert d(g_bar - 1e-9) == pytest.approx(d(g_bar + 1e-9), abs=1e-6)


def test_steady_state_closed_forms():
    assert steady_state(CultureParams(**{**BASE, "g": 1.0})) == pytest.approx(0.5)
    params = CultureParams(beta=2, g_hat=2, v_hat=2, lambda_r=2, g=8, q0=0.3)
    assert steady_state(params) == pytest.approx(2.0 / 3.0)


def test_dynamics_converge_to_analytic_rest_point():
    params = CultureParams(**{**BASE, "lambda_r": 1.8, "q0": 0.2})
    out = culture_dynamics(params, record_every=200)
    assert out.converged
    assert out.q_end == pytest.approx(out.q_steady, abs=1e-6)
    assert out.d_star_minority == pytest.approx(out.d_star_majority, abs=1e-12)


def test_trajectory_stays_in_unit_interval_and_is_monotone():
    for q0 in (0.05, 0.45, 0.9):
        params = CultureParams(**{**BASE, "q0": q0, "horizon": 80.0})
        out = culture_dynamics(params, record_every=50)
        qs = [q for _, q in out.trajectory]
        assert all(0.0 <= q <= 1.0 for q in qs)
        toward = out.q_steady
        diffs = [abs(q - toward) for q in qs]
        assert all(b <= a + 1e-12 for a, b in zip(diffs, diffs[1:]))


def test_reactance_comparative_statics():
    low = CultureParams(**{**BASE, "lambda_r": 1.5, "g": 4.0})
    high = CultureParams(**{**BASE, "lambda_r": 2.5, "g": 4.0})
    q_low, q_high = culture_reactance_comparative(low, high)
    assert 0.0 < q_low < q_high < 1.0
    # below the threshold the rates cannot matter
    low = CultureParams(**{**BASE, "lambda_r": 1.5, "g": 1.5})
    high = CultureParams(**{**BASE, "lambda_r": 2.5, "g": 1.5})
    q_low, q_high = culture_reactance_comparative(low, high)
    assert q_low == q_high
    with pytest.raises(InvalidParamsError):
        culture_reactance_comparative(high, high)


def test_consistency_two_stage_matches_direct():
    params = CultureParams(**BASE)
    report = culture_rsc_consistency(params, 200)
    assert report.max_deviation_direct <= report.cell
    assert not report.grid_too_coarse
    # at g = 1 both sides maximize the same welfare objective exactly
    only_base = culture_rsc_consistency(params, 200, (1.0,))
    assert only_base.rows[0].deviation_direct == 0.0


def test_consistency_effort_within_one_cell_of_analytic():
    params = CultureParams(**BASE)
    g_bar = culture_gbar(params, params.q0)
    g_values = tuple(float(g) for g in np.linspace(params.g_hat + 0.05, g_bar, 8))
    report = culture_rsc_consistency(params, 200, g_values)
    for row in report.rows:
        assert abs(row.two_stage[1] - row.analytic[1]) <= report.cell + 1e-12


def test_consistency_deviation_shrinks_with_refinement():
    params = CultureParams(**BASE)
    g_bar = culture_gbar(params, params.q0)
    g_values = tuple(float(g) for g in np.linspace(1.0, 2 * g_bar, 20))
    coarse = culture_rsc_consistency(params, 200, g_values)
    fine = culture_rsc_consistency(params, 400, g_values)
    assert fine.max_deviation_analytic < coarse.max_deviation_analytic


def test_consistency_grid_guard():
    with pytest.raises(InvalidParamsError):
        culture_rsc_consistency(CultureParams(**BASE), 5)

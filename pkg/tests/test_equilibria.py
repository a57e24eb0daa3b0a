from dataclasses import replace

import numpy as np
import pytest

import oracles
from typea_stab.equilibria import find_equilibria, net_torque_slope, stable_equilibrium
from typea_stab.errors import DomainError, NoEquilibrium, StabilityMismatch
from typea_stab.machine import pullout_slip, thevenin_reduce

WINDS = (0.6, 0.7, 0.8, 0.9, 1.0, 1.1)


@pytest.fixture(scope="module")
def s_max(model):
    return pullout_slip(thevenin_reduce(model.machine), model.machine.r_r, 1.0)


def test_two_roots_at_rated_wind(model):
    g = lambda s: oracles.accel(s, 1.0)  # noqa: E731
    assert g(0.02) > 0 and g(0.022) < 0 and g(0.15) < 0 and g(0.175) > 0
    expected = oracles.scan_roots(g, 1e-6, 0.5)
    eqs = find_equilibria(model, 1.0)
    assert [e.stability for e in eqs] == ["stable", "unstable"]
    assert eqs[0].s_star == pytest.approx(0.0201, abs=1e-3)
    assert eqs[1].s_star == pytest.approx(0.16, abs=1e-2)
    for e, ref in zip(eqs, expected):
        assert e.s_star == pytest.approx(ref, abs=1e-11)
        assert e.residual <= 1e-10
        assert e.v_w == 1.0


def test_low_wind_single_stable_root(model, s_max):
    eqs = find_equilibria(model, 0.6)
    assert len(eqs) == 1
    assert eqs[0].stable and 0 < eqs[0].s_star < s_max
    assert oracles.scan_roots(lambda s: oracles.accel(s, 0.6), 1e-6, 0.5) == pytest.approx([eqs[0].s_star], abs=1e-11)


def test_no_equilibrium_for_tiny_wind(model):
    s = np.linspace(1e-6, 0.5, 2000)
    assert all(oracles.accel(x, 0.05) < 0 for x in s)
    with pytest.raises(NoEquilibrium):
        find_equilibria(model, 0.05)
    with pytest.raises(NoEquilibrium):
        stable_equilibrium(model, 0.05)


@pytest.mark.parametrize("v", [0.0, -1.0, 2.5])
def test_wind_out_of_range(model, v):
    with pytest.raises(DomainError):
        find_equilibria(model, v)


def test_stable_equilibrium_moves_up_with_wind(model, s_max):
    e1 = stable_equilibrium(model, 1.0)
    e11 = stable_equilibrium(model, 1.1)
    assert e11.s_star > e1.s_star
    assert e11.s_star < s_max and e11.stable


def test_lowest_root_unstable_is_mismatch(model):
    # at v_w = 2 the turbine torque is negative near s = 0; the only root is unstable
    eqs = find_equilibria(model, 2.0)
    assert not eqs[0].stable
    with pytest.raises(StabilityMismatch):
        stable_equilibrium(model, 2.0)


def test_unique_root_below_pullout(model, s_max):
    for v in WINDS:
        inside = [e for e in find_equilibria(model, v) if 0 < e.s_star < s_max]
        assert len(inside) == 1 and inside[0].stable


def test_interlacing(model, s_max):
    for v in (1.0, 1.05, 1.1, 1.15):
        stable, unstable = find_equilibria(model, v)
        assert stable.s_star < s_max < unstable.s_star


def test_gap_shrinks_with_wind(model):
    gaps = []
    for v in (0.9, 1.0, 1.1):
        eqs = find_equilibria(model, v)
        upper = eqs[1].s_star if len(eqs) > 1 else model.slip_domain_upper
        gaps.append(upper - eqs[0].s_star)
    assert gaps[0] > gaps[1] > gaps[2]


def test_residual_bound_everywhere(model):
    for v in np.linspace(0.3, 1.15, 18):
        for e in find_equilibria(model, float(v)):
            assert e.residual <= 1e-10


def test_classification_matches_slope_sign(model):
    for v in (0.6, 1.0, 1.1):
        for e in find_equilibria(model, v):
            assert (net_torque_slope(model, v, e.s_star) < 0) == e.stable


def test_high_wind_roots_still_bracketed(model):
    eqs = find_equilibria(model, 1.15)
    ref = oracles.scan_roots(lambda s: oracles.accel(s, 1.15), 1e-6, 0.5)
    assert [e.s_star for e in eqs] == pytest.approx(ref, abs=1e-11)


def test_rotor_resistance_moves_unstable_root_out(model):
    m2 = replace(model, machine=replace(model.machine, r_mult=2.0))
    eqs = find_equilibria(m2, 1.0)
    assert len(eqs) == 1 and eqs[0].stable

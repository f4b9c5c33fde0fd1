"""Parametric curve Theta(delta): models, inversion, gap, tangency, sharp constant.

The exact curve is delta(mu) = h/g, Theta(mu) = f^2/(4 pi^2 g) over the
screened triple; closed-form models approximate it with increasing fidelity
(theta0, exp_corrected) or asymptotically (loglog_asymptotic).
"""

import math

import pytest
from hypothesis import given, settings, strategies as st

from torsob.curve import (
    FOUR_MODE_THETA,
    MODELS,
    delta_critical,
    gap,
    loglog_lower_constant,
    mu_of_delta,
    tangent_condition,
    theta_model,
    theta_point,
)
from torsob.errors import DomainError
from torsob.lattice import beta_constant
from torsob.specfun import zeta_dirichlet

MU_STAR = 0.1221104705136475
DELTA_STAR = 3.9288361657183553
THETA_STAR = 0.3490872233533581


# ----------------------------------------------------------- exact curve


def test_four_mode_endpoint():
    tp = theta_point(-1.0)
    assert tp.delta == 1.0
    assert abs(tp.theta - 1.0 / math.pi**2) < 1e-15
    assert FOUR_MODE_THETA == pytest.approx(1.0 / math.pi**2, abs=1e-16)


def test_theta_point_frozen_mu_star():
    tp = theta_point(MU_STAR)
    assert abs(tp.delta - DELTA_STAR) < 2e-11
    assert abs(tp.theta - THETA_STAR) < 2e-12
    assert tp.model == "exact"


def test_resonance_band_rejected():
    with pytest.raises(DomainError):
        theta_point(-0.5)


def test_delta_critical_moment_ratio():
    z4a, b4 = zeta_dirichlet(2.0)
    z6a, b6 = zeta_dirichlet(3.0)
    ratio = (z4a.value * b4.value) / (z6a.value * b6.value)
    assert abs(delta_critical() - ratio) < 1e-12
    assert abs(delta_critical() - 1.2936088833041828) < 1e-13


def test_branch_split_at_delta_critical():
    # above the moment ratio the positive branch is used, below the negative
    assert mu_of_delta(2.0) > 0.0
    assert mu_of_delta(1.2) < -1.0


@pytest.mark.parametrize(
    "delta,mu",
    [
        (2.0, 0.52054486310305),
        (3.0, 0.20025729782679624),
        (4.0, 0.1184022201026829),
    ],
)
def test_mu_of_delta_frozen(delta, mu):
    assert abs(mu_of_delta(delta) - mu) < 1e-10


@given(st.floats(min_value=0.1, max_value=4.6))
@settings(max_examples=25, deadline=None)
def test_mu_of_delta_round_trip(logd):
    delta = math.exp(logd)
    mu = mu_of_delta(delta)
    assert abs(theta_point(mu).delta - delta) < 1e-9 * delta


def test_mu_of_delta_domain():
    with pytest.raises(DomainError):
        mu_of_delta(0.9)  # delta < 1 is impossible (Cauchy-Schwarz)


# ---------------------------------------------------------------- models


def test_models_tuple():
    assert MODELS == ("exact", "theta0", "exp_corrected", "loglog_asymptotic")
    with pytest.raises(DomainError):
        theta_model("bogus", 2.0)


@pytest.mark.parametrize(
    "delta,truth",
    [
        (1.0, 0.10132118364233778),
        (2.0, 0.26651186311040814),
        (4.0, 0.35111590832941114),
    ],
)
def test_exact_model_frozen(delta, truth):
    assert abs(theta_model("exact", delta) - truth) < 1e-12


@pytest.mark.parametrize(
    "delta,truth",
    [
        (1.0, 0.17796516932166057),
        (2.0, 0.2665992984887508),
        (4.0, 0.35111591154057703),
    ],
)
def test_theta0_model_frozen(delta, truth):
    assert abs(theta_model("theta0", delta) - truth) < 1e-12


def test_theta0_closed_form_through_own_map():
    # the logarithmic model is the parametric pair
    #   delta0(mu) = (pi/mu - 1)/b,  Theta0(mu) = a^2/(4 pi^2 b),
    #   a = pi log(1/mu) + beta + mu,  b = a - pi + mu,
    # inverted through its own delta map.  Re-derive mu for delta = 2 by
    # bisection on the stated map and compare.
    beta = beta_constant().value

    def pair(mu):
        a = math.pi * math.log(1.0 / mu) + beta + mu
        b = a - math.pi + mu
        return (math.pi / mu - 1.0) / b, a * a / (4.0 * math.pi**2 * b)

    lo, hi = 1e-6, 1.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if pair(mid)[0] > 2.0:
            lo = mid
        else:
            hi = mid
    assert abs(theta_model("theta0", 2.0) - pair(0.5 * (lo + hi))[1]) < 1e-10


def test_exp_corrected_brackets_exact():
    # theta0 overshoots, the exponentially corrected model undershoots
    for delta in (2.0, 4.0):
        e = theta_model("exact", delta)
        t0 = theta_model("theta0", delta)
        ec = theta_model("exp_corrected", delta)
        assert ec < e < t0
        assert abs(ec - e) < 2.0 * abs(t0 - e)


def test_loglog_model_closed_form():
    d = 10.0
    pred = (
        math.log(d)
        + math.log(math.log(d))
        + (beta_constant().value + math.pi) / math.pi
        + math.log(math.log(d)) / math.log(d)
    ) / (4.0 * math.pi)
    assert abs(theta_model("loglog_asymptotic", d) - pred) < 1e-14
    with pytest.raises(DomainError):
        theta_model("loglog_asymptotic", 1.0)


def test_models_converge_at_large_delta():
    d = 5e3
    e = theta_model("exact", d)
    # closed-form models are exponentially close to the exact curve out here
    assert abs(theta_model("theta0", d) - e) < 1e-12
    assert abs(theta_model("exp_corrected", d) - e) < 1e-12
    # the asymptotic series converges only at (log log / log)^2 speed
    ll_err = abs(theta_model("loglog_asymptotic", d) - e)
    scale = (math.log(math.log(d)) / math.log(d)) ** 2 / (4.0 * math.pi)
    assert ll_err < 1.5 * scale


# ------------------------------------------------------------------ gap


def test_gap_frozen_at_four():
    assert abs(gap(4.0) - 3.211165888750145e-09) < 1e-12


def test_gap_positive_where_resolvable():
    # the gap is exponentially small in delta; beyond ~6 it drops under
    # double-precision resolution, so strict positivity is only checkable
    # on the early range
    for d in (1.0, 1.5, 2.0, 3.0, 4.0, 5.0):
        assert gap(d) > 0.0
    for d in (8.0, 20.0, 50.0):
        assert gap(d) >= -1e-11


def test_gap_shrinks_with_delta():
    assert gap(2.0) > gap(3.0) > gap(4.0) > 0.0


# ------------------------------------------------- tangency and constants


def test_tangent_condition_frozen():
    assert abs(tangent_condition(0.01) - (-10.867267798919714)) < 1e-9
    assert abs(tangent_condition(0.1) - (-0.6183982379632418)) < 1e-9


def test_tangent_condition_negative_on_range():
    for mu in (1e-4, 1e-3, 1e-2, 0.05, 0.15, 0.3):
        assert tangent_condition(mu) < 0.0


def test_loglog_lower_constant():
    beta = beta_constant().value
    assert abs(loglog_lower_constant() - (beta + math.pi) / math.pi) < 1e-14
    assert abs(loglog_lower_constant() - 1.8228252496788484) < 1e-14


def test_mu_star_is_local_max_of_defect():
    # defect F(mu) = Theta - (1/4pi)(log d + log(1 + log d)); its sup over
    # the curve, times 4 pi, is the sharp double-log constant
    def defect(mu):
        tp = theta_point(mu)
        return tp.theta - (
            math.log(tp.delta) + math.log1p(math.log(tp.delta))
        ) / (4.0 * math.pi)

    f0 = defect(MU_STAR)
    assert f0 > defect(MU_STAR * 1.05)
    assert f0 > defect(MU_STAR / 1.05)
    assert abs(4.0 * math.pi * f0 - 2.1562255281542130) < 1e-9

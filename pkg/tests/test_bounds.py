"""Upper bounds on Theta(delta): embedding route, elementary comparison,
mode splitting, and the single-log minimization."""

import math

import numpy as np
import pytest

from torsob.bounds import (
    alpha_constant,
    elementary_comparison,
    embedding_constant,
    first_method_bound,
    mode_splitting_bound,
)
from torsob.curve import theta_model
from torsob.errors import DomainError
from torsob.lattice import partial_inverse_square_sum
from torsob.specfun import lambert_w, zeta_dirichlet


def epstein(p: float) -> float:
    z, b = zeta_dirichlet(p / 2.0)
    return 4.0 * z.value * b.value


# ---------------------------------------------------------------- alpha


def test_alpha_closed_form():
    w = lambert_w(0, -2.0 * math.exp(-2.0)).value
    truth = (math.exp(w + 2.0) - 1.0) / (w + 2.0) ** 2
    assert abs(alpha_constant() - truth) < 1e-14
    assert abs(alpha_constant() - 1.5441386523708702) < 1e-14


# ---------------------------------------------------- embedding constant


def test_embedding_constant_closed_forms():
    assert abs(embedding_constant(1.0) - epstein(4.0) / (4.0 * math.pi**2)) < 1e-12
    assert abs(embedding_constant(0.5) - epstein(3.0) / (4.0 * math.pi**2)) < 1e-10


def test_embedding_constant_monotone_decreasing():
    vals = [embedding_constant(e) for e in (0.25, 0.5, 1.0, 2.0)]
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_embedding_constant_domain():
    with pytest.raises(DomainError):
        embedding_constant(0.0)
    with pytest.raises(DomainError):
        embedding_constant(-1.0)


# ------------------------------------------------- elementary comparison


def test_elementary_comparison_dominance_and_limit():
    ratios = []
    for mu in (0.3, 0.1, 0.05):
        ec = elementary_comparison(mu)
        assert ec.B >= ec.A > 0.0
        assert 0.0 < ec.eps_argmin <= 1.0
        ratios.append(ec.B / ec.A)
    # B/A decreases toward the loss factor alpha as mu -> 0 (slow, log rate)
    assert ratios[0] > ratios[1] > ratios[2] > alpha_constant()


def test_elementary_comparison_frozen():
    ec = elementary_comparison(0.3)
    assert abs(ec.A - 44.45258590471209) < 1e-8
    assert abs(ec.B - 121.23278844155571) < 1e-8


def test_elementary_comparison_domain():
    with pytest.raises(DomainError):
        elementary_comparison(0.7)  # needs mu in (0, 0.5]
    with pytest.raises(DomainError):
        elementary_comparison(0.0)


# --------------------------------------------------------- mode splitting


def brute_split(delta: float, shell_cap: int = 1600) -> tuple[float, float]:
    """Exhaustive minimization over every shell radius with |k|^2 <= cap."""
    k = np.arange(-50, 51)
    q = (k[:, None] ** 2 + k[None, :] ** 2).ravel()
    q = q[(q > 0) & (q <= shell_cap)]
    shells = np.unique(q)
    total4 = epstein(4.0)
    best, best_n = math.inf, 0.0
    low2 = 0.0
    low4 = 0.0
    counts = np.bincount(q, minlength=shells.max() + 1)
    for m in shells:
        c = counts[m]
        low2 += c / m
        low4 += c / m**2
        val = (math.sqrt(low2) + math.sqrt(delta) * math.sqrt(total4 - low4)) ** 2
        if val < best - 1e-15:
            best, best_n = val, math.sqrt(m)
    return best / (4.0 * math.pi**2), best_n


@pytest.mark.parametrize("delta", [2.0, 6.0, 10.0])
def test_mode_splitting_matches_brute(delta):
    P, N = mode_splitting_bound(delta)
    Pb, Nb = brute_split(delta)
    assert abs(P - Pb) < 1e-10
    assert abs(N - Nb) < 1e-12


def test_mode_splitting_frozen():
    P, N = mode_splitting_bound(2.0)
    assert abs(P - 0.38183122552141724) < 1e-12
    assert abs(N - math.sqrt(2.0)) < 1e-12
    P6, N6 = mode_splitting_bound(6.0)
    assert abs(P6 - 0.4971840517592267) < 1e-12
    assert abs(N6 - math.sqrt(20.0)) < 1e-12


def test_mode_splitting_dominates_theta():
    for delta in (1.0, 2.0, 10.0, 100.0):
        P, _ = mode_splitting_bound(delta)
        assert P >= theta_model("exact", delta)


def test_mode_splitting_low_sum_consistency():
    # the low part of the split is the partial inverse-square sum
    assert abs(partial_inverse_square_sum(1.0) - 4.0) < 1e-13


def test_mode_splitting_domain():
    with pytest.raises(DomainError):
        mode_splitting_bound(0.5)


# ------------------------------------------------------ single-log bound


def test_first_method_frozen():
    assert abs(first_method_bound(2.0) - 0.32360644349722284) < 1e-10
    assert abs(first_method_bound(6.0) - 0.548393615051356) < 1e-10
    assert abs(first_method_bound(10.0) - 0.6616250613964029) < 1e-10


def test_first_method_dominates_theta():
    for delta in (1.5, 2.0, 6.0, 10.0, 50.0):
        assert first_method_bound(delta) >= theta_model("exact", delta)


def test_first_method_is_a_min_over_eps():
    # no single eps may beat the reported minimum
    delta = 6.0
    fm = first_method_bound(delta)
    for eps in (0.05, 0.1, 0.2, 0.4):
        assert fm <= embedding_constant(eps) * delta**eps * (1.0 + 1e-12) + 1e-12


def test_first_method_log_factor_tends_to_e():
    ratio = first_method_bound(1e8) / (math.log(1e8) / (4.0 * math.pi))
    assert math.e < ratio < 1.1 * math.e


def test_first_method_domain():
    with pytest.raises(DomainError):
        first_method_bound(0.9)

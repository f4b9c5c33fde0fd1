"""Lattice-sum engine: dual-route agreement, identities, tail brackets, counting.

The screened triple over Z^2 \\ {0} with q = |k|^2:

    f(mu) = sum' 1/(q(1+mu q)),  g(mu) = sum' 1/(q(1+mu q)^2),
    h(mu) = sum' 1/(1+mu q)^2,   and exactly  g = f - mu h.

The general (d,n) triple screens with q^n:

    f = sum' 1/(1+mu q^n),  g = sum' 1/(1+mu q^n)^2,  h = (f-g)/mu.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from torsob.errors import DomainError, ToleranceUnreachableError
from torsob.lattice import (
    CaseDN,
    PrecisionConfig,
    TailDescriptor,
    beta_constant,
    critical_sums,
    general_sums,
    hardy_sum,
    hardy_sum_theta_split,
    is_representable,
    next_representable,
    partial_inverse_square_sum,
    r2_count,
    tail_bracket,
)
from torsob.specfun import dirichlet_beta_prime_at_1, zeta_dirichlet

EULER_GAMMA = 0.5772156649015329
CATALAN = 0.915965594177219
CFG10 = PrecisionConfig(target_abs_tol=1e-10)


def epstein(p: float) -> float:
    """sum' |k|^{-p} over Z^2 by the multiplicative factorization."""
    z, b = zeta_dirichlet(p / 2.0)
    return 4.0 * z.value * b.value


# ------------------------------------------------------------ constants


def test_beta_constant_closed_form():
    truth = math.pi * (
        2.0 * EULER_GAMMA + 2.0 * math.log(2.0) + 3.0 * math.log(math.pi)
        - 4.0 * math.lgamma(0.25)
    )
    sv = beta_constant()
    assert abs(sv.value - truth) < 1e-14
    assert abs(sv.value - 2.584981759579253) < 1e-14


def test_beta_constant_beta_prime_identity():
    # pi*gamma + 4*beta_D'(1) reproduces the same constant
    alt = math.pi * EULER_GAMMA + 4.0 * dirichlet_beta_prime_at_1().value
    assert abs(beta_constant().value - alt) < 1e-12


# ------------------------------------------------------- critical triple


def test_critical_identity_frozen_mu_star():
    s = critical_sums(0.1221104705136475)
    assert abs(s.f.value - 9.313324718412723) < 2e-12
    assert abs(s.f.value - s.mu * s.h.value - s.g.value) < 1e-12 * abs(s.f.value)
    # the curve quantities derived from the triple
    delta = s.h.value / s.g.value
    theta = s.f.value**2 / (4.0 * math.pi**2 * s.g.value)
    assert abs(delta - 3.9288361657183553) < 5e-11
    assert abs(theta - 0.3490872233533581) < 5e-12


@given(st.floats(min_value=-2.7, max_value=4.0))
@settings(max_examples=40, deadline=None)
def test_critical_identity_property(logmu):
    mu = math.exp(logmu)
    s = critical_sums(mu)
    scale = max(abs(s.f.value), abs(mu * s.h.value))
    assert abs(s.f.value - mu * s.h.value - s.g.value) < 1e-11 * scale
    assert s.f.value > 0 and s.g.value > 0 and s.h.value > 0


@pytest.mark.parametrize("mu", [0.05, 0.3, 3.0])
def test_critical_dual_route(mu):
    s1 = critical_sums(mu, method="direct", cfg=CFG10)
    s2 = critical_sums(mu, method="accelerated", cfg=CFG10)
    assert s1.method == "direct" and s2.method == "accelerated"
    for a, b in ((s1.f, s2.f), (s1.g, s2.g), (s1.h, s2.h)):
        assert abs(a.value - b.value) < 1e-10 * max(1.0, abs(a.value))


def test_critical_small_mu_log_asymptote():
    # f(mu) = pi log(1/mu) + beta + mu + O(mu^2 log) as mu -> 0
    mu = 0.01
    f = critical_sums(mu).f.value
    pred = math.pi * math.log(1.0 / mu) + beta_constant().value + mu
    assert abs(f - pred) < 1e-6


def test_critical_large_mu_power_asymptote():
    # f(mu) = Z(4)/mu - Z(6)/mu^2 + O(mu^-3)
    mu = 200.0
    f = critical_sums(mu).f.value
    pred = epstein(4.0) / mu - epstein(6.0) / mu**2
    assert abs(f - pred) < 1.2 * epstein(8.0) / mu**3


def test_critical_negative_branch():
    # mu <= -1 is the analytic continuation; (-1, 0) is the resonance band
    s = critical_sums(-2.0)
    assert abs(s.f.value - s.mu * s.h.value - s.g.value) < 1e-11 * abs(s.f.value)
    with pytest.raises(DomainError):
        critical_sums(-0.5)
    with pytest.raises(DomainError):
        critical_sums(0.0)


def test_critical_error_bounds_reported():
    s = critical_sums(0.7)
    for sv in (s.f, s.g, s.h):
        assert 0.0 < sv.abs_error_bound <= 1e-11


def test_critical_direct_error_floor():
    # at small mu the direct route cannot certify 1e-12 and must say so
    with pytest.raises(ToleranceUnreachableError):
        critical_sums(0.1, method="direct")


def test_critical_unknown_method():
    with pytest.raises(DomainError):
        critical_sums(0.1, method="bogus")


# ------------------------------------------------------- general triple


def test_general_sums_brute_1d():
    mu, n = 0.5, 2
    s = general_sums(CaseDN(1, n), mu)
    ks = np.arange(1, 10000, dtype=float)
    t = 1.0 / (1.0 + mu * ks ** (2 * n))
    bf, bg = 2.0 * t.sum(), 2.0 * (t * t).sum()
    assert abs(s.f.value - bf) < 5e-11
    assert abs(s.g.value - bg) < 5e-11
    assert abs(s.h.value - (bf - bg) / mu) < 2e-10


def test_general_sums_brute_2d():
    mu, n = 0.9, 3
    s = general_sums(CaseDN(2, n), mu)
    k = np.arange(-650, 651)
    q = (k[:, None] ** 2 + k[None, :] ** 2).astype(float)
    q[650, 650] = np.inf
    t = 1.0 / (1.0 + mu * q**n)
    assert abs(s.f.value - t.sum()) < 2e-11
    assert abs(s.g.value - (t * t).sum()) < 2e-11


def test_general_sums_identity_property():
    for (d, n), mu in [((1, 3), 0.02), ((2, 2), 1.7), ((3, 2), 0.4)]:
        s = general_sums(CaseDN(d, n), mu)
        assert abs(s.f.value - s.g.value - mu * s.h.value) < 1e-11 * abs(s.f.value)


def test_general_sums_cap_raises():
    # d = 3 at tiny mu needs an enumeration radius beyond any sane budget
    with pytest.raises(ToleranceUnreachableError):
        general_sums(CaseDN(3, 2), 1e-18)


def test_case_dn_admissibility():
    CaseDN(1, 1)
    CaseDN(2, 2)
    CaseDN(3, 2)
    with pytest.raises(DomainError):
        CaseDN(2, 1)  # needs 2n - d > 0
    with pytest.raises(DomainError):
        CaseDN(3, 1)
    with pytest.raises(DomainError):
        CaseDN(4, 2)
    with pytest.raises(DomainError):
        CaseDN(1, 0)


# ------------------------------------------------------------ Hardy sums


def test_hardy_closed_form():
    assert abs(hardy_sum(1.0).value - epstein(4.0)) < 1e-12


@pytest.mark.parametrize("eps", [0.5, 1.0, 2.0])
def test_hardy_split_agreement(eps):
    a = hardy_sum(eps)
    b = hardy_sum_theta_split(eps)
    assert abs(a.value - b.value) < 1e-9


def test_hardy_domain():
    with pytest.raises(DomainError):
        hardy_sum(0.0)
    with pytest.raises(DomainError):
        hardy_sum(-0.3)


# ---------------------------------------------------------- tail brackets


def brute_tail(weight, R, big=3000):
    k = np.arange(-big, big + 1)
    q = (k[:, None] ** 2 + k[None, :] ** 2).astype(float)
    q[big, big] = np.inf
    mask = q > R * R
    return float(weight(q[mask]).sum())


def test_tail_bracket_plain_encloses():
    # one-shot sandwich: wider, but still rigorous
    lo, hi = tail_bracket(50.0, TailDescriptor("inverse_power", p=4.0))
    truth = brute_tail(lambda q: q**-2.0, 50.0)
    assert lo <= truth + 4e-7 and truth <= hi + 1e-12
    assert 0.0 < hi - lo < 5e-4


def test_tail_bracket_extended_inverse_power():
    lo, hi = tail_bracket(
        50.0, TailDescriptor("inverse_power", p=4.0), PrecisionConfig()
    )
    truth = brute_tail(lambda q: q**-2.0, 50.0)
    assert lo <= truth + 4e-7 and truth <= hi + 1e-12
    assert 0.0 < hi - lo < 1e-5


def test_tail_bracket_extended_screened_h_width():
    lo, hi = tail_bracket(50.0, TailDescriptor("screened_h", mu=1.0), PrecisionConfig())
    truth = brute_tail(lambda q: (1.0 + q) ** -2.0, 50.0)
    assert lo <= truth + 4e-7 and truth <= hi + 1e-12
    assert hi - lo < 1e-5


def test_tail_bracket_screened_f_encloses():
    lo, hi = tail_bracket(50.0, TailDescriptor("screened_f", mu=1.0), PrecisionConfig())
    truth = brute_tail(lambda q: 1.0 / (q * (1.0 + q)), 50.0)
    assert lo <= truth + 4e-7 and truth <= hi + 1e-12


def test_tail_bracket_monotone_in_radius():
    d = TailDescriptor("screened_g", mu=0.3)
    prev = tail_bracket(40.0, d)
    for R in (80.0, 160.0):
        cur = tail_bracket(R, d)
        assert cur[1] < prev[1]
        prev = cur


def test_tail_descriptor_validation():
    with pytest.raises(DomainError):
        TailDescriptor("bogus")
    with pytest.raises(DomainError):
        tail_bracket(50.0, TailDescriptor("screened_f"))  # mu defaulted to 0


# ------------------------------------------------- counting and partials


def test_r2_cumulative_small_values():
    # R2(m) counts nonzero lattice points in the closed disk |k|^2 <= m
    assert [r2_count(m) for m in range(0, 11)] == [0, 4, 8, 8, 12, 20, 20, 20, 24, 28, 36]
    assert r2_count(25) - r2_count(24) == 12  # the |k|^2 = 25 shell


def test_r2_shell_jacobi_divisor_formula():
    for m in range(1, 300):
        d1 = sum(1 for t in range(1, m + 1) if m % t == 0 and t % 4 == 1)
        d3 = sum(1 for t in range(1, m + 1) if m % t == 0 and t % 4 == 3)
        assert r2_count(m) - r2_count(m - 1) == 4 * (d1 - d3)


def test_r2_gauss_circle():
    M = 5000
    assert abs(r2_count(M) - math.pi * M) < 10.0 * math.sqrt(M)


def test_representable_matches_r2_shells():
    reps = [m for m in range(1, 30) if is_representable(m)]
    assert reps == [m for m in range(1, 30) if r2_count(m) > r2_count(m - 1)]
    assert reps[:7] == [1, 2, 4, 5, 8, 9, 10]


@given(st.integers(min_value=0, max_value=4000))
@settings(max_examples=60, deadline=None)
def test_next_representable_property(m):
    nxt = next_representable(m)
    assert nxt > m and is_representable(nxt)
    assert all(not is_representable(t) for t in range(m + 1, nxt))


def test_partial_inverse_square_brute():
    truth = 0.0
    for i in range(-10, 11):
        for j in range(-10, 11):
            q = i * i + j * j
            if 0 < q <= 100:
                truth += 1.0 / q
    assert abs(partial_inverse_square_sum(10.0) - truth) < 1e-12


def test_partial_inverse_square_log_growth():
    # sum_{|k|<=N} 1/|k|^2 grows like 2 pi log N
    d = partial_inverse_square_sum(800.0) - partial_inverse_square_sum(400.0)
    assert abs(d - 2.0 * math.pi * math.log(2.0)) < 0.02


# ------------------------------------------------------------- config


def test_precision_config_validation():
    with pytest.raises(DomainError):
        PrecisionConfig(target_abs_tol=-1.0)
    with pytest.raises(DomainError):
        PrecisionConfig(max_radius=0)

"""Elementary upper bounds for the critical interpolation constant.

Two textbook strategies bound the sharp curve Theta(delta) from above, and
both lose against it in a quantifiable way:

* the fractional-embedding route pays a factor that tends to the Lambert-W
  constant alpha ~ 1.544 in the squared-log leading term (and a factor e in
  the single-log form C(eps) delta^eps);
* the mode-splitting route, which cuts Fourier space at a radius N and
  optimizes N, recovers the correct log delta + log log delta shape and
  misses only in the additive constant.

This module computes the sharp embedding constant C(eps), the A/B
comparison at the extremals that exhibits the alpha loss, the closed form
of alpha itself, and the optimized mode-splitting bound P(delta).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._optim import golden_min
from .errors import DomainError, ResourceLimitError, ToleranceUnreachableError
from .lattice import (
    DEFAULT_CONFIG,
    PrecisionConfig,
    TailDescriptor,
    _shells,
    _z2_moment,
    critical_sums,
    hardy_sum,
    tail_bracket,
)
from .specfun import lambert_w

__all__ = [
    "ElementaryComparison",
    "embedding_constant",
    "elementary_comparison",
    "alpha_constant",
    "mode_splitting_bound",
    "first_method_bound",
]

_FOUR_PI_SQ = 4.0 * math.pi**2

#: search interval for the eps-infimum (the infimum sits at small eps, but
#: never at 0 where C blows up)
_EPS_LO, _EPS_HI = 1e-4, 0.5


def embedding_constant(eps: float, cfg: PrecisionConfig = DEFAULT_CONFIG) -> float:
    """Sharp constant C(eps) of the fractional embedding controlling the
    sup norm: C(eps) = (sum' |k|^{-2(1+eps)})/(4 pi^2) = 1/(4 pi eps) + O(1)."""
    if not (eps > 0.0):
        raise DomainError(f"embedding_constant: need eps > 0, got {eps!r}")
    return hardy_sum(eps, cfg).value / _FOUR_PI_SQ


@dataclass(frozen=True)
class ElementaryComparison:
    """A(mu) = f(mu)^2 (what the extremal achieves) against the best
    fractional-embedding bound B(mu) for the same quantity."""

    mu: float
    A: float
    B: float
    eps_argmin: float

    def __post_init__(self) -> None:
        if self.B < self.A * (1.0 - 1e-9):
            raise DomainError(
                "ElementaryComparison: B must upper-bound A "
                f"(got A={self.A!r}, B={self.B!r})"
            )


def _mixed_sum(mu: float, eps: float, cfg: PrecisionConfig) -> float:
    """sum' of |k|^{-2(1-eps)}/(1 + mu |k|^2): the mixed norm driving the
    B side, summed directly with a rigorous tail bracket."""
    radius = int(max(96, math.ceil(3.0 / math.sqrt(mu)) + 2))
    if radius > 3400:
        raise ToleranceUnreachableError(
            f"elementary_comparison: mu={mu:g} needs a tail radius beyond the "
            "point budget"
        )
    q, c = _shells(2, radius)
    cut = np.searchsorted(q, float(radius * radius), side="right")
    desc = TailDescriptor(kind="hardy_mixed", mu=mu, eps=eps)
    body = float(np.dot(c[:cut], desc.evaluate(q[:cut])))
    lo, hi = tail_bracket(float(radius), desc, cfg)
    return body + 0.5 * (lo + hi)


def elementary_comparison(
    mu: float, cfg: PrecisionConfig = DEFAULT_CONFIG
) -> ElementaryComparison:
    """Compare A(mu) = f(mu)^2 with B(mu) = inf_eps C(eps) * (mixed norm).

    The infimum is a golden-section search in log eps over [1e-4, 1/2]; as
    mu decreases, B/A tends to the Lambert-W constant alpha.
    """
    if not (0.0 < mu <= 0.5):
        raise DomainError(f"elementary_comparison: need mu in (0, 0.5], got {mu!r}")
    f = critical_sums(mu, "auto", cfg).f.value
    A = f * f

    def objective(log_eps: float) -> float:
        eps = math.exp(log_eps)
        return hardy_sum(eps, cfg).value * _mixed_sum(mu, eps, cfg)

    log_eps, B = golden_min(
        objective, math.log(_EPS_LO), math.log(_EPS_HI), xtol=1e-6
    )
    return ElementaryComparison(mu=mu, A=A, B=B, eps_argmin=math.exp(log_eps))


def alpha_constant() -> float:
    """The loss factor alpha = (e^{W(-2e^-2)+2} - 1)/(W(-2e^-2)+2)^2 of the
    fractional-embedding route (W = principal Lambert branch); ~1.5441."""
    w = lambert_w(0, -2.0 * math.exp(-2.0)).value
    t = w + 2.0
    return (math.exp(t) - 1.0) / (t * t)


# ---------------------------------------------------------------------------
# mode splitting
# ---------------------------------------------------------------------------

_EXACT_ENUM_LIMIT = 1e5  # N*^2 below this: enumerate every representable radius
_POINT_CAP = 4e9  # squared-radius cap for the candidate sweep


def _partial_sums_at(m_list: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """S2(m) = sum over 0 < |k|^2 <= m of |k|^-2 (and S4 with |k|^-4) for an
    ascending array of squared radii, in one row pass over the lattice."""
    m_max = int(m_list[-1])
    kmax = math.isqrt(m_max)
    S2 = np.zeros(len(m_list))
    S4 = np.zeros(len(m_list))
    for k1 in range(0, kmax + 1):
        rem = m_max - k1 * k1
        if rem < 0:
            break
        k2 = np.arange(0 if k1 > 0 else 1, math.isqrt(rem) + 1, dtype=np.float64)
        if len(k2) == 0:
            continue
        q = k1 * k1 + k2 * k2
        w = np.where(k2 > 0.0, 2.0, 1.0) * (2.0 if k1 > 0 else 1.0)
        c2 = np.cumsum(w / q)
        c4 = np.cumsum(w / (q * q))
        idx = np.searchsorted(q, m_list + 0.5)
        good = idx > 0
        S2[good] += c2[idx[good] - 1]
        S4[good] += c4[idx[good] - 1]
    return S2, S4


def _prev_representable(m: int) -> int:
    from .lattice import is_representable

    while m > 1 and not is_representable(m):
        m -= 1
    return max(m, 1)


def mode_splitting_bound(
    delta: float, cfg: PrecisionConfig = DEFAULT_CONFIG
) -> tuple[float, float]:
    """The optimized split bound P(delta) and its minimizing cut radius.

    P(delta) = (1/4 pi^2) min_N (sqrt(S_low(N)) + sqrt(delta) sqrt(S_high(N)))^2
    with S_low = sum over 0 < |k| <= N of |k|^-2 and S_high the complementary
    |k|^-4 tail.  Both sums are step functions of N, so the minimum is taken
    over exact shell radii (squared norms representable as a sum of two
    squares); ties break toward the smaller radius.  Returns (P, N_min).
    """
    if not (delta >= 1.0):
        raise DomainError(f"mode_splitting_bound: need delta >= 1, got {delta!r}")
    n_star2 = delta * math.log(max(delta, 2.0))
    if 6.0 * n_star2 > _POINT_CAP:
        raise ResourceLimitError(
            f"mode_splitting_bound: delta={delta:g} needs cut radii beyond "
            "the lattice point budget"
        )
    if n_star2 < _EXACT_ENUM_LIMIT:
        m_cap = int(max(16.0 * n_star2, 400.0))
        q, _ = _shells(2, math.isqrt(m_cap) + 1)
        cands = q[q <= m_cap].astype(np.int64)
    else:
        raw = np.geomspace(n_star2 / 6.0, 6.0 * n_star2, 700).astype(np.int64)
        cands = np.unique([_prev_representable(int(m)) for m in raw])
    S2, S4 = _partial_sums_at(cands.astype(np.float64))
    S_high = np.maximum(_z2_moment(2).value - S4, 0.0)
    vals = (np.sqrt(S2) + math.sqrt(delta) * np.sqrt(S_high)) ** 2 / _FOUR_PI_SQ
    i = int(np.argmin(vals))
    return float(vals[i]), math.sqrt(float(cands[i]))


def first_method_bound(
    delta: float, cfg: PrecisionConfig = DEFAULT_CONFIG
) -> float:
    """The single-log bound min over eps of C(eps) delta^eps; for large
    delta this exceeds (1/4 pi) log delta by a factor tending to e."""
    if not (delta >= 1.0):
        raise DomainError(f"first_method_bound: need delta >= 1, got {delta!r}")

    def objective(log_eps: float) -> float:
        eps = math.exp(log_eps)
        return embedding_constant(eps, cfg) * delta**eps

    _, val = golden_min(objective, math.log(_EPS_LO), math.log(_EPS_HI), xtol=1e-8)
    return val

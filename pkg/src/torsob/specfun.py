"""Special-function kernel: Bessel K0/K1, Lambert W, zeta, Dirichlet beta.

Every public routine returns a :class:`SpecialValue` carrying the computed
number together with an a-posteriori absolute error bound, so that callers
can propagate certified accuracy through lattice sums and root solves.

References for the classical material:

* modified Bessel functions: Abramowitz & Stegun, Handbook of Mathematical
  Functions, ch. 9; DLMF ch. 10.
* Lambert W: Corless, Gonnet, Hare, Jeffrey & Knuth, "On the Lambert W
  function", Adv. Comput. Math. 5 (1996) 329-359.
* Dirichlet beta acceleration: Cohen, Rodriguez Villegas & Zagier,
  "Convergence acceleration of alternating series", Exp. Math. 9 (2000).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.special import k0 as _scipy_k0, k1 as _scipy_k1, zeta as _scipy_zeta

from .errors import DomainError

__all__ = [
    "SpecialValue",
    "EULER_GAMMA",
    "CATALAN",
    "bessel_k",
    "lambert_w",
    "zeta_dirichlet",
    "dirichlet_beta",
    "dirichlet_beta_prime_at_1",
    "log_gamma",
    "erfc",
]

#: Euler-Mascheroni constant, 20 correct digits.
EULER_GAMMA = 0.57721566490153286061

# Bessel K underflows to an exact IEEE zero around x ~ 745; beyond ~740 the
# true value is below 1e-318 and we report exactly 0 with that bound.
_BESSEL_UNDERFLOW_X = 740.0


@dataclass(frozen=True)
class SpecialValue:
    """A floating-point value with a nonnegative absolute error bound."""

    value: float
    abs_error_bound: float

    def __post_init__(self) -> None:
        if math.isfinite(self.value) and not (
            self.abs_error_bound >= 0.0 and math.isfinite(self.abs_error_bound)
        ):
            raise ValueError("abs_error_bound must be finite and >= 0")

    def __float__(self) -> float:
        return self.value


def bessel_k(order: int, x: float) -> SpecialValue:
    """Modified Bessel function of the second kind, order 0 or 1.

    Parameters
    ----------
    order : int
        0 or 1.
    x : float
        Strictly positive argument.

    Returns
    -------
    SpecialValue
        K_order(x) with relative accuracy a few ulp for x in [1e-6, 700];
        exactly 0.0 (with the underflow threshold as error bound) once the
        true value drops below the representable range.
    """
    if order not in (0, 1):
        raise DomainError(f"bessel_k: order must be 0 or 1, got {order!r}")
    if not (x > 0.0):
        raise DomainError(f"bessel_k: argument must be positive, got {x!r}")
    if x >= _BESSEL_UNDERFLOW_X:
        # e^-x sqrt(pi/2x) < 1e-318 here: the value is not representable.
        return SpecialValue(0.0, 1e-317)
    v = float(_scipy_k0(x) if order == 0 else _scipy_k1(x))
    # cephes kernels are good to ~1.5e-15 relative on this range; keep a
    # safety factor of two and an absolute floor for deeply subnormal output.
    return SpecialValue(v, max(3e-15 * abs(v), 5e-324))


# ---------------------------------------------------------------------------
# Lambert W
# ---------------------------------------------------------------------------

_INV_E = math.exp(-1.0)


def _w_branch_point_series(x: float, sign: float) -> float:
    # Series about the branch point x = -1/e in p = +-sqrt(2(ex+1)),
    # Corless et al. eq. (4.22): W = -1 + p - p^2/3 + 11 p^3/72 - ...
    arg = 2.0 * (math.e * x + 1.0)
    p = sign * math.sqrt(max(arg, 0.0))
    return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0 - p * 43.0 / 540.0)))


def _w_initial_guess(branch: int, x: float) -> float:
    if branch == 0:
        if x < -0.32:
            return _w_branch_point_series(x, +1.0)
        if x < 1.0:
            # few terms of the Maclaurin series W = x - x^2 + 3x^3/2 - ...
            return x * (1.0 - x * (1.0 - 1.5 * x))
        lx = math.log(x)
        llx = math.log(lx) if lx > 1.0 else 0.0
        return lx - llx + llx / lx if lx > 1.0 else lx
    # branch -1, x in [-1/e, 0)
    if x < -0.27:
        return _w_branch_point_series(x, -1.0)
    # log-log expansion near 0-: W ~ L1 - L2 + L2/L1, L1 = log(-x), L2 = log(-L1)
    l1 = math.log(-x)
    l2 = math.log(-l1)
    return l1 - l2 + l2 / l1


def lambert_w(branch: int, x: float) -> SpecialValue:
    """Real Lambert W on branch 0 or -1, by Halley iteration.

    Solves w e^w = x.  Branch 0 requires x >= -1/e; branch -1 requires
    -1/e <= x < 0 and returns w <= -1.
    """
    if branch not in (0, -1):
        raise DomainError(f"lambert_w: branch must be 0 or -1, got {branch!r}")
    if branch == 0:
        if x < -_INV_E - 4e-17:
            raise DomainError(f"lambert_w: x={x!r} below branch point -1/e")
        if x == 0.0:
            return SpecialValue(0.0, 0.0)
    else:
        if not (-_INV_E - 4e-17 <= x < 0.0):
            raise DomainError(f"lambert_w: branch -1 needs -1/e <= x < 0, got {x!r}")
    if x < -_INV_E:
        x = -_INV_E  # swallow one-ulp excursions below the branch point
    if abs(x + _INV_E) < 1e-16:
        return SpecialValue(-1.0, 3e-9)  # sqrt-type sensitivity at the branch point

    w = _w_initial_guess(branch, x)
    for _ in range(80):
        ew = math.exp(w)
        r = w * ew - x
        if r == 0.0:
            break
        d1 = ew * (w + 1.0)
        # Halley step: r / (d1 - r*(w+2)/(2w+2))
        step = r / (d1 - r * (w + 2.0) / (2.0 * w + 2.0))
        w -= step
        if abs(step) <= 2e-16 * max(1.0, abs(w)):
            break
    ew = math.exp(w)
    resid = w * ew - x
    deriv = abs(ew * (w + 1.0))
    err = abs(resid) / deriv if deriv > 0 else abs(resid)
    return SpecialValue(w, max(err, 4e-16 * max(1.0, abs(w))))


# ---------------------------------------------------------------------------
# zeta and Dirichlet beta
# ---------------------------------------------------------------------------


def _cvz_alternating(s: float, n: int = 48) -> float:
    # Cohen-Rodriguez Villegas-Zagier acceleration of
    # sum_{k>=0} (-1)^k (2k+1)^(-s); converges ~ 5.83^-n for all s > 0.
    d = (3.0 + math.sqrt(8.0)) ** n
    d = (d + 1.0 / d) / 2.0
    b = -1.0
    c = -d
    acc = 0.0
    for k in range(n):
        c = b - c
        acc += c * float(2 * k + 1) ** (-s)
        b = (k + n) * (k - n) * b / ((k + 0.5) * (k + 1.0))
    return acc / d


def dirichlet_beta(s: float) -> SpecialValue:
    """Dirichlet beta L-series sum (-1)^k/(2k+1)^s for s > 0."""
    if not (s > 0.0):
        raise DomainError(f"dirichlet_beta: need s > 0, got {s!r}")
    v = _cvz_alternating(s)
    return SpecialValue(v, max(4e-15 * abs(v), 1e-16))


#: Catalan's constant beta_D(2).
CATALAN = dirichlet_beta(2.0).value


def zeta_dirichlet(s: float, laurent: bool = False) -> tuple[SpecialValue, SpecialValue]:
    """Riemann zeta and Dirichlet beta at a common argument s.

    For s > 1 both are evaluated directly.  With ``laurent=True`` and s = 1
    the zeta slot carries the constant term of the Laurent expansion
    zeta(1+eps) = 1/eps + gamma + O(eps), i.e. the Euler-Mascheroni
    constant; the beta slot is beta_D(1) = pi/4.
    """
    if not (s > 0.0):
        raise DomainError(f"zeta_dirichlet: need s > 0, got {s!r}")
    if s > 1.0:
        z = float(_scipy_zeta(s))
        return (
            SpecialValue(z, 4e-15 * abs(z)),
            dirichlet_beta(s),
        )
    if laurent and s == 1.0:
        return (
            SpecialValue(EULER_GAMMA, 1e-16),
            SpecialValue(math.pi / 4.0, 1e-16),
        )
    raise DomainError(
        "zeta_dirichlet: zeta requires s > 1 (use laurent=True at s = 1 "
        "for the expansion data)"
    )


def dirichlet_beta_prime_at_1() -> SpecialValue:
    """beta_D'(1) = (pi/4)(gamma + 2 log 2 + 3 log pi - 4 log Gamma(1/4))."""
    v = (math.pi / 4.0) * (
        EULER_GAMMA
        + 2.0 * math.log(2.0)
        + 3.0 * math.log(math.pi)
        - 4.0 * math.lgamma(0.25)
    )
    return SpecialValue(v, 1e-14)


def log_gamma(x: float) -> SpecialValue:
    """log Gamma(x) for x > 0."""
    if not (x > 0.0):
        raise DomainError(f"log_gamma: need x > 0, got {x!r}")
    v = math.lgamma(x)
    return SpecialValue(v, max(4e-16 * abs(v), 1e-17))


def erfc(x: float) -> SpecialValue:
    """Complementary error function."""
    v = math.erfc(x)
    return SpecialValue(v, max(2e-16 * abs(v), 5e-324))

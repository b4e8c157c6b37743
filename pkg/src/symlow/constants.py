"""Constants of the density expansion: prime sums and archimedean terms.

The two prime-sum constants are evaluated from a sieve with explicit error
reporting: the prime-counting constant carries an empirical decade-difference
uncertainty (its convergence is fluctuation-limited, so no rigorous bound is
claimed), while the even-power constant carries a rigorous integral-comparison
tail bound.  The digamma routine is pinned to one fixed algorithm so reports
are bit-stable across runs.
"""

from __future__ import annotations

import dataclasses
import math
import os
from fractions import Fraction

import numpy as np

from .forms import gamma_shifts

SIEVE_CAP_ENV = "SYMLOW_SIEVE_CAP"
DEFAULT_SIEVE_CAP = 10**8
DEFAULT_PNT_CUTOFF = 10**7
DEFAULT_C_CUTOFF = 10**6


def sieve_cap() -> int:
    raw = os.environ.get(SIEVE_CAP_ENV)
    if raw is None:
        return DEFAULT_SIEVE_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise ValueError(f"{SIEVE_CAP_ENV} must be an integer, got {raw!r}") from exc
    if cap < 2:
        raise ValueError(f"{SIEVE_CAP_ENV} must be >= 2")
    return cap


def primes_up_to(n: int, cap: int | None = None) -> np.ndarray:
    """All primes <= n as an int64 array, guarded by the sieve memory cap."""
    cap = sieve_cap() if cap is None else cap
    if n > cap:
        raise ValueError(
            f"sieve bound {n} exceeds the memory guard {cap}"
            f" (override with {SIEVE_CAP_ENV})"
        )
    if n < 2:
        return np.empty(0, dtype=np.int64)
    mask = np.ones(n + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return np.nonzero(mask)[0].astype(np.int64)


def sieve_theta(t: int) -> float:
    """First Chebyshev function: sum of log p over primes p <= t."""
    if t < 1:
        raise ValueError("t must be >= 1")
    ps = primes_up_to(int(t))
    if ps.size == 0:
        return 0.0
    return float(np.sum(np.log(ps.astype(np.float64))))


def _pnt_value_at(primes: np.ndarray, logs: np.ndarray, cutoff: int) -> float:
    sel = primes <= cutoff
    log_over_p = float(np.sum(logs[sel] / primes[sel]))
    theta = float(np.sum(logs[sel]))
    return 1.0 + log_over_p - theta / cutoff - math.log(cutoff)

def c_pnt(cutoff: int) -> tuple[float, float]:
    """The prime-counting constant 1 + int_1^X (theta(t) - t)/t^2 dt.

    The integral is evaluated through the exact partial-summation identity
    int_1^X (theta(t)-t)/t^2 dt = sum_{p<=X} log p / p - theta(X)/X - log X,
    so the only approximation is the cutoff itself.  Returns (value,
    uncertainty) where uncertainty = |value(X) - value(X/10)|, an empirical
    stabilization estimate, not a rigorous bound.
    """
    cutoff = int(cutoff)
    if cutoff < 2:
        raise ValueError("cutoff must be >= 2")
    primes = primes_up_to(cutoff)
    logs = np.log(primes.astype(np.float64))
    value = _pnt_value_at(primes, logs, cutoff)
    lower = max(2, cutoff // 10)
    uncertainty = abs(value - _pnt_value_at(primes, logs, lower))
    return value, uncertainty


def c_sym_even(cutoff: int) -> tuple[float, float]:
    """The even-power constant sum_p log p / (p^{3/2} - p), with tail bound.

    The truncation error is below sum_{n>X} log n/(n^{3/2}-n); the summand is
    decreasing, and log t/(t^{3/2}-t) <= log t * t^{-3/2} / (1 - X^{-1/2}) on
    [X, inf), so integral comparison gives the rigorous bound
    (2 log X + 4)/(sqrt(X) - 1).
    """
    cutoff = int(cutoff)
    if cutoff < 2:
        raise ValueError("cutoff must be >= 2")
    primes = primes_up_to(cutoff).astype(np.float64)
    value = float(np.sum(np.log(primes) / (primes**1.5 - primes)))
    tail_bound = (2.0 * math.log(cutoff) + 4.0) / (math.sqrt(cutoff) - 1.0)
    return value, tail_bound


# Asymptotic coefficients B_{2k}/(2k) for k = 1..8.
_DIGAMMA_TAIL = (
    Fraction(1, 12),
    Fraction(-1, 120),
    Fraction(1, 252),
    Fraction(-1, 240),
    Fraction(1, 132),
    Fraction(-691, 32760),
    Fraction(1, 12),
    Fraction(-3617, 8160),
)
_DIGAMMA_TAIL_F = tuple(float(c) for c in _DIGAMMA_TAIL)


def digamma(x: float) -> float:
    """psi(x) for x > 0 to absolute accuracy 1e-12.

    Upward recurrence psi(x+1) = psi(x) + 1/x until x >= 10, then the
    asymptotic series log x - 1/(2x) - sum B_{2k}/(2k x^{2k}) with 8 terms
    (remainder ~ 3e-18 at x = 10).  One fixed path, so results are bit-stable.
    """
    x = float(x)
    if not x > 0:
        raise ValueError("digamma is evaluated on x > 0 only")
    acc = 0.0
    while x < 10.0:
        acc -= 1.0 / x
        x += 1.0
    z = 1.0 / (x * x)
    tail = 0.0
    for c in reversed(_DIGAMMA_TAIL_F):
        tail = z * (c + tail)
    return acc + math.log(x) - 0.5 / x - tail


def c_gamma(r: int, kappa: int) -> float:
    """Archimedean digamma sum of the completed L-factor.

    Closed form: for odd r, sum over 0 <= a <= (r-1)/2 of
    psi(1/4 + (2a+1)(kappa-1)/4) + psi(3/4 + (2a+1)(kappa-1)/4); for even r,
    psi(1/4 + mu/2) plus the pairs psi(1/4 + a(kappa-1)/2) +
    psi(3/4 + a(kappa-1)/2) for 1 <= a <= r/2.  Must match the shift route
    sum_j psi(1/4 + mu_j/2) over gamma_shifts(r, kappa).
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    if kappa < 2 or kappa % 2:
        raise ValueError("weight must be an even integer >= 2")
    total = 0.0
    if r % 2:
        for a in range((r + 1) // 2):
            base = (2 * a + 1) * (kappa - 1) / 4.0
            total += digamma(0.25 + base) + digamma(0.75 + base)
    else:
        mu = 1 if (r * (kappa - 1) // 2) % 2 else 0
        total += digamma(0.25 + mu / 2.0)
        for a in range(1, r // 2 + 1):
            base = a * (kappa - 1) / 2.0
            total += digamma(0.25 + base) + digamma(0.75 + base)
    return total


def c_gamma_from_shifts(r: int, kappa: int) -> float:
    """Cross-check route: sum of psi(1/4 + mu/2) over the shift multiset."""
    return math.fsum(
        digamma(0.25 + float(mu) / 2.0) for mu in gamma_shifts(r, kappa).shifts
    )


def c_infty(r: int, kappa: int) -> float:
    """-(r+1) log pi + c_gamma(r, kappa), composed literally."""
    return -(r + 1) * math.log(math.pi) + c_gamma(r, kappa)


def nu_max(r: int, kappa: int, theta0: Fraction | int | float = Fraction(7, 64)) -> Fraction:
    """Exact admissible support radius (1 - 1/(2(kappa - 2 theta0))) * 2/r^2.

    theta0 defaults to the current best bound toward the Ramanujan direction;
    theta0 = 0 gives the expected-case value.  Rejects parameters that make
    the bracket nonpositive (kappa - 2 theta0 must exceed 1/2).
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    if kappa < 2 or kappa % 2:
        raise ValueError("weight must be an even integer >= 2")
    theta0 = Fraction(theta0)
    gap = kappa - 2 * theta0
    if gap <= Fraction(1, 2):
        raise ValueError("kappa - 2*theta0 must exceed 1/2")
    return (1 - Fraction(1, 2) / gap) * Fraction(2, r * r)


@dataclasses.dataclass(frozen=True)
class ConstantsBundle:
    """Every constant of the expansion at one (r, kappa), cutoffs recorded."""

    r: int
    kappa: int
    c_pnt_value: float
    c_pnt_uncertainty: float
    c_value: float
    c_tail_bound: float
    c_gamma_value: float
    c_infty_value: float
    pnt_cutoff: int
    c_cutoff: int

    def __post_init__(self) -> None:
        composed = -(self.r + 1) * math.log(math.pi) + self.c_gamma_value
        if composed != self.c_infty_value:
            raise ValueError("c_infty must be composed from c_gamma exactly")


def compute_constants(
    r: int,
    kappa: int,
    pnt_cutoff: int = DEFAULT_PNT_CUTOFF,
    c_cutoff: int = DEFAULT_C_CUTOFF,
) -> ConstantsBundle:
    pnt_value, pnt_unc = c_pnt(pnt_cutoff)
    c_value, c_tail = c_sym_even(c_cutoff)
    gamma_value = c_gamma(r, kappa)
    return ConstantsBundle(
        r=r,
        kappa=kappa,
        c_pnt_value=pnt_value,
        c_pnt_uncertainty=pnt_unc,
        c_value=c_value,
        c_tail_bound=c_tail,
        c_gamma_value=gamma_value,
        c_infty_value=-(r + 1) * math.log(math.pi) + gamma_value,
        pnt_cutoff=int(pnt_cutoff),
        c_cutoff=int(c_cutoff),
    )

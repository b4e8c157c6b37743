"""Trace-formula numerics: Kloosterman sums, Bessel J, truncated diagonals.

Kloosterman sums are exact (modular inverses in integer arithmetic, cosines
summed in double precision).  Bessel J switches between the power series and
Miller's backward recurrence.  The truncated diagonal term carries a rigorous
tail bound built from the Weil bound and the small-argument Bessel bound, so
every reported value comes with an explicit error radius.
"""

from __future__ import annotations

import dataclasses
import math
import warnings

from fractions import Fraction

from .forms import is_prime

ZETA_THREE_HALVES = 2.6123753486854883
BESSEL_ARGUMENT_GUARD = 1e4
_BESSEL_MAX_ARGUMENT = 1e6
_SERIES_WINDOW_CAP = 14.0

# Classical coefficients of the weight-12 level-1 cusp form's q-expansion,
# for the CLI comparison table.  The test suite recomputes them from the
# 24th-power eta product with exact integers.
RAMANUJAN_TAU = {
    1: 1,
    2: -24,
    3: 252,
    4: -1472,
    5: 4830,
    6: -6048,
    7: -16744,
    8: 84480,
    9: -113643,
    10: -115920,
}


def kloosterman(m: int, n: int, c: int) -> float:
    """Exact S(m, n; c) = sum over units x mod c of e((m x + n x^-1)/c).

    The fraction (m x + n x^-1)/c is reduced modulo 1 in integer arithmetic
    before the cosine, so the only rounding is the cosine itself and the
    final compensated sum.  The x <-> -x symmetry makes the sum real, so the
    imaginary part is never formed.  |result| <= phi(c).
    """
    if c < 1:
        raise ValueError("modulus must be >= 1")
    if c == 1:
        return 1.0
    mr, nr = m % c, n % c
    two_pi_over_c = 2.0 * math.pi / c
    terms = []
    for x in range(1, c):
        if math.gcd(x, c) != 1:
            continue
        xinv = pow(x, -1, c)
        terms.append(math.cos(two_pi_over_c * ((mr * x + nr * xinv) % c)))
    return math.fsum(terms)


def divisor_count(c: int) -> int:
    """tau(c): number of positive divisors."""
    if c < 1:
        raise ValueError("c must be >= 1")
    count = 1
    d = 2
    while d * d <= c:
        if c % d == 0:
            e = 0
            while c % d == 0:
                c //= d
                e += 1
            count *= e + 1
        d += 1
    if c > 1:
        count *= 2
    return count


def weil_bound(m: int, n: int, c: int) -> float:
    """tau(c) * gcd(m, n, c)^{1/2} * c^{1/2}, the pointwise Kloosterman bound."""
    return divisor_count(c) * math.sqrt(math.gcd(m, n, c)) * math.sqrt(c)


def _bessel_series(order: int, x: float) -> float:
    # first term (x/2)^order / order!, then the ratio recurrence; exact
    # factorials up to 170! keep the leading term at one rounding
    half = 0.5 * x
    if order <= 170:
        term = half**order / math.factorial(order)
    else:
        logt = order * math.log(half) - math.lgamma(order + 1) if half > 0.0 else -math.inf
        term = math.exp(logt) if logt > -745.0 else 0.0
    if term == 0.0:
        return 0.0
    terms = [term]
    hh = half * half
    for t in range(1, 200):
        term *= -hh / (t * (order + t))
        terms.append(term)
        if abs(term) < 1e-18 * max(abs(v) for v in terms):
            break
    return math.fsum(terms)


def _bessel_miller(order: int, x: float) -> float:
    # backward recurrence seeded far above max(order, x); normalized by
    # j_0 + 2 j_2 + 2 j_4 + ... = 1
    start = order + int(x + 20.0 + 12.0 * x ** (1.0 / 3.0))
    if start % 2:
        start += 1
    older = 0.0
    current = 1e-300
    norm = 0.0
    wanted = None
    for k in range(start, 0, -1):
        if k % 2 == 0:
            norm += 2.0 * current
        if k == order:
            wanted = current
        older, current = current, (2.0 * k / x) * current - older
        if abs(current) > 1e250:
            older *= 1e-250
            current *= 1e-250
            norm *= 1e-250
            if wanted is not None:
                wanted *= 1e-250
    norm += current
    if order == 0:
        wanted = current
    assert wanted is not None
    return wanted / norm


def bessel_j(order: int, x: float) -> float:
    """J_order(x) to 1e-10 relative accuracy for x <= 1e4, clamped to [-1, 1].

    Power series while x <= min(order + 10, 14): beyond 14 the alternating
    series loses more than five digits to cancellation in doubles, so the
    crossover is capped there and Miller's backward recurrence takes over.
    Arguments above 1e6 are rejected (recurrence cost grows linearly and the
    accuracy claim would be hollow).
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    x = float(x)
    if x < 0.0:
        raise ValueError("argument must be >= 0")
    if x > _BESSEL_MAX_ARGUMENT:
        raise ValueError(f"argument {x} exceeds the supported range {_BESSEL_MAX_ARGUMENT}")
    if x <= min(order + 10.0, _SERIES_WINDOW_CAP):
        value = _bessel_series(order, x)
    else:
        value = _bessel_miller(order, x)
    return max(-1.0, min(1.0, value))


@dataclasses.dataclass(frozen=True)
class PeterssonTerm:
    """Truncated diagonal value at index m with its rigorous tail radius."""

    m: int
    k: int
    kappa: int
    value: float
    tail_estimate: float
    c_max: int

    def __post_init__(self) -> None:
        if self.tail_estimate < 0.0:
            raise ValueError("tail estimate must be nonnegative")


def _divisor_sum_tail(c_max: int, s: float) -> float:
    """Rigorous bound for sum over c > c_max of tau(c) c^{-s}, s > 1.

    Writing tau(c) as a double sum over factorizations c = d*e and bounding
    each e-tail by its first term plus an integral gives
    c_max^{1-s} * (1 + zeta(3/2) + (1 + log c_max + zeta(3/2))/(s-1))
    for every s >= 3/2.
    """
    return c_max ** (1.0 - s) * (
        1.0 + ZETA_THREE_HALVES + (1.0 + math.log(c_max) + ZETA_THREE_HALVES) / (s - 1.0)
    )


def delta_tail_bound(m: int, kappa: int, c_max: int) -> float:
    """Tail of the c-sum past c_max: Weil times the small-argument J bound.

    |S(m,1;c)|/c <= tau(c) c^{-1/2} and |J_{kappa-1}(y)| <= (y/2)^{kappa-1} /
    (kappa-1)!, giving 2 pi (2 pi sqrt(m))^{kappa-1}/(kappa-1)! times the
    divisor-sum tail at exponent s = kappa - 1/2.
    """
    s = kappa - 0.5
    log_pref = (kappa - 1) * math.log(2.0 * math.pi * math.sqrt(m)) - math.lgamma(kappa)
    return 2.0 * math.pi * math.exp(log_pref) * _divisor_sum_tail(c_max, s)


def default_c_max(m: int) -> int:
    """max(1000, ceil(8 pi sqrt(m))): always inside the rigorous tail regime."""
    return max(1000, math.ceil(8.0 * math.pi * math.sqrt(m)))


def petersson_delta(m: int, k: int, kappa: int, c_max: int | None = None) -> PeterssonTerm:
    """Diagonal term: [m = 1] + 2 pi (-1)^{kappa/2} sum_{c <= c_max, k | c} S(m,1;c)/c J_{kappa-1}(4 pi sqrt m / c).

    i^kappa is evaluated as (-1)^{kappa/2}; no complex arithmetic appears.
    Warns when c_max <= 4 pi sqrt(m), where the reported tail bound is not
    yet in its provably decreasing regime.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if k < 1:
        raise ValueError("k must be >= 1")
    if kappa < 2 or kappa % 2:
        raise ValueError("weight must be an even integer >= 2")
    if c_max is None:
        c_max = default_c_max(m)
    if c_max < k:
        raise ValueError("c_max must be >= k")
    root = 4.0 * math.pi * math.sqrt(m)
    if c_max <= root:
        warnings.warn(
            f"c_max={c_max} is not beyond 4*pi*sqrt(m)={root:.1f};"
            " the tail estimate is not yet rigorous",
            stacklevel=2,
        )
    sign = -1.0 if (kappa // 2) % 2 else 1.0
    terms = [
        kloosterman(m, 1, c) / c * bessel_j(kappa - 1, root / c)
        for c in range(k, c_max + 1, k)
    ]
    value = (1.0 if m == 1 else 0.0) + 2.0 * math.pi * sign * math.fsum(terms)
    return PeterssonTerm(
        m=m,
        k=k,
        kappa=kappa,
        value=value,
        tail_estimate=delta_tail_bound(m, kappa, c_max),
        c_max=c_max,
    )


def old_part_terms(
    p: int,
    k: int,
    q: int,
    kappa: int,
    ell_max: int,
    c_max: int,
    bessel_argument_guard: float = BESSEL_ARGUMENT_GUARD,
) -> list[tuple[int, PeterssonTerm]]:
    """Per-level pieces (ell, diagonal at p^k ell^2) for ell in {1, q, q^2, ...} <= ell_max.

    Warns once when the largest Bessel argument 4 pi sqrt(p^k) ell crosses
    the accuracy guard; terms are still evaluated.
    """
    if not is_prime(p):
        raise ValueError("p must be prime")
    if not is_prime(q):
        raise ValueError("q must be prime")
    if p == q:
        raise ValueError("p must differ from q")
    if k < 1:
        raise ValueError("k must be >= 1")
    if ell_max < 1:
        raise ValueError("ell_max must be >= 1")
    ells = []
    ell = 1
    while ell <= ell_max:
        ells.append(ell)
        ell *= q
    top_argument = 4.0 * math.pi * math.sqrt(p**k) * ells[-1]
    if top_argument > bessel_argument_guard:
        warnings.warn(
            f"largest Bessel argument {top_argument:.1f} exceeds the accuracy"
            f" guard {bessel_argument_guard}; values beyond it carry no 1e-10 claim",
            stacklevel=2,
        )
    return [(ell, petersson_delta(p**k * ell * ell, 1, kappa, c_max)) for ell in ells]


def old_part_sum(
    p: int,
    k: int,
    q: int,
    kappa: int,
    ell_max: int,
    c_max: int,
    bessel_argument_guard: float = BESSEL_ARGUMENT_GUARD,
) -> float:
    """sum over ell in {1, q, q^2, ...} <= ell_max of (1/ell) * diagonal(p^k ell^2)."""
    pieces = old_part_terms(p, k, q, kappa, ell_max, c_max, bessel_argument_guard)
    return math.fsum(term.value / ell for ell, term in pieces)


def new_part_admissible(nu: float | Fraction, r: int) -> bool:
    """Exact predicate nu < 2/r^2 for the sieve-free support range."""
    if r < 1:
        raise ValueError("r must be >= 1")
    return Fraction(nu) < Fraction(2, r * r)

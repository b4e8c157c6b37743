"""Density prediction and prime-side sums for synthetic power lifts.

The prediction assembles the main term and the single 1/log-scale correction
from precomputed constants; the prime sums evaluate the first-power,
even-square, and higher-power contributions on a synthetic form.  Every sum
is finite because the window transform has compact support: enlarging the
sieve past the natural cutoff only appends terms with exactly zero weight.
"""

from __future__ import annotations

import dataclasses
import math
import warnings
from fractions import Fraction
from typing import Any

from .constants import ConstantsBundle, compute_constants, nu_max, primes_up_to
from .forms import SyntheticForm, TestFunction, eigenvalue_power, is_prime, satake_power_sum

REMAINDER_MARKER = "O(1/log^3(q^r))"


@dataclasses.dataclass(frozen=True)
class ExpansionReport:
    """Assembled density prediction at one (r, kappa, q, window)."""

    r: int
    kappa: int
    q: int
    nu: float
    nu_limit: Fraction
    admissible: bool
    scale: float
    main_term: float
    lower_coefficient: float
    lower_term: float
    breakdown: dict[str, float]
    remainder: str
    constants: ConstantsBundle

    def as_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "r": self.r,
            "kappa": self.kappa,
            "q": self.q,
            "nu": self.nu,
            "nu_limit": self.nu_limit,
            "admissible": self.admissible,
            "scale": self.scale,
            "main_term": self.main_term,
            "lower_coefficient": self.lower_coefficient,
            "lower_term": self.lower_term,
            "breakdown": dict(self.breakdown),
            "remainder": self.remainder,
            "constants": dataclasses.asdict(self.constants),
        }
        return out


def density_prediction(
    r: int,
    kappa: int,
    q: int,
    phi: TestFunction,
    constants: ConstantsBundle | None = None,
) -> ExpansionReport:
    """Main term plus the 1/log(q^r) correction for the given window.

    main = hat(0) + (-1)^{r+1} * window(0)/2 and the correction coefficient is
    c_infty - 2(-1)^r c_pnt - 2[r even] c.  The same coefficient written with
    the sign folded the other way, c_infty + 2(-1)^{r+1} c_pnt - 2[r even] c,
    is asserted to produce the identical float.  Inadmissible support
    (nu >= the exact limit) warns but still evaluates.
    """
    if not is_prime(q):
        raise ValueError("q must be prime")
    if constants is None:
        constants = compute_constants(r, kappa)
    elif (constants.r, constants.kappa) != (r, kappa):
        raise ValueError("constants bundle was computed for different (r, kappa)")

    limit = nu_max(r, kappa)
    nu_exact = phi.nu_exact
    admissible = nu_exact < limit
    if not admissible:
        warnings.warn(
            f"window support {nu_exact} is not below the admissible limit {limit};"
            " the prediction is evaluated outside its proven range",
            stacklevel=2,
        )

    sign = 1.0 if r % 2 else -1.0  # (-1)^{r+1}
    hat_zero = phi.phi_hat(0.0)
    window_zero = phi.phi(0.0)
    main = hat_zero + sign * window_zero / 2.0

    c_pnt_term = -2.0 * (-sign) * constants.c_pnt_value
    c_term = 0.0 if r % 2 else -2.0 * constants.c_value
    coefficient = constants.c_infty_value + c_pnt_term + c_term
    alt = constants.c_infty_value + 2.0 * sign * constants.c_pnt_value + c_term
    assert coefficient == alt, "the two sign conventions must agree exactly"

    scale = r * math.log(q)
    lower = coefficient * hat_zero / scale
    return ExpansionReport(
        r=r,
        kappa=kappa,
        q=q,
        nu=float(nu_exact),
        nu_limit=limit,
        admissible=admissible,
        scale=scale,
        main_term=main,
        lower_coefficient=coefficient,
        lower_term=lower,
        breakdown={
            "phi_hat_zero": hat_zero,
            "phi_zero": window_zero,
            "c_infty": constants.c_infty_value,
            "c_pnt_term": c_pnt_term,
            "c_term": c_term,
        },
        remainder=REMAINDER_MARKER,
        constants=constants,
    )


def _natural_prime_limit(scale: float, nu: float, transform_arg_factor: float) -> int:
    """Largest p whose transform argument can sit inside the support.

    The weight vanishes once factor*log(p)/scale >= nu, so the bound is
    exp(nu*scale/factor); one extra integer of slack keeps the bound safe
    against rounding, harmless because the appended weights are exactly 0.
    """
    if nu <= 0.0:
        return 0
    return int(math.floor(math.exp(nu * scale / transform_arg_factor))) + 1


def prime_cutoffs(q: int, r: int, nu: float | Fraction) -> dict[str, int]:
    """Natural sieve bounds for the three prime sums at support radius nu."""
    scale = r * math.log(q)
    nu = float(nu)
    return {
        "first_power": _natural_prime_limit(scale, nu, 1.0),
        "square_power": _natural_prime_limit(scale, nu, 2.0),
        "higher_power": _natural_prime_limit(scale, nu, 1.0),
    }


def first_power_prime_sum(
    form: SyntheticForm,
    phi: TestFunction,
    r: int,
    prime_limit: int | None = None,
) -> float:
    """-(2/scale) sum over p != q of lambda(p^r) (log p/sqrt p) hat(log p/scale)."""
    if r < 1:
        raise ValueError("r must be >= 1")
    scale = r * math.log(form.q)
    if prime_limit is None:
        prime_limit = _natural_prime_limit(scale, float(phi.nu), 1.0)
    terms: list[float] = []
    for p in primes_up_to(prime_limit).tolist():
        if p == form.q:
            continue
        lp = math.log(p)
        weight = phi.phi_hat(lp / scale)
        if weight == 0.0:
            continue
        lam = eigenvalue_power(form.angle(p), r)
        terms.append(lam * lp / math.sqrt(p) * weight)
    return -(2.0 / scale) * math.fsum(terms)


def square_power_prime_sum(
    form: SyntheticForm,
    phi: TestFunction,
    r: int,
    m: int,
    prime_limit: int | None = None,
) -> float:
    """-(2/scale) sum over p != q of lambda(p^{2(r-m)}) (log p/p) hat(2 log p/scale)."""
    if r < 1:
        raise ValueError("r must be >= 1")
    if not 0 <= m <= r - 1:
        raise ValueError(f"m must lie in [0, {r - 1}], got {m}")
    scale = r * math.log(form.q)
    if prime_limit is None:
        prime_limit = _natural_prime_limit(scale, float(phi.nu), 2.0)
    power = 2 * (r - m)
    terms: list[float] = []
    for p in primes_up_to(prime_limit).tolist():
        if p == form.q:
            continue
        lp = math.log(p)
        weight = phi.phi_hat(2.0 * lp / scale)
        if weight == 0.0:
            continue
        lam = eigenvalue_power(form.angle(p), power)
        terms.append(lam * lp / p * weight)
    return -(2.0 / scale) * math.fsum(terms)


def _power_bracket(theta: float, n: int, r: int) -> float:
    """Sum over j = r mod 2, 1 <= j <= r, of lambda(p^{jn}) - lambda(p^{jn-2})."""
    start = 1 if r % 2 else 2
    return math.fsum(
        eigenvalue_power(theta, j * n) - eigenvalue_power(theta, j * n - 2)
        for j in range(start, r + 1, 2)
    )


def higher_power_prime_sum(
    form: SyntheticForm,
    phi: TestFunction,
    r: int,
    prime_limit: int | None = None,
) -> float:
    """Cube-and-higher prime powers: the telescoped eigenvalue bracket term.

    -(2/scale) sum over p != q and n >= 3 with p^n below the support bound of
    bracket(theta_p, n, r) (log p / p^{n/2}) hat(n log p/scale).
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    scale = r * math.log(form.q)
    if prime_limit is None:
        prime_limit = _natural_prime_limit(scale, float(phi.nu), 1.0)
    terms: list[float] = []
    # only p with p^3 within the bound can contribute
    for p in primes_up_to(round(prime_limit ** (1.0 / 3.0)) + 1).tolist():
        if p == form.q:
            continue
        theta = form.angle(p)
        lp = math.log(p)
        n = 3
        while p**n <= prime_limit:
            weight = phi.phi_hat(n * lp / scale)
            if weight != 0.0:
                bracket = _power_bracket(theta, n, r)
                terms.append(bracket * lp / p ** (n / 2.0) * weight)
            n += 1
    return -(2.0 / scale) * math.fsum(terms)


def square_power_identity_gap(theta: float, r: int) -> float:
    """|S(2, r) - (alternating even-power eigenvalue sum + (-1)^r)|.

    The doubled-argument power sum telescopes against eigenvalues of even
    squares: S equals sum_{m=0}^{r-1} (-1)^m lambda(p^{2(r-m)}) + (-1)^r.
    The gap is pure floating-point noise, well below 1e-10.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    direct = satake_power_sum(theta, 2, r)
    alternating = math.fsum(
        (-1.0) ** m * eigenvalue_power(theta, 2 * (r - m)) for m in range(r)
    )
    return abs(direct - (alternating + (-1.0) ** r))

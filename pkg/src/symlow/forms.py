"""Synthetic local data for a holomorphic form and its symmetric powers.

A SyntheticForm carries weight, prime level, a sign input, and a seeded,
reproducible map prime -> Satake angle in [0, pi].  Angles are derived from
BLAKE2b(seed:prime) pushed through the inverse CDF of the chosen
distribution, so the same (seed, distribution) pair yields bit-identical
angles on every platform.

Also here: eigenvalue powers via the sine ratio, the unit power sums with
their three evaluation routes, gamma-factor shifts, root numbers, and the
admissible test functions (Fejer kernel and sampled transforms).
"""

from __future__ import annotations

import dataclasses
import functools
import hashlib
import json
import math
from fractions import Fraction
from typing import Callable

DISTRIBUTIONS = ("sato-tate", "uniform")

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every n below 3.3e24."""
    n = int(n)  # accept numpy integers; 3-arg pow needs plain ints
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _uniform_unit(seed: int, p: int) -> float:
    """Stable uniform draw in (0,1) keyed by (seed, p)."""
    digest = hashlib.blake2b(f"{seed}:{p}".encode(), digest_size=8).digest()
    return (int.from_bytes(digest, "big") + 0.5) / 2.0**64


def _sato_tate_inverse_cdf(u: float) -> float:
    # Solve (2t - sin 2t) / (2 pi) = u by bisection; the CDF is strictly
    # increasing so 64 halvings pin the root to ~5e-19.
    lo, hi = 0.0, math.pi
    for _ in range(64):
        mid = 0.5 * (lo + hi)
        if (2.0 * mid - math.sin(2.0 * mid)) / (2.0 * math.pi) < u:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@functools.lru_cache(maxsize=1 << 20)
def _angle(seed: int, distribution: str, p: int) -> float:
    u = _uniform_unit(seed, p)
    if distribution == "uniform":
        return u * math.pi
    return _sato_tate_inverse_cdf(u)


@dataclasses.dataclass(frozen=True)
class SyntheticForm:
    """Seeded stand-in for a newform: weight kappa, prime level q, sign eps_f."""

    kappa: int
    q: int
    eps_f: int
    seed: int
    distribution: str = "sato-tate"
    flip: bool = False

    def __post_init__(self) -> None:
        if self.kappa < 2 or self.kappa % 2:
            raise ValueError("weight must be an even integer >= 2")
        if not is_prime(self.q):
            raise ValueError(f"level {self.q} is not prime")
        if self.eps_f not in (-1, 1):
            raise ValueError("eps_f must be +1 or -1")
        if self.distribution not in DISTRIBUTIONS:
            raise ValueError(f"distribution must be one of {DISTRIBUTIONS}")

    def angle(self, p: int) -> float:
        """Satake angle at p; defined only away from the level."""
        if p == self.q:
            raise ValueError("angle is undefined at the level prime")
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        theta = _angle(self.seed, self.distribution, p)
        return math.pi - theta if self.flip else theta

    def eigenvalue(self, p: int, n: int = 1) -> float:
        """Eigenvalue at the n-th power of p, from the angle at p."""
        return eigenvalue_power(self.angle(p), n)

    def flipped(self) -> "SyntheticForm":
        """Copy whose every angle is reflected t -> pi - t."""
        return dataclasses.replace(self, flip=not self.flip)

    def to_dict(self) -> dict:
        return {
            "kappa": self.kappa,
            "q": self.q,
            "eps_f": self.eps_f,
            "seed": self.seed,
            "distribution": self.distribution,
            "flip": self.flip,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @staticmethod
    def from_dict(doc: dict) -> "SyntheticForm":
        return SyntheticForm(
            kappa=int(doc["kappa"]),
            q=int(doc["q"]),
            eps_f=int(doc["eps_f"]),
            seed=int(doc["seed"]),
            distribution=str(doc.get("distribution", "sato-tate")),
            flip=bool(doc.get("flip", False)),
        )

    @staticmethod
    def from_json(text: str) -> "SyntheticForm":
        return SyntheticForm.from_dict(json.loads(text))


def _check_angle(theta: float) -> None:
    if not 0.0 <= theta <= math.pi:
        raise ValueError(f"angle {theta} outside [0, pi]")


def eigenvalue_power(theta: float, n: int) -> float:
    """Eigenvalue at the n-th prime power: sin((n+1)t)/sin(t) = U_n(2 cos t).

    Endpoint limits are n+1 at t=0 and (-1)^n (n+1) at t=pi; the result is
    clamped to the sharp bound |value| <= n+1.
    """
    _check_angle(theta)
    if n < 0:
        raise ValueError("power must be nonnegative")
    s = math.sin(theta)
    if s < 1e-8:
        # Limit value; the omitted correction is O(n^2 theta^2) ~ 1e-16 here.
        sign = 1 if theta < math.pi / 2 else (-1) ** n
        return float(sign * (n + 1))
    value = math.sin((n + 1) * theta) / s
    return max(-(n + 1.0), min(n + 1.0, value))


def alpha_pair_power(theta: float, n: int) -> float:
    """alpha^n + alpha^{-n} for alpha = e^{i t}: 2 cos(n t)."""
    _check_angle(theta)
    if n < 0:
        raise ValueError("power must be nonnegative")
    return 2.0 * math.cos(n * theta)


def satake_power_sum_routes(theta: float, n: int, r: int) -> tuple[float, float, float]:
    """The unit power sum sum_{j=0}^r e^{i t n (2j - r)} by three routes.

    Returns (direct cosine sum, reduced sine ratio, Chebyshev recurrence);
    all three are mathematically equal and must agree numerically.
    """
    _check_angle(theta)
    if n < 1 or r < 1:
        raise ValueError("n and r must be >= 1")
    direct = math.fsum(math.cos(n * theta * (2 * j - r)) for j in range(r + 1))

    # Ratio route, reduced mod pi so the quotient is never ill-conditioned:
    # sin((r+1)w)/sin(w) = (-1)^(m r) sin((r+1)d)/sin(d) for w = m pi + d.
    w = n * theta
    m = round(w / math.pi)
    d = w - m * math.pi
    parity = -1.0 if (m * r) % 2 else 1.0
    if abs(d) < 1e-12:
        ratio = parity * (r + 1)
    else:
        ratio = parity * math.sin((r + 1) * d) / math.sin(d)

    y = 2.0 * math.cos(w)
    prev, cur = 1.0, y
    if r == 0:
        cheb = prev
    else:
        for _ in range(r - 1):
            prev, cur = cur, y * cur - prev
        cheb = cur

    spread = max(direct, ratio, cheb) - min(direct, ratio, cheb)
    if spread > 1e-8 * (r + 1):
        raise ArithmeticError(
            f"power-sum routes disagree by {spread:.3e} at theta={theta}, n={n}, r={r}"
        )
    return direct, ratio, cheb


def satake_power_sum(theta: float, n: int, r: int) -> float:
    """The unit power sum; the direct-route value after the three-way check."""
    return satake_power_sum_routes(theta, n, r)[0]


@dataclasses.dataclass(frozen=True)
class GammaShifts:
    """The r+1 archimedean shifts of the completed degree-(r+1) L-factor."""

    r: int
    kappa: int
    shifts: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.shifts) != self.r + 1:
            raise ValueError("a degree-(r+1) factor needs exactly r+1 shifts")


def gamma_shifts(r: int, kappa: int) -> GammaShifts:
    """Shift multiset of the completed L-factor, exactly as rationals.

    Odd r: (2a+1)(kappa-1)/2 and 1+(2a+1)(kappa-1)/2 for 0 <= a <= (r-1)/2.
    Even r: the parity shift mu (1 iff r(kappa-1)/2 is odd, else 0), then
    a(kappa-1) and 1+a(kappa-1) for 1 <= a <= r/2.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    if kappa < 2 or kappa % 2:
        raise ValueError("weight must be an even integer >= 2")
    shifts: list[Fraction] = []
    if r % 2:
        for a in range((r + 1) // 2):
            base = Fraction((2 * a + 1) * (kappa - 1), 2)
            shifts.extend((base, 1 + base))
    else:
        mu = 1 if (r * (kappa - 1) // 2) % 2 else 0
        shifts.append(Fraction(mu))
        for a in range(1, r // 2 + 1):
            base = Fraction(a * (kappa - 1))
            shifts.extend((base, 1 + base))
    return GammaShifts(r=r, kappa=kappa, shifts=tuple(shifts))


def root_number(r: int, kappa: int, eps_f: int) -> int:
    """Sign of the functional equation: +1 for even r; for odd r the sign
    eps_f times a fourth-root pattern in r mod 8 (with i^kappa = (-1)^(kappa/2))."""
    if r < 1:
        raise ValueError("r must be >= 1")
    if kappa < 2 or kappa % 2:
        raise ValueError("weight must be an even integer >= 2")
    if eps_f not in (-1, 1):
        raise ValueError("eps_f must be +1 or -1")
    if r % 2 == 0:
        return 1
    i_kappa = (-1) ** (kappa // 2)
    table = {1: i_kappa, 3: -1, 5: -i_kappa, 7: 1}
    return eps_f * table[r % 8]


@dataclasses.dataclass(frozen=True)
class TestFunction:
    """Even test function with compactly supported transform.

    phi_hat vanishes outside [-nu, nu]; the Fourier convention is
    phi_hat(u) = integral of phi(x) e^{-2 pi i x u} dx.  nu keeps whatever
    exact type it was built with (Fraction survives) so support comparisons
    against exact rational bounds stay exact.
    """

    nu: float | Fraction
    phi: Callable[[float], float]
    phi_hat: Callable[[float], float]
    kind: str

    @property
    def nu_exact(self) -> Fraction:
        return Fraction(self.nu)


def fejer_test_function(nu: float | Fraction) -> TestFunction:
    """The kernel with triangular transform: phi_hat(u) = max(0, 1 - |u|/nu),
    phi(x) = nu (sin(pi nu x)/(pi nu x))^2, phi(0) = nu."""
    nu_f = float(nu)
    if nu_f <= 0:
        raise ValueError("support radius must be positive")

    def phi_hat(u: float) -> float:
        return max(0.0, 1.0 - abs(u) / nu_f)

    def phi(x: float) -> float:
        if x == 0.0:
            return nu_f
        s = math.sin(math.pi * nu_f * x) / (math.pi * nu_f * x)
        return nu_f * s * s

    return TestFunction(nu=nu, phi=phi, phi_hat=phi_hat, kind="fejer")


def sampled_test_function(nu: float | Fraction, samples) -> TestFunction:
    """Test function from samples of phi_hat on the uniform grid over [0, nu].

    samples[i] is phi_hat(i*nu/(len-1)); the even extension is linearly
    interpolated, and phi is its exact segment-by-segment inverse transform
    (finite integral, so no truncation error beyond the interpolation).
    """
    nu_f = float(nu)
    if nu_f <= 0:
        raise ValueError("support radius must be positive")
    values = [float(v) for v in samples]
    if len(values) < 2:
        raise ValueError("need at least two samples of the transform")
    step = nu_f / (len(values) - 1)

    def phi_hat(u: float) -> float:
        u = abs(u)
        if u >= nu_f:
            return 0.0
        i = min(int(u / step), len(values) - 2)
        frac = u / step - i
        return values[i] * (1.0 - frac) + values[i + 1] * frac

    def phi(x: float) -> float:
        # 2 * integral over [0, nu] of phi_hat(u) cos(w u) du with w = 2 pi x,
        # done exactly on each linear segment.
        w = 2.0 * math.pi * x
        total = 0.0
        for i in range(len(values) - 1):
            a, b = i * step, (i + 1) * step
            va, vb = values[i], values[i + 1]
            c1 = (vb - va) / step
            c0 = va - c1 * a
            if abs(w) * b < 1e-7:
                # Flat-phase regime; dropped terms are O((w b)^2) ~ 1e-14.
                total += c0 * (b - a) + c1 * (b * b - a * a) / 2.0
            else:
                sa, sb = math.sin(w * a), math.sin(w * b)
                ca, cb = math.cos(w * a), math.cos(w * b)
                total += c0 * (sb - sa) / w
                total += c1 * ((cb - ca) / (w * w) + (b * sb - a * sa) / w)
        return 2.0 * total

    return TestFunction(nu=nu, phi=phi, phi_hat=phi_hat, kind="sampled")

"""Exact arithmetic for Chebyshev polynomials of the second kind.

Everything in this module runs over arbitrary-precision rationals, so each
identity check returns an exact polynomial residual: the empty polynomial
means the identity holds, anything else is a genuine counterexample.  No
floating point enters any computation here.

Normalization: U_n denotes the degree-n Chebyshev polynomial of the second
kind in the stretched variable, U_n(2 cos t) = sin((n+1)t) / sin t.  The
family is orthonormal on [-2, 2] for the semicircle weight
sqrt(1 - x^2/4) / pi, whose even moments are the Catalan numbers.
"""

from __future__ import annotations

import dataclasses
import functools
import math
from fractions import Fraction


@dataclasses.dataclass(frozen=True)
class ExactPoly:
    """Dense univariate polynomial with Fraction coefficients.

    coeffs[i] is the coefficient of T^i where T is the monomial variable
    (T = 2 cos t on the support of the weight).  The zero polynomial is the
    empty tuple; construction strips trailing zeros so equality of values is
    equality of representations.
    """

    coeffs: tuple[Fraction, ...]

    @staticmethod
    def of(*coeffs: Fraction | int) -> "ExactPoly":
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        return ExactPoly(tuple(cs))

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial at -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "ExactPoly") -> "ExactPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return ExactPoly.of(
            *(self[i] + other[i] for i in range(n))
        )

    def __sub__(self, other: "ExactPoly") -> "ExactPoly":
        return self + (-other)

    def __neg__(self) -> "ExactPoly":
        return ExactPoly(tuple(-c for c in self.coeffs))

    def __mul__(self, other: "ExactPoly | Fraction | int") -> "ExactPoly":
        if isinstance(other, (Fraction, int)):
            if other == 0:
                return ExactPoly(())
            return ExactPoly(tuple(c * other for c in self.coeffs))
        if self.is_zero() or other.is_zero():
            return ExactPoly(())
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return ExactPoly.of(*out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "ExactPoly":
        if n < 0:
            raise ValueError("negative polynomial power")
        # Empty product convention: P**0 == 1 even for the zero polynomial.
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def eval_exact(self, x: Fraction | int) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_float(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc


ZERO = ExactPoly(())
ONE = ExactPoly.of(1)
T = ExactPoly.of(0, 1)


@dataclasses.dataclass(frozen=True)
class ChebExpansion:
    """Finite expansion sum_j coeffs[j] * U_j, keys are basis indices j >= 0."""

    coeffs: tuple[tuple[int, Fraction], ...]

    @staticmethod
    def of(mapping: dict[int, Fraction]) -> "ChebExpansion":
        return ChebExpansion(tuple(sorted(mapping.items())))

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.coeffs)

    def __getitem__(self, j: int) -> Fraction:
        return self.as_dict().get(j, Fraction(0))

    def to_poly(self) -> ExactPoly:
        acc = ZERO
        for j, c in self.coeffs:
            acc = acc + (cheb_poly(j) * c)
        return acc

    @staticmethod
    def from_poly(p: ExactPoly) -> "ChebExpansion":
        """Expand p in the U basis by exact projection (orthonormality)."""
        return ChebExpansion.of(
            {j: inner_product(p, cheb_poly(j)) for j in range(p.degree + 1)}
        )


@functools.lru_cache(maxsize=None)
def cheb_poly(n: int) -> ExactPoly:
    """U_n via the recurrence U_{n+1} = T*U_n - U_{n-1}; U_{-1} = U_{-2} = 0."""
    if n < -2:
        raise ValueError(f"index {n} below the U_-2 = 0 convention")
    if n in (-1, -2):
        return ZERO
    if n == 0:
        return ONE
    if n == 1:
        return T
    return T * cheb_poly(n - 1) - cheb_poly(n - 2)


@functools.lru_cache(maxsize=None)
def catalan(m: int) -> int:
    return math.comb(2 * m, m) // (m + 1)


def semicircle_moment(k: int) -> Fraction:
    """Exact k-th moment of the semicircle weight on [-2, 2]."""
    if k % 2:
        return Fraction(0)
    return Fraction(catalan(k // 2))


def inner_product(p: ExactPoly, q: ExactPoly) -> Fraction:
    """(1/pi) integral over [-2,2] of p*q*sqrt(1-x^2/4), exactly.

    Computed through the moment sequence (odd moments vanish, even moment 2m
    is Catalan(m)); no quadrature anywhere.
    """
    prod = p * q
    return sum(
        (c * semicircle_moment(k) for k, c in enumerate(prod.coeffs) if c != 0),
        Fraction(0),
    )


def linearize_power(varpi: int, r: int) -> ChebExpansion:
    """All coefficients of U_r^varpi in the U basis, indices 0..r*varpi.

    Entries of the wrong parity (j not congruent to r*varpi mod 2) are exact
    zeros and are kept in the map so callers can check the vanishing.
    """
    if varpi < 0 or r < 0:
        raise ValueError("indices must be nonnegative")
    power = cheb_poly(r) ** varpi
    return ChebExpansion.of(
        {j: inner_product(power, cheb_poly(j)) for j in range(r * varpi + 1)}
    )


def monomial_expansion(ell: int) -> ExactPoly:
    """U_ell written directly in the monomial basis.

    sum over u = ell, ell-2, ..., of (-1)^((ell-u)/2) * C((ell+u)/2, u) * T^u;
    must agree with cheb_poly(ell) exactly.
    """
    if ell < 0:
        raise ValueError("index must be nonnegative")
    coeffs = [Fraction(0)] * (ell + 1)
    for u in range(ell % 2, ell + 1, 2):
        coeffs[u] = Fraction((-1) ** ((ell - u) // 2) * math.comb((ell + u) // 2, u))
    return ExactPoly.of(*coeffs)


def power_sum_identity_residual(n: int, r: int) -> ExactPoly:
    """Residual of the telescoping power-sum identity; zero iff it holds.

    lhs = sum over 0 <= j <= r with j = r mod 2 of (U_{jn} - U_{jn-2});
    rhs = sum over 0 <= j <= r of (-1)^j * U_{n-2}^j * U_{n(r-j)}.
    """
    if n < 1 or r < 1:
        raise ValueError("n and r must be >= 1")
    lhs = ZERO
    for j in range(r % 2, r + 1, 2):
        lhs = lhs + cheb_poly(j * n) - cheb_poly(j * n - 2)
    rhs = ZERO
    for j in range(r + 1):
        term = (cheb_poly(n - 2) ** j) * cheb_poly(n * (r - j))
        rhs = rhs + ((-1) ** j) * term
    return lhs - rhs


def _chains(k0: int):
    """Yield (sign, weight, tail) over strictly decreasing chains from k0.

    A chain is k0 > k_1 > ... > k_j >= 1 (j >= 0; j = 0 is the bare chain).
    sign is (-1)^j, weight the product of C(2 k_i, k_i - k_{i+1}) along the
    chain, tail the last index k_j.
    """
    stack = [(k0, 1, 1)]
    while stack:
        tail, sign, weight = stack.pop()
        yield sign, weight, tail
        for nxt in range(1, tail):
            stack.append((nxt, -sign, weight * math.comb(2 * tail, tail - nxt)))


def chain_decomposition_residual(k0: int) -> ExactPoly:
    """Residual of the chain decomposition of U_{2k0} - U_{2k0-2}; zero iff ok.

    The chain sum is sum over chains of sign * weight * (T^{2k_j} - C(2k_j, k_j)).
    """
    if k0 < 1:
        raise ValueError("k0 must be >= 1")
    acc = ZERO
    for sign, weight, tail in _chains(k0):
        bracket = (T ** (2 * tail)) - ExactPoly.of(math.comb(2 * tail, tail))
        acc = acc + (sign * weight) * bracket
    return acc - (cheb_poly(2 * k0) - cheb_poly(2 * k0 - 2))


def odd_reduction_residual(big_k: int) -> ExactPoly:
    """Residual of the reduction of odd-index differences to even ones.

    U_{2K+1} - U_{2K-1} = (-1)^K T (1 + sum_{k0=1}^{K} (-1)^{k0} (U_{2k0} - U_{2k0-2})),
    with the summand grouped exactly as written.  Zero iff the identity holds.
    """
    if big_k < 1:
        raise ValueError("K must be >= 1")
    inner = ONE
    for k0 in range(1, big_k + 1):
        inner = inner + ((-1) ** k0) * (cheb_poly(2 * k0) - cheb_poly(2 * k0 - 2))
    rhs = ((-1) ** big_k) * (T * inner)
    return cheb_poly(2 * big_k + 1) - cheb_poly(2 * big_k - 1) - rhs


def vanishing_chain_sum(k0: int) -> Fraction:
    """Chain sum weighted by C(2k_j, k_j) * k_j/(1+k_j).

    Equals -<U_{2k0} - U_{2k0-2}, U_0> in general: 1 at k0 = 1 and 0 for every
    k0 >= 2.  Both behaviors are part of the contract.
    """
    if k0 < 1:
        raise ValueError("k0 must be >= 1")
    acc = Fraction(0)
    for sign, weight, tail in _chains(k0):
        acc += sign * weight * math.comb(2 * tail, tail) * Fraction(tail, 1 + tail)
    return acc


def difference_monomial_coeff(big_k: int, k: int) -> Fraction:
    """Coefficient of T^k in U_K - U_{K-2}, by the closed binomial formulas.

    Conventions: the (0,0) coefficient is 0, and entries with k of the wrong
    parity (k = K+1 mod 2) vanish.  Rejects k outside 0..K.
    """
    if big_k < 0 or k < 0:
        raise ValueError("indices must be nonnegative")
    if k > big_k:
        raise ValueError("monomial degree exceeds the basis index")
    if (k - big_k) % 2:
        return Fraction(0)
    if big_k == 0:
        return Fraction(0)
    if big_k % 2 == 0:
        half_k = big_k // 2
        if k == 0:
            return Fraction(2 * (-1) ** half_k)
        ell = k // 2
        num = 2 * (-1) ** (half_k + ell) * half_k * math.factorial(half_k + ell - 1)
        return Fraction(num, math.factorial(2 * ell) * math.factorial(half_k - ell))
    half_k = (big_k - 1) // 2
    ell = (k - 1) // 2
    num = (-1) ** (half_k + ell) * (2 * half_k + 1) * math.factorial(half_k + ell)
    return Fraction(num, math.factorial(2 * ell + 1) * math.factorial(half_k - ell))


def difference_monomial_residual(big_k: int) -> ExactPoly:
    """Residual of sum_k coeff(K,k) T^k = U_K - U_{K-2}; zero iff it holds (K >= 1)."""
    if big_k < 1:
        raise ValueError("K must be >= 1")
    coeffs = [
        difference_monomial_coeff(big_k, k) for k in range(big_k + 1)
    ]
    return ExactPoly.of(*coeffs) - (cheb_poly(big_k) - cheb_poly(big_k - 2))

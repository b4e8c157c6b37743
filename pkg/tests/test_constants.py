"""Tests for the lower-order constants: sieve helpers, the prime-counting
integral constant, the even-power prime constant, digamma, the archimedean
constants, and the support-radius bound.

The prime-counting oracle below integrates (theta(t) - t)/t^2 segment by
segment at 50 digits, which shares no code with the partial-summation route
under test.
"""

import math
from fractions import Fraction

import mpmath
import pytest
import sympy

from symlow.constants import (
    ConstantsBundle,
    SIEVE_CAP_ENV,
    c_gamma,
    c_gamma_from_shifts,
    c_infty,
    c_pnt,
    c_sym_even,
    compute_constants,
    digamma,
    nu_max,
    primes_up_to,
    sieve_theta,
)

EULER_GAMMA = 0.5772156649015329


def pnt_segment_oracle(limit: int) -> float:
    """1 + int_1^limit (theta(t) - t)/t^2 dt by exact piecewise integration.

    theta is constant between consecutive primes, so on each segment [a, b)
    the integrand contributes theta0*(1/a - 1/b) - log(b/a) exactly.
    """
    with mpmath.workdps(50):
        breaks = [1] + [int(p) for p in sympy.primerange(2, limit + 1)] + [limit]
        theta0 = mpmath.mpf(0)
        total = mpmath.mpf(0)
        for a, b in zip(breaks, breaks[1:]):
            if a > 1:
                theta0 += mpmath.log(a)
            if b > a:
                total += theta0 * (mpmath.mpf(1) / a - mpmath.mpf(1) / b)
                total -= mpmath.log(mpmath.mpf(b) / a)
        # the endpoint prime enters theta at t = limit with measure zero
        return float(1 + total)


class TestSieve:
    def test_primes_match_sympy(self):
        got = primes_up_to(10**4).tolist()
        want = list(sympy.primerange(2, 10**4 + 1))
        assert got == want

    def test_small_edge_cases(self):
        assert primes_up_to(2).tolist() == [2]
        assert primes_up_to(3).tolist() == [2, 3]

    def test_cap_guard(self, monkeypatch):
        monkeypatch.setenv(SIEVE_CAP_ENV, "100")
        with pytest.raises(ValueError, match=SIEVE_CAP_ENV):
            primes_up_to(1000)
        # Within the lowered cap the sieve still works.
        assert primes_up_to(97).tolist()[-1] == 97

    def test_cap_env_validation(self, monkeypatch):
        monkeypatch.setenv(SIEVE_CAP_ENV, "not-a-number")
        with pytest.raises(ValueError):
            primes_up_to(10)
        monkeypatch.setenv(SIEVE_CAP_ENV, "1")
        with pytest.raises(ValueError):
            primes_up_to(10)

    def test_default_cap_blocks_huge_requests(self):
        with pytest.raises(ValueError, match=SIEVE_CAP_ENV):
            primes_up_to(10**8 + 1)

    def test_theta_frozen_values(self):
        assert sieve_theta(1) == 0.0
        assert abs(sieve_theta(2) - math.log(2)) < 1e-15
        assert abs(sieve_theta(10) - math.log(210)) < 1e-12

    def test_theta_against_sympy(self):
        want = math.fsum(math.log(p) for p in sympy.primerange(2, 101))
        assert abs(sieve_theta(100) - want) < 1e-10
        with pytest.raises(ValueError):
            sieve_theta(0)


class TestPrimeCountingConstant:
    def test_smallest_cutoff_exact(self):
        value, _ = c_pnt(2)
        assert abs(value - (1.0 - math.log(2))) < 1e-15

    def test_against_segment_oracle(self):
        value, _ = c_pnt(100)
        assert abs(value - pnt_segment_oracle(100)) < 1e-12

    def test_oracle_at_larger_cutoff(self):
        value, _ = c_pnt(2000)
        assert abs(value - pnt_segment_oracle(2000)) < 1e-11

    def test_uncertainty_is_decade_difference(self):
        value_hi, unc = c_pnt(1000)
        value_lo, _ = c_pnt(100)
        assert abs(unc - abs(value_hi - value_lo)) < 1e-15

    def test_stabilizes_with_cutoff(self):
        _, unc4 = c_pnt(10**4)
        _, unc6 = c_pnt(10**6)
        assert unc6 < unc4

    def test_rejects_tiny_cutoff(self):
        with pytest.raises(ValueError):
            c_pnt(1)


class TestEvenPowerConstant:
    def test_hand_sum_small_primes(self):
        want = math.fsum(
            math.log(p) / (p**1.5 - p) for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)
        )
        value, _ = c_sym_even(50)
        assert abs(value - want) < 1e-13

    def test_tail_bound_formula(self):
        _, tail = c_sym_even(10**4)
        assert tail == (2.0 * math.log(10**4) + 4.0) / (math.sqrt(10**4) - 1.0)

    def test_tail_monotone(self):
        tails = [c_sym_even(x)[1] for x in (10**3, 10**4, 10**5, 10**6)]
        assert tails == sorted(tails, reverse=True)

    def test_cross_cutoff_within_tail(self):
        lo, tail_lo = c_sym_even(10**4)
        hi, _ = c_sym_even(10**6)
        assert abs(hi - lo) <= tail_lo
        assert hi > lo  # positive summands only

    def test_rejects_tiny_cutoff(self):
        with pytest.raises(ValueError):
            c_sym_even(1)


class TestDigamma:
    def test_against_mpmath(self):
        for x in (0.001, 0.1, 0.25, 0.5, 0.75, 1.0, 2.0, 3.5, 5.25, 11.0, 123.456, 5000.0):
            want = float(mpmath.digamma(x))
            assert abs(digamma(x) - want) <= 1e-12 * max(1.0, abs(want))

    def test_closed_forms(self):
        assert abs(digamma(1.0) + EULER_GAMMA) < 1e-13
        assert abs(digamma(0.5) + EULER_GAMMA + 2.0 * math.log(2)) < 1e-13
        assert abs(digamma(0.25) + EULER_GAMMA + math.pi / 2 + 3.0 * math.log(2)) < 1e-13
        assert abs(digamma(2.0) - (1.0 - EULER_GAMMA)) < 1e-13

    def test_recurrence(self):
        for x in (0.3, 1.7, 8.4, 25.0):
            assert abs(digamma(x + 1.0) - digamma(x) - 1.0 / x) < 1e-13

    def test_reflection(self):
        # psi(1-x) - psi(x) = pi cot(pi x); at x = 1/4 the right side is pi.
        assert abs(digamma(0.75) - digamma(0.25) - math.pi) < 1e-12

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            digamma(0.0)
        with pytest.raises(ValueError):
            digamma(-3.2)


class TestArchimedeanConstants:
    def test_dual_routes_agree(self):
        for r in range(1, 11):
            for kappa in (2, 4, 12, 16):
                closed = c_gamma(r, kappa)
                summed = c_gamma_from_shifts(r, kappa)
                assert abs(closed - summed) < 1e-10, (r, kappa)

    def test_frozen_compositions(self):
        with mpmath.workdps(30):
            want_1 = float(mpmath.digamma(3) + mpmath.digamma(3.5))
            want_2 = float(
                mpmath.digamma(0.75) + mpmath.digamma(5.75) + mpmath.digamma(6.25)
            )
        assert abs(c_gamma(1, 12) - want_1) < 1e-12
        assert abs(c_gamma(2, 12) - want_2) < 1e-12

    def test_c_infty_composition(self):
        for r, kappa in ((1, 12), (2, 12), (3, 4), (6, 16)):
            assert c_infty(r, kappa) == -(r + 1) * math.log(math.pi) + c_gamma(r, kappa)

    def test_rejections(self):
        with pytest.raises(ValueError):
            c_gamma(0, 12)
        with pytest.raises(ValueError):
            c_gamma(2, 9)


class TestSupportBound:
    def test_frozen_values(self):
        assert nu_max(1, 2) == Fraction(82, 57)
        assert nu_max(2, 12) == Fraction(361, 754)
        assert nu_max(1, 2, 0) == Fraction(3, 2)

    def test_formula(self):
        for r in (1, 2, 3, 5):
            for kappa in (2, 4, 12):
                gap = Fraction(kappa) - 2 * Fraction(7, 64)
                want = (1 - Fraction(1, 2) / gap) * Fraction(2, r * r)
                got = nu_max(r, kappa)
                assert isinstance(got, Fraction)
                assert got == want

    def test_shrinks_with_rank(self):
        values = [nu_max(r, 12) for r in range(1, 8)]
        assert values == sorted(values, reverse=True)

    def test_rejections(self):
        with pytest.raises(ValueError):
            nu_max(0, 12)
        with pytest.raises(ValueError):
            nu_max(1, 3)
        with pytest.raises(ValueError):
            nu_max(1, 2, Fraction(3, 4))  # gap collapses to 1/2


class TestConstantsBundle:
    def test_compute_constants_coherent(self):
        bundle = compute_constants(1, 12, pnt_cutoff=10**4, c_cutoff=10**4)
        assert bundle.r == 1 and bundle.kappa == 12
        assert bundle.pnt_cutoff == 10**4 and bundle.c_cutoff == 10**4
        assert bundle.c_pnt_value == c_pnt(10**4)[0]
        assert bundle.c_value == c_sym_even(10**4)[0]
        assert bundle.c_gamma_value == c_gamma(1, 12)
        assert bundle.c_infty_value == -2 * math.log(math.pi) + bundle.c_gamma_value

    def test_tampered_composition_rejected(self):
        bundle = compute_constants(1, 12, pnt_cutoff=10**3, c_cutoff=10**3)
        with pytest.raises(ValueError):
            ConstantsBundle(
                r=bundle.r,
                kappa=bundle.kappa,
                c_pnt_value=bundle.c_pnt_value,
                c_pnt_uncertainty=bundle.c_pnt_uncertainty,
                c_value=bundle.c_value,
                c_tail_bound=bundle.c_tail_bound,
                c_gamma_value=bundle.c_gamma_value,
                c_infty_value=bundle.c_infty_value + 1e-9,
                pnt_cutoff=bundle.pnt_cutoff,
                c_cutoff=bundle.c_cutoff,
            )

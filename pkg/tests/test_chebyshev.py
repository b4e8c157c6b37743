"""Exact-rational polynomial engine: oracles and frozen identities.

Numeric cross-checks integrate against the semicircle weight with scipy;
everything else is exact Fraction arithmetic, so expected residuals are
literally zero, not small.
"""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from symlow.chebyshev import (
    ONE,
    T,
    ZERO,
    ChebExpansion,
    ExactPoly,
    catalan,
    chain_decomposition_residual,
    cheb_poly,
    difference_monomial_coeff,
    difference_monomial_residual,
    inner_product,
    linearize_power,
    monomial_expansion,
    odd_reduction_residual,
    power_sum_identity_residual,
    semicircle_moment,
    vanishing_chain_sum,
)


def quad_inner_product(p: ExactPoly, q: ExactPoly) -> float:
    """Independent route: quadrature of p*q against the weight.

    Substituting x = 2 cos(theta) removes the square-root endpoints, so the
    adaptive rule converges to machine accuracy.
    """

    def integrand(theta: float) -> float:
        x = 2.0 * math.cos(theta)
        s = math.sin(theta)
        return p.eval_float(x) * q.eval_float(x) * 2.0 * s * s / math.pi

    value, err = quad(integrand, 0.0, math.pi, limit=200)
    # the value converges to machine accuracy; the estimate is conservative
    assert err < 1e-8
    return value


small_polys = st.lists(
    st.integers(min_value=-9, max_value=9), min_size=0, max_size=6
).map(lambda cs: ExactPoly.of(*[Fraction(c) for c in cs]))


class TestExactPoly:
    def test_zero_and_one(self):
        assert ZERO.is_zero and ZERO.degree == -1
        assert ONE[0] == 1 and ONE.degree == 0
        assert T.degree == 1

    def test_eval_exact(self):
        p = ExactPoly.of(1, -2, 3)  # 1 - 2t + 3t^2
        assert p.eval_exact(Fraction(1, 2)) == Fraction(3, 4)
        assert p.eval_float(0.5) == 0.75

    @given(small_polys, small_polys, small_polys)
    @settings(max_examples=60, deadline=None)
    def test_ring_axioms(self, a, b, c):
        assert a + b == b + a
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert a - a == ZERO
        assert a * ONE == a and a * ZERO == ZERO

    @given(small_polys, st.integers(min_value=0, max_value=5))
    @settings(max_examples=40, deadline=None)
    def test_pow_matches_repeated_product(self, p, n):
        direct = ONE
        for _ in range(n):
            direct = direct * p
        assert p**n == direct

    def test_zero_pow_zero_is_one(self):
        # empty products are 1 even for the zero polynomial
        assert ZERO**0 == ONE
        assert ZERO**3 == ZERO

    def test_scalar_multiplication(self):
        p = ExactPoly.of(1, 1)
        assert 2 * p == p * 2 == ExactPoly.of(2, 2)
        assert p * Fraction(1, 3) == ExactPoly.of(Fraction(1, 3), Fraction(1, 3))


class TestChebFamily:
    def test_frozen_small_members(self):
        assert cheb_poly(0) == ONE
        assert cheb_poly(1) == T
        assert cheb_poly(2) == ExactPoly.of(-1, 0, 1)
        assert cheb_poly(3) == ExactPoly.of(0, -2, 0, 1)
        assert cheb_poly(-1) == ZERO and cheb_poly(-2) == ZERO

    def test_rejects_below_minus_two(self):
        with pytest.raises(ValueError):
            cheb_poly(-3)

    @given(st.integers(min_value=0, max_value=40))
    @settings(max_examples=41, deadline=None)
    def test_recurrence(self, n):
        assert cheb_poly(n + 1) == T * cheb_poly(n) - cheb_poly(n - 1)

    @given(st.integers(min_value=0, max_value=15), st.floats(min_value=0.4, max_value=2.74))
    @settings(max_examples=80, deadline=None)
    def test_sine_ratio_definition(self, n, theta):
        # monomial evaluation is ill-conditioned near |x| = 2, so the float
        # comparison stays on the well-conditioned interior
        expected = math.sin((n + 1) * theta) / math.sin(theta)
        got = cheb_poly(n).eval_float(2.0 * math.cos(theta))
        assert abs(got - expected) < 1e-9 * (n + 1)

    @pytest.mark.parametrize("n", range(0, 41))
    def test_special_angle_values_exact(self, n):
        # theta = 0, pi, pi/2, pi/3 give exact rational arguments
        assert cheb_poly(n).eval_exact(Fraction(2)) == n + 1
        assert cheb_poly(n).eval_exact(Fraction(-2)) == (-1) ** n * (n + 1)
        zero_pattern = [1, 0, -1, 0][n % 4]
        assert cheb_poly(n).eval_exact(Fraction(0)) == zero_pattern
        one_pattern = [1, 1, 0, -1, -1, 0][n % 6]
        assert cheb_poly(n).eval_exact(Fraction(1)) == one_pattern

    def test_moments_against_quadrature(self):
        for k in range(0, 11):
            exact = semicircle_moment(k)
            numeric = quad_inner_product(ExactPoly.of(*([0] * k + [1])), ONE)
            assert abs(float(exact) - numeric) < 1e-9
        assert semicircle_moment(4) == catalan(2) == 2
        assert semicircle_moment(7) == 0

    def test_inner_product_against_quadrature(self):
        pairs = [(T * T, ONE), (cheb_poly(3), cheb_poly(5)), (cheb_poly(4), cheb_poly(4))]
        for p, q in pairs:
            assert abs(float(inner_product(p, q)) - quad_inner_product(p, q)) < 1e-9

    def test_orthonormality_window(self):
        for i in range(0, 13):
            for j in range(i, 13):
                assert inner_product(cheb_poly(i), cheb_poly(j)) == (1 if i == j else 0)


class TestLinearization:
    def test_square_of_first(self):
        x = linearize_power(2, 1)
        assert x[0] == 1 and x[1] == 0 and x[2] == 1
        assert x.to_poly() == cheb_poly(1) ** 2

    def test_parity_entries_are_exact_zeros(self):
        x = linearize_power(3, 2)  # indices of the wrong parity vanish
        for j, coeff in x.coeffs:
            if (j - 6) % 2:
                assert coeff == 0

    def test_even_power_constant_coefficient(self):
        # <U_1^w, U_0> = C(w, w/2)/(1 + w/2) for even w
        for w in (2, 4, 6, 8):
            expected = Fraction(math.comb(w, w // 2), 1 + w // 2)
            assert linearize_power(w, 1)[0] == expected

    @pytest.mark.parametrize("varpi", [1, 2, 3, 4])
    @pytest.mark.parametrize("r", [1, 2, 3, 4])
    def test_reassembly(self, varpi, r):
        assert linearize_power(varpi, r).to_poly() == cheb_poly(r) ** varpi

    def test_expansion_round_trip(self):
        p = cheb_poly(4) * 3 + cheb_poly(1) * Fraction(-7, 2) + ONE
        exp = ChebExpansion.from_poly(p)
        assert exp.to_poly() == p
        assert exp[4] == 3 and exp[1] == Fraction(-7, 2) and exp[0] == 1


class TestMonomialExpansion:
    def test_matches_recurrence_construction(self):
        for ell in range(0, 61):
            assert monomial_expansion(ell) == cheb_poly(ell)

    def test_alternating_signs(self):
        p = monomial_expansion(6)
        assert p[6] == 1 and p[4] == -5 and p[2] == 6 and p[0] == -1


class TestChainIdentities:
    @pytest.mark.parametrize("n", range(1, 9))
    @pytest.mark.parametrize("r", range(1, 9))
    def test_power_sum_identity(self, n, r):
        assert power_sum_identity_residual(n, r).is_zero

    @pytest.mark.parametrize("k0", range(1, 9))
    def test_chain_decomposition(self, k0):
        assert chain_decomposition_residual(k0).is_zero

    @pytest.mark.parametrize("big_k", range(1, 9))
    def test_odd_reduction(self, big_k):
        assert odd_reduction_residual(big_k).is_zero

    def test_vanishing_chain_sum(self):
        assert vanishing_chain_sum(1) == 1
        for k0 in range(2, 9):
            assert vanishing_chain_sum(k0) == 0

    def test_vanishing_chain_sum_is_projection(self):
        # equals minus the constant-component of U_{2k0} - U_{2k0-2}
        for k0 in range(1, 7):
            diff = cheb_poly(2 * k0) - cheb_poly(2 * k0 - 2)
            assert vanishing_chain_sum(k0) == -inner_product(diff, ONE)


class TestDifferenceCoefficients:
    def test_frozen_values(self):
        assert difference_monomial_coeff(0, 0) == 0
        assert difference_monomial_coeff(1, 1) == 1
        assert difference_monomial_coeff(2, 0) == -2
        assert difference_monomial_coeff(2, 2) == 1
        assert difference_monomial_coeff(4, 0) == 2
        assert difference_monomial_coeff(3, 1) == -3

    def test_parity_mismatch_is_zero(self):
        assert difference_monomial_coeff(4, 1) == 0
        assert difference_monomial_coeff(5, 2) == 0

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            difference_monomial_coeff(3, 4)

    @pytest.mark.parametrize("big_k", list(range(1, 41)))
    def test_identity(self, big_k):
        assert difference_monomial_residual(big_k).is_zero

    def test_row_reassembles_difference(self):
        big_k = 12
        acc = ZERO
        for k in range(big_k + 1):
            acc = acc + ExactPoly.of(*([0] * k + [1])) * difference_monomial_coeff(big_k, k)
        assert acc == cheb_poly(big_k) - cheb_poly(big_k - 2)

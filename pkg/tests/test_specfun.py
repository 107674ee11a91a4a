import math
from fractions import Fraction as F

import pytest

from qmodver.series import COMPLEX, EXACT, PuiseuxSeries
from qmodver.specfun import (InvalidTwistError, TwistParams, bernoulli_number,
                             bernoulli_poly, dedekind_eta, distinct_parts_product,
                             divisor_sigma, eisenstein, eta_half_period_series,
                             jacobi_theta, partition_gf, q_twisted)


def brute_partitions(n):
    """Enumerate partitions of n with parts <= m recursively."""
    def count(n, m):
        if n == 0:
            return 1
        return sum(count(n - k, k) for k in range(1, min(n, m) + 1))
    return count(n, n)


def taylor_bernoulli_poly(k, x):
    """Expand t e^{tx} / (e^t - 1) with exact truncated Taylor series."""
    N = k + 2
    num = [F(x) ** r / math.factorial(r) for r in range(N)]       # e^{tx}
    den = [F(1, math.factorial(r + 1)) for r in range(N)]         # (e^t - 1)/t
    quot = []
    for r in range(N):
        c = num[r] - sum(den[r - i] * quot[i] for i in range(r))
        quot.append(c / den[0])
    return quot[k] * math.factorial(k)


class TestBernoulli:
    def test_constant(self):
        assert bernoulli_poly(0, F(17, 3)) == 1

    def test_b1_at_zero(self):
        assert bernoulli_poly(1, F(0)) == taylor_bernoulli_poly(1, F(0)) == F(-1, 2)

    def test_b2_at_half(self):
        assert bernoulli_poly(2, F(1, 2)) == taylor_bernoulli_poly(2, F(1, 2)) == F(-1, 12)

    def test_against_generating_function(self):
        for k in range(8):
            for x in (F(0), F(1, 2), F(1, 3), F(2)):
                assert bernoulli_poly(k, x) == taylor_bernoulli_poly(k, x)

    def test_recurrence_closure(self):
        for k in range(1, 13):
            s = sum(math.comb(k + 1, i) * bernoulli_number(i) for i in range(k + 1))
            assert s == 0


class TestDivisorSigma:
    def test_small_values(self):
        assert divisor_sigma(1, 1) == 1
        assert divisor_sigma(1, 6) == 12
        assert divisor_sigma(3, 2) == 9

    def test_brute_force(self):
        for n in range(1, 40):
            for k in (0, 1, 3):
                assert divisor_sigma(k, n) == sum(d ** k for d in range(1, n + 1) if n % d == 0)

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            divisor_sigma(1, 0)


class TestEisenstein:
    def test_constant_terms(self):
        assert eisenstein(2, 5).coefficient_at(0) == F(-1, 12)
        assert eisenstein(4, 5).coefficient_at(0) == F(1, 720)

    def test_e2_linear_coefficient(self):
        assert eisenstein(2, 5).coefficient_at(1) == 2

    def test_integrality_pattern(self):
        for k in (2, 4, 6):
            ek = eisenstein(k, 12)
            for n in range(1, 12):
                assert ek.coefficient_at(n) == F(2 * divisor_sigma(k - 1, n),
                                                 math.factorial(k - 1))

    def test_rejects_odd_and_small(self):
        with pytest.raises(ValueError):
            eisenstein(3, 5)
        with pytest.raises(ValueError):
            eisenstein(0, 5)


class TestQTwisted:
    def test_q0_is_minus_one(self):
        for tw in (TwistParams(0, 1, 0, 1), TwistParams(1, 2, 1, 2)):
            s = q_twisted(0, tw, 10)
            assert s.equals(PuiseuxSeries.monomial(F(-1), 0, 10))

    def test_invalid_twist(self):
        with pytest.raises(InvalidTwistError):
            q_twisted(1, TwistParams(0, 1, 0, 1), 10)

    def test_q1_lambda_minus_one_constant(self):
        s = q_twisted(1, TwistParams(0, 1, 1, 2), 10)
        assert s.coefficient_at(0) == 0

    def test_q2_low_coefficients_against_direct_expansion(self):
        # independent oracle: expand both sums of the defining formula with
        # three geometric terms each, by hand, on the 1/2 grid
        order = F(3, 2)  # three geometric terms cover every exponent below 3/2
        acc = {F(0): -bernoulli_poly(2, F(1, 2)) / 2}
        for n in range(4):          # first sum, x = n + 1/2
            x = n + F(1, 2)
            for m in range(1, 4):
                if m * x < order:
                    acc[m * x] = acc.get(m * x, F(0)) + x
        for n in range(1, 4):       # second sum, x = n - 1/2, (-1)^k = +1
            x = n - F(1, 2)
            for m in range(1, 4):
                if m * x < order:
                    acc[m * x] = acc.get(m * x, F(0)) + x
        s = q_twisted(2, TwistParams(1, 2, 0, 1), order)
        assert acc[F(0)] == F(1, 24) and s.coefficient_at(0) == F(1, 24)
        assert acc[F(1, 2)] == 1 and s.coefficient_at(F(1, 2)) == 1
        for e, c in acc.items():
            assert s.coefficient_at(e) == c

    def test_q1_mu_minus_one_cancels(self):
        assert q_twisted(1, TwistParams(1, 2, 0, 1), 20).is_zero()

    def test_periodicity(self):
        tw = TwistParams(1, 2, 1, 2)
        for k in (1, 2, 3):
            s = q_twisted(k, tw, 10)
            assert s.shift_tau(2).equals(s)

    def test_complex_domain_for_general_roots(self):
        s = q_twisted(1, TwistParams(0, 1, 1, 3), 5)
        assert s.domain == COMPLEX


class TestEta:
    def test_leading_term(self):
        eta = dedekind_eta(10)
        assert eta.lead() == F(1, 24)
        assert eta.coefficient_at(F(1, 24)) == 1

    def test_pentagonal_coefficients(self):
        eta = dedekind_eta(10)
        assert eta.coefficient_at(1 + F(1, 24)) == -1
        assert eta.coefficient_at(5 + F(1, 24)) == 1

    def test_matches_brute_force_product(self):
        # multiply out prod(1 - q^n) with a plain dict, no series machinery
        N = 12
        poly = {0: 1}
        for n in range(1, N + 1):
            poly = {e: c for e, c in poly.items() if e <= N}
            new = dict(poly)
            for e, c in poly.items():
                if e + n <= N:
                    new[e + n] = new.get(e + n, 0) - c
            poly = new
        eta = dedekind_eta(N)
        for e in range(N):
            assert eta.coefficient_at(e + F(1, 24)) == poly.get(e, 0)

    def test_is_unit(self):
        eta = dedekind_eta(31)
        assert (eta * eta.invert()).truncate(30).equals(PuiseuxSeries.one(30))


class TestTheta:
    def test_theta1_identically_zero(self):
        assert jacobi_theta(1, 30).is_zero()

    def test_theta3_low_terms(self):
        t3 = jacobi_theta(3, 10)
        assert t3.coefficient_at(0) == 1
        assert t3.coefficient_at(F(1, 2)) == 2

    def test_theta2_leading(self):
        t2 = jacobi_theta(2, 10)
        assert t2.lead() == F(1, 8)
        assert t2.coefficient_at(F(1, 8)) == 2

    def test_theta_parity_supports(self):
        for e, _ in jacobi_theta(2, 20).terms():
            assert (e - F(1, 8)).denominator == 1
        for which in (3, 4):
            for e, _ in jacobi_theta(which, 20).terms():
                assert (2 * e).denominator == 1 and math.isqrt(int(2 * e)) ** 2 == 2 * e

    def test_theta3_plus_theta4_cancellation(self):
        s = jacobi_theta(3, 20) + jacobi_theta(4, 20)
        for e, _ in s.terms():
            assert e.denominator == 1

    def test_shift_tau_theta3_gives_theta4(self):
        assert jacobi_theta(3, 30).shift_tau(1).equals(jacobi_theta(4, 30))


class TestPartitionGf:
    def test_low_coefficients(self):
        pg = partition_gf(12)
        assert pg.coefficient_at(0) == 1
        assert pg.coefficient_at(5) == brute_partitions(5) == 7
        assert pg.coefficient_at(10) == brute_partitions(10) == 42

    def test_distinct_parts_product(self):
        dp = distinct_parts_product(8)
        # partitions into distinct parts: 1, 1, 1, 2, 2, 3, 4, 5
        for n, c in enumerate([1, 1, 1, 2, 2, 3, 4, 5]):
            assert dp.coefficient_at(n) == c


def test_eta_truncation_stability():
    v60 = dedekind_eta(60).to_complex().evaluate(2j)
    v120 = dedekind_eta(120).to_complex().evaluate(2j)
    assert abs(v60.value - v120.value) < 1e-12
    assert abs(v60.value - v120.value) <= v60.tail_estimate + 1e-15


def test_eta_half_period_series_matches_pointwise_value():
    import cmath
    half = eta_half_period_series(60).to_complex()
    eta = dedekind_eta(60).to_complex()
    tau = 2j
    lhs = cmath.exp(1j * math.pi / 24) * half.evaluate(tau).value
    rhs = eta.evaluate((tau + 1) / 2).value
    assert abs(lhs - rhs) < 1e-12

"""Special q-series: Bernoulli polynomials, Eisenstein series, twisted Q_k,
Dedekind eta, Jacobi theta functions and the partition generating function.

Everything is returned as an exact PuiseuxSeries unless a twist forces complex
coefficients (roots of unity other than +-1).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, lcm

from .series import COMPLEX, EXACT, PuiseuxSeries, SeriesError


class InvalidTwistError(SeriesError):
    """Q_k with k >= 1 needs (mu, lambda) != (1, 1)."""


@lru_cache(maxsize=None)
def bernoulli_number(k: int) -> Fraction:
    # recurrence sum_{i=0}^{m} C(m+1, i) B_i = 0 for m >= 1, from t e^{tx}/(e^t - 1)
    if k == 0:
        return Fraction(1)
    s = sum(Fraction(comb(k + 1, i)) * bernoulli_number(i) for i in range(k))
    return -s / (k + 1)


def bernoulli_poly(k: int, x: Fraction) -> Fraction:
    """B_k(x) = sum_i C(k, i) B_i x^{k-i}; B_1(0) = -1/2."""
    if k < 0:
        raise ValueError("Bernoulli polynomial degree must be nonnegative")
    x = Fraction(x)
    return sum(comb(k, i) * bernoulli_number(i) * x ** (k - i) for i in range(k + 1))


def divisor_sigma(k: int, n: int) -> int:
    """sum of d^k over the divisors d of n."""
    if n < 1:
        raise ValueError("divisor_sigma needs n >= 1")
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d ** k
            e = n // d
            if e != d:
                total += e ** k
        d += 1
    return total


def eisenstein(k: int, order) -> PuiseuxSeries:
    """Normalized Eisenstein series -B_k/k! + (2/(k-1)!) sum sigma_{k-1}(n) q^n."""
    if k < 2 or k % 2 != 0:
        raise ValueError("Eisenstein series is defined here for even k >= 2")
    order = Fraction(order)
    fact = Fraction(math.factorial(k - 1))
    terms = [(Fraction(0), -bernoulli_number(k) / math.factorial(k))]
    n = 1
    while n < order:
        terms.append((Fraction(n), 2 * divisor_sigma(k - 1, n) / fact))
        n += 1
    return PuiseuxSeries.from_terms(terms, order)


@dataclass(frozen=True)
class TwistParams:
    """(j, T, l, T1) encoding mu = e^{2 pi i j/T}, lambda = e^{2 pi i l/T1}."""
    j: int
    T: int
    l: int
    T1: int

    def __post_init__(self):
        if self.T < 1 or self.T1 < 1:
            raise ValueError("twist orders T, T1 must be positive")
        if not (0 <= self.j < self.T and 0 <= self.l < self.T1):
            raise ValueError("twist exponents must satisfy 0 <= j < T, 0 <= l < T1")

    @property
    def trivial(self) -> bool:
        return self.j == 0 and self.l == 0

    @property
    def lambda_real(self) -> bool:
        # lambda in {1, -1} iff 2l/T1 is an integer
        return (2 * self.l) % self.T1 == 0


def q_twisted(k: int, tw: TwistParams, order) -> PuiseuxSeries:
    """The twisted series Q_k(mu, lambda, tau) on the 1/T exponent grid.

    Q_0 is the constant -1 for every twist.  For k >= 1 each geometric factor
    lambda^{+-1} q^x / (1 - lambda^{+-1} q^x) with x > 0 is expanded as
    sum_m lambda^{+-m} q^{mx}; the n = 0, j = 0 term of the first sum is the
    pure constant lambda/(1 - lambda) (0^0 = 1 convention), and the constant
    -B_k(j/T)/k! is always present.
    """
    if k < 0:
        raise ValueError("Q_k needs k >= 0")
    order = Fraction(order)
    if k == 0:
        return PuiseuxSeries.monomial(Fraction(-1), Fraction(0), order)
    if tw.trivial:
        raise InvalidTwistError("Q_k with k >= 1 requires (mu, lambda) != (1, 1)")

    exact = tw.lambda_real
    domain = EXACT if exact else COMPLEX
    if exact:
        lam = Fraction(1) if tw.l == 0 else Fraction(-1)
    else:
        lam = cmath.exp(2j * math.pi * tw.l / tw.T1)
    K = math.factorial(k - 1)
    jT = Fraction(tw.j, tw.T)
    terms: list[tuple[Fraction, object]] = [(Fraction(0), _cast(-bernoulli_poly(k, jT) / math.factorial(k), exact))]

    def expand(x: Fraction, base, powfun):
        # base * x^{k-1} lambda^{+-m} q^{mx} for m >= 1 while mx < order
        w = _cast(Fraction(x ** (k - 1), K) * base, exact)
        m = 1
        while m * x < order:
            terms.append((m * x, w * powfun(m)))
            m += 1

    # first sum, n >= 0
    if tw.j == 0:
        # n = 0 contributes the constant lambda/(1 - lambda) only when k = 1 (0^0 = 1)
        if k == 1:
            terms.append((Fraction(0), lam / (1 - lam) / K))
        n0 = 1
    else:
        n0 = 0
    n = n0
    while n + jT < order:
        expand(n + jT, 1, lambda m: lam ** m)
        n += 1
    # second sum, n >= 1, coefficient (-1)^k, powers of lambda^{-1}
    sign = (-1) ** k
    lam_inv = 1 / lam
    n = 1
    while n - jT < order:
        expand(n - jT, sign, lambda m: lam_inv ** m)
        n += 1
    return PuiseuxSeries.from_terms(terms, order, domain, ramification=tw.T)


def _cast(x: Fraction, exact: bool):
    return x if exact else complex(x)


def euler_product(order) -> PuiseuxSeries:
    """prod_{n=1}^{ceil(order)} (1 - q^n), exact on the integer grid."""
    order = Fraction(order)
    out = PuiseuxSeries.one(order)
    for n in range(1, math.ceil(order) + 1):
        if n >= order:
            break
        out = out * PuiseuxSeries.from_terms(
            [(Fraction(0), Fraction(1)), (Fraction(n), Fraction(-1))], order)
    return out


def distinct_parts_product(order) -> PuiseuxSeries:
    """prod (1 + q^n): generating function of partitions into distinct parts."""
    order = Fraction(order)
    out = PuiseuxSeries.one(order)
    for n in range(1, math.ceil(order) + 1):
        if n >= order:
            break
        out = out * PuiseuxSeries.from_terms(
            [(Fraction(0), Fraction(1)), (Fraction(n), Fraction(1))], order)
    return out


def dedekind_eta(order) -> PuiseuxSeries:
    """eta(tau) = q^{1/24} prod_{n>=1} (1 - q^n), truncated at `order`."""
    order = Fraction(order)
    return euler_product(order).shifted(Fraction(1, 24)).truncate(order)


def eta_half_period_series(order) -> PuiseuxSeries:
    """q-expansion of e^{-i pi/24} eta((tau+1)/2): q^{1/48} prod (1 - (-1)^n q^{n/2}).

    The pointwise principal-branch value of eta at (tau+1)/2 is this series
    times e^{i pi/24}; the series itself is exact rational on the 1/48 grid.
    """
    order = Fraction(order)
    out = PuiseuxSeries.one(order)
    n = 1
    while Fraction(n, 2) < order:
        sign = Fraction(1) if n % 2 else Fraction(-1)
        out = out * PuiseuxSeries.from_terms(
            [(Fraction(0), Fraction(1)), (Fraction(n, 2), sign)], order)
        n += 1
    return out.shifted(Fraction(1, 48)).truncate(order)


def partition_gf(order) -> PuiseuxSeries:
    """sum_{n>=0} P(n) q^n = prod (1 - q^n)^{-1}."""
    return euler_product(order).invert()


_THETA_SIGNS = {1: True, 2: False, 3: False, 4: True}


def jacobi_theta(which: int, order) -> PuiseuxSeries:
    """theta_1..theta_4 as bilateral sums; theta_1 is identically zero."""
    if which not in (1, 2, 3, 4):
        raise ValueError("theta index must be 1, 2, 3 or 4")
    order = Fraction(order)
    half_shift = which in (1, 2)  # exponent (n - 1/2)^2 / 2, else n^2 / 2
    alternating = _THETA_SIGNS[which]
    N = math.isqrt(max(0, math.ceil(2 * order))) + 3
    terms = []
    for n in range(-N, N + 1):
        if half_shift:
            e = Fraction((2 * n - 1) ** 2, 8)
        else:
            e = Fraction(n * n, 2)
        if e >= order:
            continue
        c = Fraction(-1 if (alternating and n % 2) else 1)
        terms.append((e, c))
    return PuiseuxSeries.from_terms(terms, order, ramification=8 if half_shift else 2)

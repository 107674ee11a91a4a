"""Integer SL(2,Z) matrices, the congruence subgroup Gamma(T,T1), Moebius and
slash actions on the upper half plane, and the right action on sector pairs."""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from math import lcm


class PoleError(ArithmeticError):
    """c*tau + d vanished numerically (cannot happen strictly inside H)."""


@dataclass(frozen=True)
class ModularMatrix:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"determinant of {self.entries()} is not 1")

    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def compose(self, other: "ModularMatrix") -> "ModularMatrix":
        return ModularMatrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __matmul__(self, other: "ModularMatrix") -> "ModularMatrix":
        return self.compose(other)

    def inverse(self) -> "ModularMatrix":
        return ModularMatrix(self.d, -self.b, -self.c, self.a)


IDENTITY = ModularMatrix(1, 0, 0, 1)
S = ModularMatrix(0, -1, 1, 0)
T = ModularMatrix(1, 1, 0, 1)


def is_in_gamma(m: ModularMatrix, T_ord: int, T1_ord: int) -> bool:
    """Membership in Gamma(T, T1): a = d = 1 mod lcm(T, T1), b = 0 mod T, c = 0 mod T1."""
    N = lcm(T_ord, T1_ord)
    return (m.a % N == 1 % N and m.d % N == 1 % N
            and m.b % T_ord == 0 and m.c % T1_ord == 0)


def require_upper_half(tau: complex) -> complex:
    tau = complex(tau)
    if tau.imag <= 0:
        raise ValueError(f"tau = {tau} is not in the upper half plane")
    return tau


def mobius(m: ModularMatrix, tau: complex) -> complex:
    """(a tau + b)/(c tau + d); preserves the upper half plane."""
    tau = require_upper_half(tau)
    den = m.c * tau + m.d
    if den == 0:
        raise PoleError(f"c*tau + d = 0 at tau = {tau}")
    return (m.a * tau + m.b) / den


@dataclass(frozen=True)
class SectorPair:
    """(g, h) = (g0^i, g0^j) for commuting automorphisms in the cyclic group Z_n."""
    n: int
    i: int
    j: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("group order must be positive")
        if not (0 <= self.i < self.n and 0 <= self.j < self.n):
            raise ValueError("sector exponents must be reduced mod n")

    @staticmethod
    def make(n: int, i: int, j: int) -> "SectorPair":
        return SectorPair(n, i % n, j % n)


def act_on_pair(p: SectorPair, m: ModularMatrix) -> SectorPair:
    """The right SL(2,Z) action (g, h) -> (g^a h^c, g^b h^d)."""
    return SectorPair.make(p.n, m.a * p.i + m.c * p.j, m.b * p.i + m.d * p.j)


def slash_factor(k, m: ModularMatrix, tau: complex) -> complex:
    """(c tau + d)^{-k}, principal branch for non-integer weight k."""
    tau = require_upper_half(tau)
    k = Fraction(k)
    den = m.c * tau + m.d
    if den == 0:
        raise PoleError(f"c*tau + d = 0 at tau = {tau}")
    if k == 0:
        return 1.0 + 0j
    return cmath.exp(-float(k) * cmath.log(den))

"""Truncated Laurent-Puiseux series in q with exact rational or complex coefficients.

A series lives on the exponent grid (offset + i)/ramification, i >= 0, and is
known modulo q^order: every retained exponent is strictly below `order`, and
operations propagate the sharpest order they can justify rather than a fixed
global truncation.  Exact-domain coefficients are `fractions.Fraction`;
complex-domain coefficients are python `complex` with finite components.
All values are immutable and all operations are pure.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterator, NamedTuple, Union

EXACT = "exact"
COMPLEX = "complex"

Coeff = Union[Fraction, complex]
RationalLike = Union[Fraction, int]


class SeriesError(Exception):
    """Base class for series construction and arithmetic failures."""


class DomainMismatchError(SeriesError):
    """Binary operation on one exact and one complex series; promote explicitly."""


class DomainPromotionRequired(SeriesError):
    """Exact-domain operation would need irrational coefficients."""


class NonInvertibleError(SeriesError):
    """Leading coefficient is zero (or the series has no retained terms)."""


class BeyondTruncationError(SeriesError):
    """Requested coefficient lies at or beyond the known order."""


class EvaluationError(SeriesError):
    """Numeric evaluation precondition failed."""


class NotInUpperHalfPlane(EvaluationError):
    pass


class InsufficientConvergence(EvaluationError):
    pass


class EvalResult(NamedTuple):
    value: complex
    tail_estimate: float
    tail_reliable: bool


def _as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _zero_of(domain: str) -> Coeff:
    return Fraction(0) if domain == EXACT else complex(0.0)


def _check_coeff(c: Coeff, domain: str) -> Coeff:
    if domain == EXACT:
        if isinstance(c, int):
            return Fraction(c)
        if not isinstance(c, Fraction):
            raise SeriesError(f"exact series needs Fraction coefficients, got {type(c).__name__}")
        return c
    c = complex(c)
    if not (math.isfinite(c.real) and math.isfinite(c.imag)):
        raise SeriesError("non-finite complex coefficient")
    return c


def _slot_count(order: Fraction, ramification: int, offset: int) -> int:
    # number of integers i >= 0 with (offset + i)/D < order
    return max(0, math.ceil(order * ramification - offset))


@dataclass(frozen=True)
class PuiseuxSeries:
    ramification: int
    offset: int
    coeffs: tuple
    order: Fraction
    domain: str

    def __post_init__(self):
        if self.ramification < 1:
            raise SeriesError("ramification must be a positive integer")
        if self.domain not in (EXACT, COMPLEX):
            raise SeriesError(f"unknown domain {self.domain!r}")
        n = _slot_count(self.order, self.ramification, self.offset)
        if len(self.coeffs) != n:
            raise SeriesError(
                f"coefficient list length {len(self.coeffs)} != {n} slots below order {self.order}"
            )
        for c in self.coeffs:
            _check_coeff(c, self.domain)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(order: RationalLike, domain: str = EXACT) -> "PuiseuxSeries":
        order = _as_fraction(order)
        off = math.ceil(order)  # no slots below order
        return PuiseuxSeries(1, off, (), order, domain)

    @staticmethod
    def one(order: RationalLike, domain: str = EXACT) -> "PuiseuxSeries":
        return PuiseuxSeries.monomial(_zero_of(domain) + 1, Fraction(0), order, domain)

    @staticmethod
    def monomial(coeff, exp: RationalLike, order: RationalLike,
                 domain: str | None = None) -> "PuiseuxSeries":
        exp = _as_fraction(exp)
        order = _as_fraction(order)
        if exp >= order:
            raise SeriesError(f"monomial exponent {exp} not below order {order}")
        if domain is None:
            domain = COMPLEX if isinstance(coeff, complex) else EXACT
        coeff = _check_coeff(coeff, domain)
        if coeff == 0:
            return PuiseuxSeries.zero(order, domain)
        D = lcm(exp.denominator, order.denominator)
        off = int(exp * D)
        n = _slot_count(order, D, off)
        cs = [_zero_of(domain)] * n
        cs[0] = coeff
        return PuiseuxSeries(D, off, tuple(cs), order, domain)

    @staticmethod
    def from_terms(terms, order: RationalLike, domain: str = EXACT,
                   ramification: int = 1) -> "PuiseuxSeries":
        """Accumulate (exponent, coefficient) pairs; terms at/beyond order are dropped."""
        order = _as_fraction(order)
        acc: dict[Fraction, Coeff] = {}
        D = lcm(ramification, order.denominator)
        for e, c in terms:
            e = _as_fraction(e)
            if e >= order:
                continue
            c = _check_coeff(c, domain)
            acc[e] = acc.get(e, _zero_of(domain)) + c
            D = lcm(D, e.denominator)
        acc = {e: c for e, c in acc.items() if c != 0}
        if not acc:
            return PuiseuxSeries.zero(order, domain)
        off = min(int(e * D) for e in acc)
        n = _slot_count(order, D, off)
        cs = [_zero_of(domain)] * n
        for e, c in acc.items():
            cs[int(e * D) - off] = c
        return PuiseuxSeries(D, off, tuple(cs), order, domain)

    # -- structure ---------------------------------------------------------

    def exponent(self, i: int) -> Fraction:
        return Fraction(self.offset + i, self.ramification)

    def terms(self) -> Iterator[tuple[Fraction, Coeff]]:
        """Nonzero (exponent, coefficient) pairs in increasing exponent order."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                yield self.exponent(i), c

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def lead(self) -> Fraction | None:
        """Smallest exponent carrying a nonzero coefficient, None for the zero series."""
        for e, _ in self.terms():
            return e
        return None

    def _lead_or_order(self) -> Fraction:
        l = self.lead()
        return self.order if l is None else l

    def coefficient_at(self, e: RationalLike) -> Coeff:
        e = _as_fraction(e)
        if e >= self.order:
            raise BeyondTruncationError(f"exponent {e} is not below the known order {self.order}")
        i = e * self.ramification - self.offset
        if i.denominator != 1 or i < 0 or i >= len(self.coeffs):
            return _zero_of(self.domain)
        return self.coeffs[int(i)]

    def support_step(self) -> Fraction:
        """Gcd spacing of the nonzero support (falls back to the full 1/D grid)."""
        idx = [i for i, c in enumerate(self.coeffs) if c != 0]
        if len(idx) < 2:
            return Fraction(1, self.ramification)
        g = 0
        for a, b in zip(idx, idx[1:]):
            g = gcd(g, b - a)
        return Fraction(g, self.ramification)

    # -- domain handling ---------------------------------------------------

    def to_complex(self) -> "PuiseuxSeries":
        if self.domain == COMPLEX:
            return self
        return PuiseuxSeries(self.ramification, self.offset,
                             tuple(complex(c) for c in self.coeffs),
                             self.order, COMPLEX)

    def _require_same_domain(self, other: "PuiseuxSeries"):
        if self.domain != other.domain:
            raise DomainMismatchError(
                f"mixed domains {self.domain}/{other.domain}; call to_complex() first")

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "PuiseuxSeries") -> "PuiseuxSeries":
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        self._require_same_domain(other)
        order = min(self.order, other.order)
        D = lcm(self.ramification, other.ramification)
        acc: dict[Fraction, Coeff] = {}
        for e, c in self.terms():
            if e < order:
                acc[e] = acc.get(e, _zero_of(self.domain)) + c
        for e, c in other.terms():
            if e < order:
                acc[e] = acc.get(e, _zero_of(self.domain)) + c
        return PuiseuxSeries.from_terms(acc.items(), order, self.domain, D)

    def __neg__(self) -> "PuiseuxSeries":
        return PuiseuxSeries(self.ramification, self.offset,
                             tuple(-c for c in self.coeffs), self.order, self.domain)

    def __sub__(self, other: "PuiseuxSeries") -> "PuiseuxSeries":
        return self + (-other)

    def scale(self, c) -> "PuiseuxSeries":
        """Multiply every coefficient by the scalar c (domain must match)."""
        c = _check_coeff(c, self.domain)
        if c == 0:
            return PuiseuxSeries.zero(self.order, self.domain)
        return PuiseuxSeries(self.ramification, self.offset,
                             tuple(c * x for x in self.coeffs), self.order, self.domain)

    def __mul__(self, other: "PuiseuxSeries") -> "PuiseuxSeries":
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        self._require_same_domain(other)
        order = min(self.order + other._lead_or_order(),
                    other.order + self._lead_or_order())
        D = lcm(self.ramification, other.ramification)
        a = list(self.terms())
        b = list(other.terms())
        if len(a) > len(b):
            a, b = b, a
        acc: dict[Fraction, Coeff] = {}
        for ea, ca in a:
            for eb, cb in b:
                e = ea + eb
                if e >= order:
                    break
                acc[e] = acc.get(e, _zero_of(self.domain)) + ca * cb
        return PuiseuxSeries.from_terms(acc.items(), order, self.domain, D)

    def __pow__(self, n: int) -> "PuiseuxSeries":
        if not isinstance(n, int) or n < 0:
            raise SeriesError("series powers must be nonnegative integers (use invert)")
        out = PuiseuxSeries.one(self.order, self.domain)
        for _ in range(n):
            out = out * self
        return out

    def invert(self) -> "PuiseuxSeries":
        """Multiplicative inverse; requires a nonzero leading coefficient."""
        lead = self.lead()
        if lead is None:
            raise NonInvertibleError("cannot invert a series with no nonzero retained term")
        D = self.ramification
        i0 = int(lead * D) - self.offset
        a0 = self.coeffs[i0]
        # a = a0 q^lead (1 + u); b = a^{-1} known modulo order - 2*lead
        order = self.order - 2 * lead
        off = -(self.offset + i0)
        n = _slot_count(order, D, off)
        inv_a0 = (1 / a0) if self.domain == EXACT else (1.0 / a0)
        tail = [(k - i0, c) for k, c in enumerate(self.coeffs)
                if k > i0 and c != 0]
        b = [_zero_of(self.domain)] * n
        if n > 0:
            b[0] = inv_a0
        for m in range(1, n):
            s = _zero_of(self.domain)
            for k, c in tail:
                if k > m:
                    break
                s += c * b[m - k]
            if s != 0:
                b[m] = -inv_a0 * s
        return PuiseuxSeries(D, off, tuple(b), order, self.domain)

    def q_d_dq(self) -> "PuiseuxSeries":
        """The derivation q d/dq, i.e. (2 pi i)^{-1} d/dtau: c q^e -> c e q^e."""
        if self.domain == EXACT:
            cs = tuple(c * self.exponent(i) for i, c in enumerate(self.coeffs))
        else:
            cs = tuple(c * float(self.exponent(i)) for i, c in enumerate(self.coeffs))
        return PuiseuxSeries(self.ramification, self.offset, cs, self.order, self.domain)

    def rescale(self, r: RationalLike) -> "PuiseuxSeries":
        """Exponent map q^e -> q^{re}, realizing tau -> r*tau; order becomes r*order."""
        r = _as_fraction(r)
        if r <= 0:
            raise SeriesError("rescale factor must be positive")
        step = Fraction(r.numerator, r.denominator * self.ramification)
        D = step.denominator
        p = step.numerator
        off = self.offset * p
        order = r * self.order
        n = _slot_count(order, D, off)
        cs = [_zero_of(self.domain)] * n
        for i, c in enumerate(self.coeffs):
            j = i * p
            if j < n:
                cs[j] = c
        return PuiseuxSeries(D, off, tuple(cs), order, self.domain)

    def shift_tau(self, s: RationalLike) -> "PuiseuxSeries":
        """tau -> tau + s: multiplies c q^e by e^{2 pi i e s} termwise."""
        s = _as_fraction(s)
        if s == 0:
            return self
        if self.domain == EXACT:
            cs = list(self.coeffs)
            for i, c in enumerate(self.coeffs):
                if c == 0:
                    continue
                phase = (self.exponent(i) * s) % 1
                if phase == 0:
                    continue
                if phase == Fraction(1, 2):
                    cs[i] = -c
                else:
                    raise DomainPromotionRequired(
                        f"multiplier e^(2 pi i {phase}) is irrational; promote to complex first")
            return PuiseuxSeries(self.ramification, self.offset, tuple(cs),
                                 self.order, EXACT)
        cs = tuple(c * cmath.exp(2j * math.pi * float(self.exponent(i) * s))
                   for i, c in enumerate(self.coeffs))
        return PuiseuxSeries(self.ramification, self.offset, cs, self.order, COMPLEX)

    def shifted(self, delta: RationalLike) -> "PuiseuxSeries":
        """Multiply by the monomial q^delta (exponent translation)."""
        delta = _as_fraction(delta)
        D = lcm(self.ramification, delta.denominator)
        k = D // self.ramification
        off = self.offset * k + int(delta * D)
        order = self.order + delta
        cs = [_zero_of(self.domain)] * _slot_count(order, D, off)
        for i, c in enumerate(self.coeffs):
            cs[i * k] = c
        return PuiseuxSeries(D, off, tuple(cs), order, self.domain)

    def truncate(self, order: RationalLike) -> "PuiseuxSeries":
        order = min(_as_fraction(order), self.order)
        n = _slot_count(order, self.ramification, self.offset)
        return PuiseuxSeries(self.ramification, self.offset, self.coeffs[:n],
                             order, self.domain)

    # -- comparison --------------------------------------------------------

    def first_mismatch(self, other: "PuiseuxSeries"):
        """First (exponent, self-coeff, other-coeff) differing below min(order), else None."""
        m = min(self.order, other.order)
        a, b = self.truncate(m), other.truncate(m)
        exps = sorted(set(e for e, _ in a.terms()) | set(e for e, _ in b.terms()))
        for e in exps:
            ca, cb = a.coefficient_at(e), b.coefficient_at(e)
            if ca != cb:
                return e, ca, cb
        return None

    def equals(self, other: "PuiseuxSeries") -> bool:
        """Coefficient-wise equality up to min(order), tolerant of grid differences."""
        self._require_same_domain(other)
        return self.first_mismatch(other) is None

    # -- evaluation --------------------------------------------------------

    def evaluate(self, tau: complex) -> EvalResult:
        """Numeric value at q = e^{2 pi i tau} plus a geometric tail estimate.

        The convergence ratio rho uses the effective spacing of the nonzero
        support (e.g. 1 for eta, whose exponents are 1/24 + integers), not the
        raw 1/D grid, so sparse theta-type series evaluate wherever they
        actually converge.
        """
        tau = complex(tau)
        if tau.imag <= 0:
            raise NotInUpperHalfPlane(f"Im(tau) = {tau.imag} is not positive")
        step = float(self.support_step())
        rho = math.exp(-2 * math.pi * tau.imag * step)
        if rho >= 0.9:
            raise InsufficientConvergence(
                f"|q|^step = {rho:.4f} >= 0.9 at tau = {tau}")
        value = 0j
        mags = []
        last_mag = 0.0
        for e, c in self.terms():
            term = c * cmath.exp(2j * math.pi * tau * float(e))
            value += term
            last_mag = abs(term)
            mags.append(last_mag)
        tail = last_mag * rho / (1.0 - rho)
        recent = mags[-5:]
        reliable = all(x >= y for x, y in zip(recent, recent[1:]))
        return EvalResult(value, tail, reliable)

    # -- serialization -----------------------------------------------------

    def to_json_dict(self) -> dict:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if self.domain == EXACT:
                coeff = {"num": c.numerator, "den": c.denominator}
            else:
                coeff = {"re": c.real, "im": c.imag}
            terms.append({"i": i, "coeff": coeff})
        return {
            "ramification": self.ramification,
            "offset": self.offset,
            "order": {"num": self.order.numerator, "den": self.order.denominator},
            "domain": self.domain,
            "terms": terms,
        }

    @staticmethod
    def from_json_dict(d: dict) -> "PuiseuxSeries":
        order = Fraction(d["order"]["num"], d["order"]["den"])
        domain = d["domain"]
        D, off = d["ramification"], d["offset"]
        cs = [_zero_of(domain)] * _slot_count(order, D, off)
        for t in d["terms"]:
            c = t["coeff"]
            cs[t["i"]] = Fraction(c["num"], c["den"]) if domain == EXACT else complex(c["re"], c["im"])
        return PuiseuxSeries(D, off, tuple(cs), order, domain)

    def __str__(self):
        parts = [f"{c}*q^({e})" for e, c in self.terms()]
        body = " + ".join(parts) if parts else "0"
        return f"{body} + O(q^({self.order}))"

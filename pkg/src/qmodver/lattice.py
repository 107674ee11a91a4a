"""Supertrace characters of the rank-1 lattice VOSA with shifted conformal
vector (central charge -2) and its sigma-twisted module: the four sectors
(1,1), (1,sigma), (sigma,sigma), (sigma,1), built both from the lattice sum
and from the eta/theta closed forms."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .modgroup import SectorPair
from .series import PuiseuxSeries
from .specfun import dedekind_eta, jacobi_theta, partition_gf

CENTRAL_CHARGE = Fraction(-2)
PREFACTOR_EXP = Fraction(1, 12)  # q^{-c/24} with c = -2

# sector -> (alternating sign (-1)^s, twisted exponent grid, matching theta index)
_SECTORS = {
    (0, 0): (True, False, 1),   # (1, 1)
    (0, 1): (False, False, 2),  # (1, sigma)
    (1, 1): (False, True, 3),   # (sigma, sigma)
    (1, 0): (True, True, 4),    # (sigma, 1)
}


def _sector_key(sector: SectorPair) -> tuple[int, int]:
    if sector.n != 2:
        raise ValueError("the lattice example has sectors over Z_2 only")
    return (sector.i, sector.j)


def all_sectors() -> list[SectorPair]:
    return [SectorPair(2, i, j) for (i, j) in _SECTORS]


@dataclass(frozen=True)
class CharacterData:
    sector: SectorPair
    central_charge: Fraction
    series: PuiseuxSeries


def _lattice_exponent(s: int, twisted: bool) -> Fraction:
    if twisted:
        # (s + 1/2)(s - 1/2)/2 = (4 s^2 - 1)/8
        return Fraction(4 * s * s - 1, 8)
    return Fraction(s * (s - 1), 2)


def lattice_sum(sector: SectorPair, order) -> PuiseuxSeries:
    """Bilateral sum over lattice points: sign^s q^{exponent(s)} truncated at order."""
    alternating, twisted, _ = _SECTORS[_sector_key(sector)]
    order = Fraction(order)
    N = math.isqrt(max(0, math.ceil(2 * order))) + 3
    terms = []
    for s in range(-N, N + 1):
        e = _lattice_exponent(s, twisted)
        if e >= order:
            continue
        c = Fraction(-1 if (alternating and s % 2) else 1)
        terms.append((e, c))
    return PuiseuxSeries.from_terms(terms, order, ramification=8 if twisted else 2)


def character(sector: SectorPair, order) -> CharacterData:
    """q^{1/12} * (sum P(n) q^n) * lattice_sum(sector), exact, truncated at order."""
    order = Fraction(order)
    inner = order + 1
    series = (partition_gf(inner) * lattice_sum(sector, inner))
    series = series.shifted(PREFACTOR_EXP).truncate(order)
    return CharacterData(sector, CENTRAL_CHARGE, series)


def eta_theta_form(sector: SectorPair, order) -> PuiseuxSeries:
    """The closed form eta(tau)^{-1} theta_i(q) matched to the sector."""
    _, _, theta_index = _SECTORS[_sector_key(sector)]
    order = Fraction(order)
    inner = order + 1
    return (dedekind_eta(inner).invert() * jacobi_theta(theta_index, inner)).truncate(order)


def _partition_counts(n_max: int) -> list[int]:
    # coin-counting DP, independent of the series machinery
    p = [1] + [0] * n_max
    for part in range(1, n_max + 1):
        for n in range(part, n_max + 1):
            p[n] += p[n - part]
    return p


def l0_inserted_trace(sector: SectorPair, order) -> PuiseuxSeries:
    """Trace with an (L(0) - c/24) insertion, built termwise from the state count.

    Each oscillator/lattice state of total exponent e contributes sign * e * q^e,
    so this must agree with q d/dq of the character; the construction here never
    calls q_d_dq (independent cross-check).
    """
    alternating, twisted, _ = _SECTORS[_sector_key(sector)]
    order = Fraction(order)
    n_max = math.ceil(order - PREFACTOR_EXP + (Fraction(1, 8) if twisted else 0)) + 1
    counts = _partition_counts(max(0, n_max))
    N = math.isqrt(max(0, math.ceil(2 * order))) + 3
    terms = []
    for s in range(-N, N + 1):
        es = _lattice_exponent(s, twisted)
        sign = -1 if (alternating and s % 2) else 1
        for n in range(0, n_max + 1):
            e = PREFACTOR_EXP + n + es
            if e >= order:
                break
            terms.append((e, Fraction(sign * counts[n]) * e))
    return PuiseuxSeries.from_terms(terms, order, ramification=24)

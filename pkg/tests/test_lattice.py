from fractions import Fraction as F

import pytest

from qmodver.lattice import (CENTRAL_CHARGE, all_sectors, character,
                             eta_theta_form, l0_inserted_trace, lattice_sum)
from qmodver.modgroup import SectorPair

UNTWISTED_ALT = SectorPair(2, 0, 0)   # (1, 1)
UNTWISTED = SectorPair(2, 0, 1)       # (1, sigma)
TWISTED = SectorPair(2, 1, 1)         # (sigma, sigma)
TWISTED_ALT = SectorPair(2, 1, 0)     # (sigma, 1)


class TestLatticeSum:
    def test_untwisted_alternating_vanishes(self):
        assert lattice_sum(UNTWISTED_ALT, 30).is_zero()

    def test_untwisted_constant_term(self):
        assert lattice_sum(UNTWISTED, 10).coefficient_at(0) == 2

    def test_twisted_leading_term(self):
        s = lattice_sum(TWISTED, 10)
        assert s.lead() == F(-1, 8)
        # only s = 0 sits at the minimum of (4s^2 - 1)/8
        assert s.coefficient_at(F(-1, 8)) == 1
        assert s.coefficient_at(F(3, 8)) == 2

    def test_brute_force_exponent_multiplicities(self):
        s = lattice_sum(UNTWISTED, 20)
        for e, c in s.terms():
            n = sum(1 for k in range(-30, 31) if F(k * (k - 1), 2) == e)
            assert c == n


class TestCharacter:
    def test_vanishing_sector(self):
        assert character(UNTWISTED_ALT, 30).series.is_zero()

    def test_leading_terms(self):
        c = character(UNTWISTED, 10).series
        assert c.lead() == F(1, 12) and c.coefficient_at(F(1, 12)) == 2
        c = character(TWISTED, 10).series
        assert c.lead() == F(-1, 24) and c.coefficient_at(F(-1, 24)) == 1

    def test_central_charge(self):
        assert character(UNTWISTED, 5).central_charge == CENTRAL_CHARGE == -2

    def test_integrality(self):
        for sector in all_sectors():
            for _, c in character(sector, 25).series.terms():
                assert c.denominator == 1

    def test_exponent_supports(self):
        for e, _ in character(UNTWISTED, 25).series.terms():
            assert (e - F(1, 12)).denominator == 1
        for sector in (TWISTED, TWISTED_ALT):
            for e, _ in character(sector, 25).series.terms():
                shifted = e + F(1, 24)
                assert (2 * shifted).denominator == 1

    def test_rejects_wrong_group(self):
        with pytest.raises(ValueError):
            character(SectorPair(3, 1, 0), 5)


class TestEtaThetaForm:
    def test_vanishing_sector(self):
        assert eta_theta_form(UNTWISTED_ALT, 30).is_zero()

    def test_leading_term(self):
        s = eta_theta_form(UNTWISTED, 10)
        assert s.lead() == F(1, 12) and s.coefficient_at(F(1, 12)) == 2

    def test_alternating_pattern(self):
        s = eta_theta_form(TWISTED_ALT, 5)
        # hand-expanded P(n) series times theta4: signs alternate in half-steps
        assert s.coefficient_at(F(-1, 24)) == 1
        assert s.coefficient_at(F(-1, 24) + F(1, 2)) == -2
        assert s.coefficient_at(F(-1, 24) + F(3, 2)) == -2
        assert s.coefficient_at(F(-1, 24) + 2) == 2 * 1 + 1 * 2  # P(2) + 2 P(0)

    def test_matches_character_all_sectors(self):
        for sector in all_sectors():
            assert character(sector, 30).series.equals(eta_theta_form(sector, 30))


class TestL0InsertedTrace:
    def test_vanishing_sector(self):
        assert l0_inserted_trace(UNTWISTED_ALT, 20).is_zero()

    def test_leading_term(self):
        s = l0_inserted_trace(UNTWISTED, 10)
        assert s.coefficient_at(F(1, 12)) == F(2, 12)

    def test_matches_derivative_of_character(self):
        for sector in all_sectors():
            lhs = l0_inserted_trace(sector, 20)
            rhs = character(sector, 20).series.q_d_dq()
            assert lhs.equals(rhs)

# Versch Forge - Verschiebung Equations Toolkit
# Copyright (C) 2025 Versch Forge Project
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU Affero General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU Affero General Public License for more details.
#
# You should have received a copy of the GNU Affero General Public License
# along with this program.  If not, see <https://www.gnu.org/licenses/>.

from fractions import Fraction

import pytest

from geometry.degen import (
    FamilyParams,
    balance_valuations,
    bracket_valuations,
    build_Rij,
    displayed_Rij,
    elliptic_curve_check,
    elliptic_data,
    family_coeffs,
    leading_map,
    reduce_quadrics,
    specialize,
    valuation_table,
)
from geometry.errors import WindowExhausted, ZeroLambda
from geometry.gf import GF
from utils.reporting import make_rng


def test_elliptic_data_checks():
    data = elliptic_data()
    assert data.checks
    assert all(data.checks.values()), data.checks


def test_elliptic_curve_substitution():
    checks = elliptic_curve_check()
    assert checks == {
        "substitution_matches": True,
        "two_torsion_on_curve": True,
        "two_torsion_vertical": True,
    }


def test_family_params_validation(gf64):
    with pytest.raises(ZeroLambda):
        FamilyParams(gf64, 0, 1)
    with pytest.raises(ValueError):
        FamilyParams(gf64, 1, 0, nu=-2)
    assert FamilyParams(gf64, 1, 0, nu=8).materializable()
    assert not FamilyParams(gf64, 1, 0, nu=6).materializable()
    assert not FamilyParams(gf64, 1, 0).materializable()


def test_bracket_valuations():
    assert bracket_valuations() == (12, 8)


def test_valuation_table_symbols(gf64):
    table, out = valuation_table(FamilyParams(gf64, 2, 0, nu=4))
    assert table["R00"].coef == Fraction(-5, 2)
    assert table["R01"].coef == Fraction(-3, 2)
    assert out["at_nu"]["R00"] == "2"
    assert out["at_nu"]["R01"] == "2"
    assert out["a"] == "-3*nu"


def test_family_coeffs_symbolic_only(gf64):
    coeffs = family_coeffs(FamilyParams(gf64, 2, 0, nu=Fraction(5, 2)))
    assert coeffs.series == {}
    with pytest.raises(WindowExhausted):
        build_Rij(FamilyParams(gf64, 2, 0, nu=6))


def test_family_coeffs_series(gf64):
    coeffs = family_coeffs(FamilyParams(gf64, 2, 0, nu=4))
    s = coeffs.series
    assert s["c"].val() == 4
    assert s["sqrt_a"].val() == -6
    assert (s["sqrt_b"] * s["sqrt_b"]).agrees_with(s["b"])


def test_balance_valuations(gf64):
    assert balance_valuations(FamilyParams(gf64, 2, 0)) == 4


def test_reduced_valuations_agree(gf64):
    reduced = reduce_quadrics(build_Rij(FamilyParams(gf64, 2, 0, nu=4)))
    assert [r.valuation for r in reduced] == [2, 2, 2, 2]


def test_displayed_Rij_match(gf64):
    params = FamilyParams(gf64, 2, 0, nu=4)
    built = build_Rij(params)
    shown = displayed_Rij(params)
    for a, b in zip(built, shown):
        assert a.agrees_with(b)


def test_leading_map_certificate(gf64):
    result = leading_map(FamilyParams(gf64, 2, 0))
    assert result.nu == 4
    assert len(result.quadrics) == 4
    assert result.valuations == [2, 2, 2, 2]
    for i, row in enumerate(result.certificate):
        assert row[i] != 0
        assert all(c == 0 for c in row[i + 1:])
    assert result.rmap.degree == 2


def test_specialize_record(gf64):
    record = specialize(gf64, 2, 0)
    assert record["nu"] == "4"
    assert record["valuation_table"]["at_nu"]["R00"] == "2"
    assert len(record["leading_quadrics"]) == 4
    assert len(record["span_certificate"]) == 4


def test_specialize_zero_lambda(gf64):
    with pytest.raises(ZeroLambda):
        specialize(gf64, 0, 1)


@pytest.mark.slow
def test_specialize_random_parameters():
    field = GF(2, 6)
    rng = make_rng(11)
    for _ in range(20):
        lam = field.random_nonzero(rng)
        mu = field.random_element(rng)
        result = leading_map(FamilyParams(field, lam, mu))
        assert result.nu == 4
        assert all(row[i] for i, row in enumerate(result.certificate))

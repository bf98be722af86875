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

import pytest

from geometry.errors import ArityMismatch, DegreeMismatch, ZeroCoefficient
from geometry.forms import PointP3, SparseForm, Z_NAMES
from geometry.genus2 import curve_new, frobenius_twist, random_curve
from geometry.gf import GF
from geometry.theta_kummer import kummer_quartic
from geometry.versch import (
    E_BAD,
    RationalMapP3,
    base_locus,
    conic_points,
    degree_structure,
    eval_map,
    fiber_census,
    hw1_contracted_conic,
    hw1_map,
    image_table,
    ordinary_map,
    pullback_kummer,
    quadrics_Q,
    twist_oracle,
)
from utils.reporting import make_rng


def _random_lambdas(field, rng):
    return tuple(field.random_nonzero(rng) for _ in range(4))


def test_hw1_forms(gf16):
    rmap = hw1_map(gf16)
    assert [f.to_text() for f in rmap.forms] == [
        "z00^2+z01^2",
        "z00*z11+z01*z10",
        "z00^2+z01^2+z10^2+z11^2",
        "z00*z01",
    ]
    assert rmap.degree == 2


def test_map_validation(gf16):
    with pytest.raises(ZeroCoefficient):
        hw1_map(gf16, (1, 0, 1, 1))
    with pytest.raises(ArityMismatch):
        hw1_map(gf16, (1, 1, 1))
    zero = SparseForm.zero(gf16)
    with pytest.raises(DegreeMismatch):
        RationalMapP3(gf16, (zero, zero, zero, zero))


def test_first_quadric_vanishes_on_plane(gf64):
    z00, _, z10, z11 = SparseForm.variables(gf64, 4, names=Z_NAMES)
    assert quadrics_Q(gf64)[0].substitute([z00, z00, z10, z11]).is_zero()


def test_bad_point_is_a_base_point(gf16, rng):
    point = PointP3(gf16, E_BAD)
    for _ in range(10):
        rmap = hw1_map(gf16, _random_lambdas(gf16, rng))
        assert eval_map(rmap, point) is None
        assert point in base_locus(rmap)


def test_base_loci(gf16, rng):
    assert base_locus(ordinary_map(random_curve(gf16, rng))) == [PointP3(gf16, (1, 1, 1, 1))]
    assert base_locus(hw1_map(gf16)) == [PointP3(gf16, E_BAD)]


def test_degree_structure(gf16, rng):
    maps = [ordinary_map(random_curve(gf16, rng)), hw1_map(gf16)]
    result = degree_structure(maps, 2)
    assert result["ok"]
    assert result["degrees"] == {"ordinary": [2], "hw1": [2]}


def test_image_table_accounts_for_every_point(gf2):
    table = image_table(hw1_map(gf2))
    assert table.images.size == 15
    for index in range(15):
        image = table.image_of(index)
        source = table.point(index)
        assert image == eval_map(table.map, source)


def test_contracted_conic_points(gf16, rng):
    lambdas = _random_lambdas(gf16, rng)
    conic = hw1_contracted_conic(gf16, lambdas)
    points = conic_points(gf16, lambdas)
    assert len(points) == gf16.q + 1
    assert all(p.coords[0] == 0 and conic.eval(p) == 0 for p in points)


def test_census_special_loci(gf16):
    result = fiber_census(hw1_map(gf16), samples=30, rng=make_rng(3), seed=3)
    assert result.checks["off_conic_empty"]
    assert result.checks["on_conic_lines"]
    assert sum(result.histogram["generic"].values()) == 30
    assert sum(result.histogram["on-conic"].values()) == gf16.q + 1


def test_census_is_thread_independent(gf16):
    one = fiber_census(hw1_map(gf16), samples=20, rng=make_rng(5), seed=5, threads=1, chunk=512)
    three = fiber_census(hw1_map(gf16), samples=20, rng=make_rng(5), seed=5, threads=3, chunk=512)
    assert one.to_dict() == three.to_dict()


def test_pullback_of_kummer(gf16, rng):
    curve = random_curve(gf16, rng)
    pulled = pullback_kummer(ordinary_map(curve), kummer_quartic(curve).quartic)
    assert pulled.homogeneous_degree() == 8
    assert pulled.exact_divide(kummer_quartic(frobenius_twist(curve)).quartic) is not None


def test_twist_oracle_prefers_frobenius(gf16, rng):
    curves = [random_curve(gf16, rng) for _ in range(3)]
    result = twist_oracle(curves)
    assert result["winner"] == "frobenius"
    assert result["divides"]["frobenius"] == 3


def test_twist_oracle_needs_a_nontrivial_twist(gf2):
    # over GF(2) every curve is its own Frobenius twist
    result = twist_oracle([curve_new(gf2, 1, 1, 1)])
    assert result["winner"] is None
    assert result["divides"]["identity"] == result["divides"]["frobenius"]


@pytest.mark.slow
def test_census_acceptance():
    field = GF(2, 8)
    result = fiber_census(hw1_map(field), samples=200, rng=make_rng(0), seed=0, threads=4)
    assert result.checks["generic_fraction_ok"]
    assert result.checks["off_conic_empty"]
    assert result.checks["on_conic_lines"]
    assert not result.violations


@pytest.mark.slow
def test_twist_oracle_stable_across_fields():
    winners = set()
    for n in (6, 8):
        field = GF(2, n)
        rng = make_rng(n)
        winners.add(twist_oracle([random_curve(field, rng) for _ in range(10)])["winner"])
    assert winners == {"frobenius"}


def test_eval_map_is_homogeneous(gf16, rng):
    rmap = hw1_map(gf16, _random_lambdas(gf16, rng))
    checked = 0
    while checked < 20:
        x = [gf16.random_element(rng) for _ in range(4)]
        if not any(x):
            continue
        lam = gf16.random_nonzero(rng)
        scaled = [gf16.mul(lam, c) for c in x]
        for form in rmap.forms:
            assert form.eval(scaled) == gf16.mul(gf16.pow(lam, 2), form.eval(x))
        assert eval_map(rmap, scaled) == eval_map(rmap, x)
        checked += 1

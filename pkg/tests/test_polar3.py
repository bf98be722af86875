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

from geometry.errors import ConfigViolation, WrongCharacteristic
from geometry.forms import PointP3, SparseForm
from geometry.gf import GF
from geometry.polar3 import (
    BEZOUT,
    EXPECTED_DEGREE,
    NODE_COUNT,
    HeisQuartic,
    certify_kummer,
    degree_count,
    find_kummer,
    heis_basis,
    hessian_rank,
    image_tropes,
    is_double_conic,
    kummer_from_params,
    kummer_image_check,
    minor_system,
    polar_map,
    recover_image_kummer,
    sample_target,
    seeded_params,
    singular_points,
    surjectivity_check,
    trope_cubic,
    tropes_and_config,
)
from geometry.versch import base_locus
from utils.reporting import make_rng

SWAP = [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]


def test_heis_basis(gf9):
    basis = heis_basis(gf9)
    assert len(basis) == 5
    assert all(form.homogeneous_degree() == 4 for form in basis)


def test_heis_quartic_validation(gf9, gf16):
    with pytest.raises(WrongCharacteristic):
        HeisQuartic(gf16, (1, 0, 0, 0, 0))
    with pytest.raises(ValueError):
        HeisQuartic(gf9, (1, 0, 0, 0))
    with pytest.raises(ValueError):
        HeisQuartic(gf9, (0, 0, 0, 0, 0))
    heis = HeisQuartic.parse("1,2,0,0,1", gf9)
    assert heis.to_dict() == {"A": 1, "B": 2, "C": 0, "D": 0, "E": 1}


def test_heis_quartic_symmetric_under_translation(gf9):
    quartic = HeisQuartic(gf9, (1, 2, 3, 4, 5)).quartic
    assert quartic.linear_change(SWAP) == quartic


def test_fermat_quartic_is_smooth(gf9):
    fermat = HeisQuartic(gf9, (1, 0, 0, 0, 0))
    assert certify_kummer(fermat) is None
    with pytest.raises(ConfigViolation):
        kummer_from_params(gf9, (1, 0, 0, 0, 0))


def test_find_kummer_needs_char_3(gf16):
    with pytest.raises(WrongCharacteristic):
        find_kummer(gf16, budget=1)


def test_seeded_quartics_are_singular(gf9):
    rng = make_rng(4)
    seen = 0
    for _ in range(10):
        params = seeded_params(gf9, rng)
        if params is None:
            continue
        seen += 1
        assert singular_points(HeisQuartic(gf9, params).quartic)
    assert seen


def test_double_conic(gf9):
    x00, x01, x10, x11 = SparseForm.variables(gf9, 4)
    conic = x00 * x00 + x01 * x01 + x10 * x11
    assert is_double_conic(conic * conic, (0, 0, 0, 1))
    assert is_double_conic((conic * conic).scale(2), (1, 0, 0, 1))
    fermat = HeisQuartic(gf9, (1, 0, 0, 0, 0)).quartic
    assert not is_double_conic(fermat, (0, 0, 0, 1))


def test_minor_system(gf9):
    V = SparseForm.variables(gf9, 4)
    target = PointP3.of(gf9, (0, 1, 2, 0))
    system = minor_system(V, target)
    assert len(system) == 3
    on_line = PointP3.of(gf9, (0, 1, 2, 0))
    assert all(g.eval(on_line) == 0 for g in system)
    off_line = PointP3.of(gf9, (1, 1, 2, 0))
    assert any(g.eval(off_line) for g in system)


def test_euler_identity_returns_the_quartic(gf9):
    # degree 4 is 1 mod 3, so nodes of Q lie on Q
    quartic = HeisQuartic(gf9, (1, 2, 0, 1, 2)).quartic
    xs = SparseForm.variables(gf9, 4)
    euler = SparseForm.zero(gf9, 4)
    for i, x in enumerate(xs):
        euler = euler + x * quartic.partial(i)
    assert euler == quartic


@pytest.fixture(scope="module")
def kummer():
    return find_kummer(GF(3, 2), rng=make_rng(1))


@pytest.mark.slow
def test_kummer_nodes(kummer):
    assert len(kummer.nodes) == NODE_COUNT
    assert all(hessian_rank(kummer.quartic, n) == 3 for n in kummer.nodes)


@pytest.mark.slow
def test_polar_map_base_locus_is_nodes(kummer):
    locus = base_locus(polar_map(kummer))
    assert sorted(p.coords for p in locus) == sorted(n.coords for n in kummer.nodes)


@pytest.mark.slow
def test_sixteen_six_configuration(kummer):
    certificate = tropes_and_config(kummer)
    assert certificate["config_ok"]
    assert certificate["incidences"] == 96


@pytest.mark.slow
def test_image_kummer(image):
    assert image.identity_ok
    assert image.c != 0
    assert image.K_X1_nodes == NODE_COUNT


@pytest.mark.slow
def test_degree_count(kummer):
    rng = make_rng(2)
    _, target = sample_target(kummer, rng, kummer.tropes)
    count = degree_count(kummer, target, rng=rng)
    assert count.node_solutions == NODE_COUNT
    assert count.fiber_solutions <= EXPECTED_DEGREE
    if count.resolved:
        assert count.node_solutions + count.fiber_solutions == BEZOUT
    else:
        assert count.skipped_degrees


@pytest.fixture(scope="module")
def image(kummer):
    return recover_image_kummer(kummer)


@pytest.mark.slow
def test_image_points_land_on_target_kummer(kummer, image):
    check = kummer_image_check(kummer, image, samples=100, rng=make_rng(3))
    assert check["ok"], check["failures"]


@pytest.mark.slow
def test_trope_cubic_pairs_with_a_node(kummer, image):
    tropes = image_tropes(kummer, image)
    assert tropes
    result = trope_cubic(kummer, image, 0, tropes)
    assert result["degree"] == 3
    assert tuple(result["paired_node"]) in {n.coords for n in kummer.nodes}
    assert result["gradient_at_node"] == [0, 0, 0, 0]
    with pytest.raises(IndexError):
        trope_cubic(kummer, image, len(tropes), tropes)


@pytest.mark.slow
def test_polar_map_reaches_sampled_targets(kummer):
    rng = make_rng(6)
    targets = [sample_target(kummer, rng, kummer.tropes)[1] for _ in range(2)]
    assert surjectivity_check(kummer, targets, rng=rng)["ok"]


@pytest.mark.slow
def test_image_identity_survives_target_change(kummer, image):
    field = kummer.field
    rng = make_rng(5)
    d = [field.random_nonzero(rng) for _ in range(4)]
    change = [[field.mul(d[i], SWAP[i][j]) for j in range(4)] for i in range(4)]
    undo = [[field.mul(SWAP[i][j], field.inv(d[j])) for j in range(4)] for i in range(4)]
    V = polar_map(kummer).forms
    moved = []
    for row in change:
        form = SparseForm.zero(field, 4, names=V[0].names)
        for c, v in zip(row, V):
            form = form + v.scale(c)
        moved.append(form)
    Q = kummer.quartic
    moved_K = image.K_X.linear_change(undo)
    assert moved_K.substitute(moved) == (image.K_X1 * Q * Q).scale(image.c)

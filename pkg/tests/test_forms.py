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

from geometry.errors import ArityMismatch, DegreeMismatch, DivideByZero, FieldMismatch
from geometry.forms import (
    PointP3,
    SparseForm,
    eliminate,
    express_in_span,
    is_collinear,
    monomials,
    parse_form,
    rank,
    resultant,
)
from geometry.gf import GF
from geometry.versch import quadrics_Q


def test_canonical_text(gf16):
    f = parse_form("3*x10 + x01*x00^2", gf16)
    assert f.to_text() == "x00^2*x01+3*x10"
    assert parse_form(f.to_text(), gf16) == f
    assert parse_form("0", gf16).to_text() == "0"


def test_monomials():
    assert len(monomials(4, 2)) == 10
    assert len(monomials(4, 4)) == 35
    assert monomials(2, 2)[0] == (2, 0)


def test_declared_degree_is_enforced(gf16):
    with pytest.raises(DegreeMismatch):
        SparseForm(gf16, 4, {(2, 0, 0, 0): 1, (1, 0, 0, 0): 1}, degree=2)
    with pytest.raises(ArityMismatch):
        SparseForm(gf16, 4, {(1, 0, 0): 1})


def test_freshman_dream(gf16):
    x00, x01, _, _ = SparseForm.variables(gf16)
    assert (x00 + x01) ** 2 == x00 * x00 + x01 * x01


def test_mixed_fields_rejected(gf16, gf256):
    with pytest.raises(FieldMismatch):
        SparseForm.variable(gf16, 4, 0) + SparseForm.variable(gf256, 4, 0)


def test_partials_reduce_mod_p(gf9):
    x00, x01, _, _ = SparseForm.variables(gf9)
    assert (x00 ** 3).partial(0).is_zero()
    assert (x00 ** 2 * x01).partial(0) == (x00 * x01).scale(2)
    with pytest.raises(ArityMismatch):
        x00.partial(4)


def test_eval_matches_eval_array(gf9, rng):
    f = parse_form("x00^4+2*x01^2*x10^2+x00*x01*x10*x11+x11^3*x10", gf9)
    points = [[gf9.random_element(rng) for _ in range(4)] for _ in range(50)]
    values = f.eval_array(gf9.array(points))
    assert [int(v) for v in values] == [f.eval(p) for p in points]


def test_substitute_and_linear_change(gf16):
    f = parse_form("x00^2*x01+x10*x11^2+5*x00*x01*x10", gf16)
    xs = SparseForm.variables(gf16)
    assert f.substitute(xs) == f
    identity = [[int(i == j) for j in range(4)] for i in range(4)]
    assert f.linear_change(identity) == f
    swap = [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    assert f.linear_change(swap).linear_change(swap) == f
    with pytest.raises(DegreeMismatch):
        f.substitute([xs[0], xs[1] * xs[1], xs[2], xs[3]])


def test_exact_divide(gf16):
    f = parse_form("x00^2+3*x01*x10", gf16)
    g = parse_form("x00+x11", gf16)
    assert (f * g).exact_divide(g) == f
    assert f.exact_divide(g) is None
    with pytest.raises(DivideByZero):
        f.exact_divide(SparseForm.zero(gf16))


def test_square_root_in_char3(gf9):
    f = parse_form("x00^2+x01*x10+2*x11^2", gf9)
    root = (f * f).sqrt()
    assert root is not None
    assert root * root == f * f
    assert parse_form("x00^2+x00*x01", gf9).sqrt() is None


def test_fix_and_dehomogenize(gf9):
    f = parse_form("x00^2+x01*x11", gf9)
    affine = f.dehomogenize(3)
    assert affine.nvars == 3
    assert affine.eval((2, 1, 0)) == f.eval((2, 1, 0, 1))


def test_points_are_normalised(gf16):
    p = PointP3.of(gf16, (0, 2, 4, 6))
    assert p.coords == (0, 1, 2, 3)
    assert PointP3.parse("(0:2:4:6)", gf16) == p
    with pytest.raises(ValueError):
        PointP3.of(gf16, (0, 0, 0, 0))


def test_collinearity(gf16):
    a = PointP3.of(gf16, (1, 0, 0, 0))
    b = PointP3.of(gf16, (0, 1, 0, 0))
    c = PointP3.of(gf16, (1, 1, 0, 0))
    d = PointP3.of(gf16, (0, 0, 1, 0))
    assert is_collinear(gf16, [a, b, c])
    assert not is_collinear(gf16, [a, b, d])


def test_resultant_eliminates_variable():
    f3 = GF(3, 1)
    f = parse_form("x00^2+x10^2+x11^2", f3)
    g = parse_form("x10+2*x01", f3)
    res = resultant(f, g, 2)
    assert not res.involves(2)
    # x10 = x01 on g = 0, so the resultant is f with x10 replaced by x01 (up to sign)
    expected = parse_form("x00^2+x01^2+x11^2", f3)
    assert res in (expected, -expected)


def test_eliminate_finds_all_solutions():
    f3 = GF(3, 1)
    system = [
        parse_form("x00^2+x10^2+x11^2", f3),
        parse_form("x10+2*x01", f3),
        parse_form("x01+2*x00", f3),
    ]
    eliminant = eliminate(system, 3)
    assert eliminant.degree == 2
    assert sorted(int(r) for r in eliminant.roots()) == [1, 2]


def test_eliminate_checks_its_input(gf9):
    x = SparseForm.variables(gf9)
    with pytest.raises(ArityMismatch):
        eliminate(x[:2], 3)
    with pytest.raises(DegreeMismatch):
        eliminate([x[0] * x[0] + x[1], x[1], x[2]], 3)


def test_span_and_rank(gf64):
    basis = quadrics_Q(gf64)
    assert rank(list(basis)) == 4
    target = basis[0] + basis[3].scale(5)
    assert express_in_span(basis, target) == [1, 0, 0, 5]
    assert express_in_span(basis, parse_form("x00*x10", gf64)) is None


def _random_form(field, rng, degree, size, nvars=4):
    exps = monomials(nvars, degree)
    picks = rng.choice(len(exps), size=min(size, len(exps)), replace=False)
    return SparseForm(field, nvars, {exps[int(i)]: field.random_nonzero(rng) for i in picks})


def _euler(f):
    xs = SparseForm.variables(f.field, f.nvars)
    total = SparseForm.zero(f.field, f.nvars)
    for i, x in enumerate(xs):
        total = total + x * f.partial(i)
    return total


@pytest.mark.parametrize("spec,degree", [("2^4", 3), ("2^4", 4), ("3^2", 4), ("3^2", 5), ("3^2", 3)])
def test_euler_identity(spec, degree, rng):
    field = GF(*map(int, spec.split("^")))
    for _ in range(5):
        f = _random_form(field, rng, degree, 8)
        assert _euler(f) == f.scale(field.scalar(degree))


def test_substitute_is_functorial(gf16, rng):
    for _ in range(5):
        f = _random_form(gf16, rng, 3, 6)
        g = [_random_form(gf16, rng, 1, 3) for _ in range(4)]
        h = [_random_form(gf16, rng, 2, 4) for _ in range(4)]
        composed = [gi.substitute(h) for gi in g]
        assert f.substitute(g).substitute(h) == f.substitute(composed)
        assert f.substitute(composed).homogeneous_degree() in (None, 6)


def test_substitute_commutes_with_eval(gf16, rng):
    for _ in range(20):
        f = _random_form(gf16, rng, 3, 6)
        g = [_random_form(gf16, rng, 2, 4) for _ in range(4)]
        x = [gf16.random_element(rng) for _ in range(4)]
        assert f.substitute(g).eval(x) == f.eval([gi.eval(x) for gi in g])


def test_eval_is_homogeneous(gf9, rng):
    f = _random_form(gf9, rng, 4, 10)
    for _ in range(20):
        x = [gf9.random_element(rng) for _ in range(4)]
        lam = gf9.random_nonzero(rng)
        scaled = [gf9.mul(lam, c) for c in x]
        assert f.eval(scaled) == gf9.mul(gf9.pow(lam, 4), f.eval(x))


def test_exact_divide_roundtrip(gf16, rng):
    for _ in range(1000):
        q = _random_form(gf16, rng, int(rng.integers(0, 3)), 4)
        g = _random_form(gf16, rng, int(rng.integers(0, 3)), 3)
        assert (q * g).exact_divide(g) == q

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

import itertools

import pytest

from geometry.errors import FieldMismatch, RejectsReducibleModulus, WrongCharacteristic
from geometry.gf import GF, FieldSpec, extension, field_new, subfield_embed


def test_field_spec_parse_and_format():
    assert field_new("2^4/0x13").spec.format() == "2^4/0x13"
    assert field_new("2^4/19").spec.format() == "2^4/0x13"
    assert field_new("3^2").spec.format().startswith("3^2/")
    assert FieldSpec.parse(" 2 ^ 8 ").n == 8


def test_default_moduli_are_conway():
    assert GF(2, 4).spec.modulus_code == 0x13
    assert GF(2, 8).spec.modulus_code == 0x11D


def test_rejects_bad_specs():
    with pytest.raises(WrongCharacteristic):
        field_new("5^2")
    with pytest.raises(RejectsReducibleModulus):
        field_new("2^4/0x15")
    with pytest.raises(ValueError):
        field_new("2-4")
    with pytest.raises(ValueError):
        field_new("2^40")


def test_fields_are_cached():
    assert field_new("2^6") is GF(2, 6)


@pytest.mark.parametrize("spec", ["2^4", "3^2", "3^1"])
def test_arithmetic_matches_galois(spec):
    f = field_new(spec)
    for a, b in itertools.product(range(f.q), repeat=2):
        ga, gb = f.GF(a), f.GF(b)
        assert f.add(a, b) == int(ga + gb)
        assert f.sub(a, b) == int(ga - gb)
        assert f.mul(a, b) == int(ga * gb)
        if b:
            assert f.div(a, b) == int(ga / gb)


def test_inverse_and_powers(gf256):
    f = gf256
    for a in range(1, f.q):
        assert f.mul(a, f.inv(a)) == 1
        assert f.pow(a, f.q - 1) == 1
    assert f.pow(0, 3) == 0
    assert f.pow(0, 0) == 1


def test_frobenius_is_additive(gf9):
    f = gf9
    for a, b in itertools.product(range(f.q), repeat=2):
        assert f.frobenius(f.add(a, b)) == f.add(f.frobenius(a), f.frobenius(b))


def test_char2_square_roots(gf256):
    f = gf256
    for a in range(f.q):
        assert f.sqrt(f.mul(a, a)) == a


def test_odd_square_roots(gf9):
    f = gf9
    squares = {f.mul(a, a) for a in range(f.q)}
    for a in range(f.q):
        root = f.square_root(a)
        if a in squares:
            assert f.mul(root, root) == a
        else:
            assert root is None
    with pytest.raises(WrongCharacteristic):
        f.sqrt(1)


def test_trace_splits_field_in_half(gf64):
    f = gf64
    traces = [f.trace(a) for a in range(f.q)]
    assert set(traces) == {0, 1}
    assert traces.count(0) == f.q // 2


def test_artin_schreier(gf64):
    f = gf64
    for mu in range(f.q):
        s = f.artin_schreier_solve(mu)
        if f.trace(mu):
            assert s is None
        else:
            assert f.add(f.mul(s, s), s) == mu


def test_embedding_is_a_homomorphism(gf16, gf256):
    embed = subfield_embed(gf16, gf256)
    for a, b in itertools.product(range(gf16.q), repeat=2):
        assert embed(gf16.add(a, b)) == gf256.add(embed(a), embed(b))
        assert embed(gf16.mul(a, b)) == gf256.mul(embed(a), embed(b))
    assert embed(1) == 1


def test_extension(gf9):
    big, embed = extension(gf9, 2)
    assert (big.p, big.n) == (3, 4)
    assert embed.small is gf9
    with pytest.raises(FieldMismatch):
        subfield_embed(GF(2, 3), GF(2, 4))


def test_element_operators(gf16):
    x = gf16(2)
    assert int(x * x.inverse()) == 1
    assert x + x == gf16(0)
    assert int(x ** 15) == 1
    with pytest.raises(ValueError):
        gf16(16)


@pytest.mark.parametrize("spec", ["2^8", "3^5"])
def test_field_axioms_on_samples(spec, rng):
    f = field_new(spec)
    add, mul = f.add, f.mul
    for a, b, c in rng.integers(0, f.q, size=(10000, 3)).tolist():
        assert add(a, b) == add(b, a)
        assert mul(a, b) == mul(b, a)
        assert add(add(a, b), c) == add(a, add(b, c))
        assert mul(mul(a, b), c) == mul(a, mul(b, c))
        assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))
        if a:
            assert mul(a, f.inv(a)) == 1


def _check_sqrt_exhaustively(f):
    for a in range(f.q):
        root = f.sqrt(a)
        assert f.mul(root, root) == a


def _check_artin_schreier_exhaustively(f):
    for mu in range(f.q):
        s = f.artin_schreier_solve(mu)
        assert (s is None) == bool(f.trace(mu))
        if s is not None:
            assert f.add(f.mul(s, s), s) == mu


@pytest.mark.parametrize("n", [1, 5, 16])
def test_char2_sqrt_is_exhaustive(n):
    _check_sqrt_exhaustively(GF(2, n))


@pytest.mark.parametrize("n", [1, 3, 10])
def test_artin_schreier_is_exhaustive(n):
    _check_artin_schreier_exhaustively(GF(2, n))


@pytest.mark.slow
def test_char2_roots_on_every_small_field():
    for n in range(1, 17):
        _check_sqrt_exhaustively(GF(2, n))
        if n <= 10:
            _check_artin_schreier_exhaustively(GF(2, n))

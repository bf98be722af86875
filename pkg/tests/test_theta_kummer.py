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

from geometry import theta_kummer
from geometry.errors import FieldMismatch, IdentityFails
from geometry.forms import SparseForm
from geometry.genus2 import S3, curve_new, random_curve, s3_act
from geometry.gf import GF
from geometry.theta_kummer import (
    ASRing,
    aj_pullback,
    as_inverse,
    as_mul,
    kummer_quartic,
    lambda_squares,
    relation_form,
    verify_batch,
    verify_pullback,
)


def _perturbed(field, lambda_sq, index):
    values = list(lambda_sq)
    values[index] = field.mul(values[index], field.primitive_element)
    return tuple(values)


def test_quartic_of_smallest_curve(gf16):
    kummer = kummer_quartic(curve_new(gf16, 1, 1, 1))
    x00, x01, x10, x11 = SparseForm.variables(gf16)
    sq = [v * v for v in (x00, x01, x10, x11)]
    expected = (
        sq[0] * sq[2] + sq[1] * sq[3]
        + sq[0] * sq[1] + sq[2] * sq[3]
        + sq[0] * sq[3] + sq[1] * sq[2]
        + x00 * x01 * x10 * x11
    )
    assert kummer.lambda_sq == (1, 1, 1)
    assert kummer.quartic == expected
    assert kummer.quartic.degree == 4


def test_lambda_squares(gf256, rng):
    curve = random_curve(gf256, rng)
    f = gf256
    l0, l1, linf = lambda_squares(curve)
    assert f.mul(l0, f.mul(curve.a, curve.b)) == 1
    assert f.mul(l1, f.mul(curve.a, curve.c)) == 1
    assert f.mul(linf, f.mul(curve.b, curve.c)) == 1


def test_quartic_is_scaled_relation(gf256, rng):
    curve = random_curve(gf256, rng)
    kummer = kummer_quartic(curve)
    abc = gf256.mul(gf256.mul(curve.a, curve.b), curve.c)
    assert relation_form(gf256, kummer.lambda_sq, kummer.lambdas).scale(abc) == kummer.quartic


def test_artin_schreier_relation(gf16):
    ring = ASRing(curve_new(gf16, 1, 1, 1))
    y1 = ring.y1()
    assert as_mul(y1, y1, ring.curve) == y1 + ring.fraction(ring.N[0], ring.h[0])
    assert y1.conjugate(1, 0) == y1 + ring.one()


def test_artin_schreier_inverse(gf16):
    ring = ASRing(curve_new(gf16, 1, 1, 1))
    s = ring.y1() + ring.y2()
    assert s * as_inverse(s) == ring.one()


def test_as_mul_rejects_other_curve(gf16):
    ring = ASRing(curve_new(gf16, 1, 1, 1))
    other = ASRing(curve_new(gf16, 1, 1, 2))
    with pytest.raises(FieldMismatch):
        as_mul(ring.y1(), other.y1(), ring.curve)


def test_relation_lemma_components(gf16):
    ring = ASRing(curve_new(gf16, 1, 1, 1))
    s = ring.y1() + ring.y2()
    a = ring.x1 * ring.x2 + ring.x1 + ring._one
    product = s * ring.poly(a)
    assert product.comps[0].is_zero()
    assert product.comps[1] == a
    assert product.comps[2] == a
    assert product.comps[3].is_zero()
    for b in (ring.zero_form(), a, ring.x2 ** 3):
        assert product != ring.poly(b)


def test_pullbacks_have_common_denominator(gf16):
    z = aj_pullback(curve_new(gf16, 1, 1, 1))
    assert len(z) == 3
    assert len({c.den.to_text() for c in z}) == 1


def test_certificate_for_smallest_curve(gf16):
    certificate = verify_pullback(curve_new(gf16, 1, 1, 1))
    assert certificate.status == "ok"
    assert certificate.cleared_identity == "0"
    assert certificate.to_dict()["lambda_sq"] == [1, 1, 1]


@pytest.mark.parametrize("n", [4, 8])
def test_certificate_for_random_curves(n, rng):
    field = GF(2, n)
    curves = [random_curve(field, rng) for _ in range(10)]
    assert all(c.status == "ok" for c in verify_batch(curves))


def test_perturbed_constants_break_identity(gf256, rng):
    curves = [random_curve(gf256, rng) for _ in range(10)]
    broken = 0
    for i, curve in enumerate(curves):
        lambda_sq = _perturbed(gf256, lambda_squares(curve), i % 3)
        if verify_pullback(curve, lambda_sq, strict=False).status == "failed":
            broken += 1
    assert broken >= 9


def test_strict_mode_raises(gf16):
    curve = curve_new(gf16, 1, 1, 1)
    with pytest.raises(IdentityFails) as info:
        verify_pullback(curve, (2, 1, 1))
    assert info.value.to_dict()["error"] == "identity_fails"


def test_batch_is_thread_independent(gf256, rng):
    curves = [random_curve(gf256, rng) for _ in range(6)]
    one = [c.to_dict() for c in verify_batch(curves, threads=1)]
    four = [c.to_dict() for c in verify_batch(curves, threads=4)]
    assert one == four


@pytest.mark.slow
@pytest.mark.parametrize("n", [4, 8, 12])
def test_certificate_acceptance(n):
    from utils.reporting import make_rng

    field = GF(2, n)
    rng = make_rng(n)
    curves = [random_curve(field, rng) for _ in range(50)]
    assert all(c.status == "ok" for c in verify_batch(curves, threads=4))
    broken = sum(
        verify_pullback(c, _perturbed(field, lambda_squares(c), i % 3), strict=False).status == "failed"
        for i, c in enumerate(curves)
    )
    assert broken >= 49


def test_cleared_pullback_is_polynomial(gf16):
    curve = curve_new(gf16, 1, 1, 1)
    z = aj_pullback(curve)
    ring = z[0].ring
    x1, x2, one = ring.x1, ring.x2, ring._one
    mm = x1 * x2 * (x1 + one) * (x2 + one)
    s = ring.y1() + ring.y2()
    clear = s * s * ring.poly(mm)
    cleared = (z[2] * clear).reduced()
    assert cleared.den == one
    assert cleared.comps[0] == (x1 + x2) ** 2
    assert all(c.is_zero() for c in cleared.comps[1:])


def test_certificate_goes_through_pullbacks(gf16, monkeypatch):
    calls = []

    def shifted(curve, lambdas=None):
        calls.append(str(curve))
        z = aj_pullback(curve, lambdas)
        return (z[0] + z[0].ring.one(), z[1], z[2])

    monkeypatch.setattr(theta_kummer, "aj_pullback", shifted)
    certificate = verify_pullback(curve_new(gf16, 1, 1, 1), strict=False)
    assert calls == ["1,1,1"]
    assert certificate.status == "failed"
    assert certificate.cleared_identity == "nonzero"


def test_certificate_reports_clearing_factor(gf16):
    certificate = verify_pullback(curve_new(gf16, 1, 1, 1)).to_dict()
    assert certificate["cleared_denominator"].startswith("(Y1+Y2)^8*(")
    assert certificate["cleared_denominator"].endswith(")^4")
    assert set(certificate["components"].values()) == {"0"}


def test_certificate_is_s3_covariant(gf16, rng):
    curve = random_curve(gf16, rng)
    for sigma in S3:
        assert verify_pullback(s3_act(sigma, curve)).status == "ok"

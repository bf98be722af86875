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

"""
Genus-2 curves in characteristic 2 in the (a, b, c) affine model

    y^2 + x(x+1) y = x(x+1) (a x^3 + (a+b) x^2 + c x + c)

with Weierstrass points labelled 0, 1, inf.  The coefficient attached to a
label is c for 0, b for 1 and a for inf; S3 acts by moving each coefficient
to the image of its label.
"""

import itertools
from dataclasses import dataclass

import galois

from .errors import SingularCurve, WrongCharacteristic
from .forms import SparseForm

LABELS = ("0", "1", "inf")

# label -> attribute of Curve2
LABEL_COEFFICIENT = {"0": "c", "1": "b", "inf": "a"}


@dataclass(frozen=True)
class Curve2:
    field: object
    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.field.p != 2:
            raise WrongCharacteristic("Curve2 lives in characteristic 2", p=self.field.p)
        for name in ("a", "b", "c"):
            self.field.check_code(getattr(self, name))
        if not (self.a and self.b and self.c):
            raise SingularCurve(
                f"abc = 0 for (a, b, c) = ({self.a}, {self.b}, {self.c})",
                a=self.a, b=self.b, c=self.c,
            )

    @classmethod
    def parse(cls, text, field):
        parts = [field.check_code(int(part, 0)) for part in text.split(",")]
        if len(parts) != 3:
            raise ValueError(f"Curve needs three codes a,b,c, got {text!r}")
        return curve_new(field, *parts)

    def coefficient(self, label):
        return getattr(self, LABEL_COEFFICIENT[label])

    def to_dict(self):
        return {"a": self.a, "b": self.b, "c": self.c, "field": self.field.spec.format()}

    def __str__(self):
        return f"{self.a},{self.b},{self.c}"


def curve_new(field, a, b, c):
    """Smooth curve (a, b, c); SingularCurve when abc = 0."""
    return Curve2(field, int(a), int(b), int(c))


def random_curve(field, rng):
    return curve_new(field, *(field.random_nonzero(rng) for _ in range(3)))


def frobenius_twist(curve):
    """The Frobenius twist X_1: every coefficient squared."""
    f = curve.field
    return curve_new(f, f.frobenius(curve.a), f.frobenius(curve.b), f.frobenius(curve.c))


def curve_equation(curve):
    """Affine equation as a form in (x, y); zero exactly on the curve."""
    field = curve.field
    a, b, c = curve.a, curve.b, curve.c
    x, y = SparseForm.variables(field, 2, names=("x", "y"))
    one = SparseForm.constant(field, 2, 1, names=x.names)
    h = x * (x + one)
    cubic = (x ** 3).scale(a) + (x ** 2).scale(field.add(a, b)) + x.scale(c) + one.scale(c)
    return y * y + h * y + h * cubic


def point_count(curve):
    """Number of affine points over the base field."""
    field = curve.field
    count = 0
    for x in field.elements():
        h = field.mul(x, field.add(x, 1))
        cubic = field.add(
            field.add(field.mul(curve.a, field.pow(x, 3)), field.mul(field.add(curve.a, curve.b), field.pow(x, 2))),
            field.add(field.mul(curve.c, x), curve.c),
        )
        rhs = field.mul(h, cubic)
        if not h:
            count += 1
        elif field.trace(field.div(rhs, field.mul(h, h))) == 0:
            count += 2
    return count


@dataclass(frozen=True)
class HasseWittOneCurve:
    """The model y^2 + xy = lambda x^5 + mu x^3 + x, lambda nonzero."""

    field: object
    lam: int
    mu: int

    def __post_init__(self):
        if self.field.p != 2:
            raise WrongCharacteristic("Hasse-Witt one model lives in characteristic 2", p=self.field.p)
        if not self.lam:
            raise SingularCurve("lambda must be nonzero", lam=self.lam)

    def equation(self):
        x, y = SparseForm.variables(self.field, 2, names=("x", "y"))
        return y * y + x * y + (x ** 5).scale(self.lam) + (x ** 3).scale(self.mu) + x

    def to_dict(self):
        return {"lambda": self.lam, "mu": self.mu}


def hw1_family_curve(field, lam, mu):
    return HasseWittOneCurve(field, int(lam), int(mu))


# ----------------------------------------------------------------------
# Normal form Y^2 + Y = R(x)
# ----------------------------------------------------------------------


class RationalFunc1:
    """Reduced quotient of univariate galois Polys with monic denominator."""

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator, denominator=None):
        field = numerator.field
        if denominator is None:
            denominator = galois.Poly.One(field)
        if denominator == galois.Poly.Zero(field):
            raise ZeroDivisionError("Zero denominator")
        g = galois.gcd(numerator, denominator)
        numerator, denominator = numerator // g, denominator // g
        lead = denominator.coeffs[0]
        self.numerator = numerator // galois.Poly([lead], field=field)
        self.denominator = denominator // galois.Poly([lead], field=field)

    @classmethod
    def polynomial(cls, poly):
        return cls(poly)

    def __add__(self, other):
        if isinstance(other, galois.Poly):
            other = RationalFunc1(other)
        return RationalFunc1(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    def __sub__(self, other):
        if isinstance(other, galois.Poly):
            other = RationalFunc1(other)
        return RationalFunc1(
            self.numerator * other.denominator - other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    def __mul__(self, other):
        if isinstance(other, galois.Poly):
            other = RationalFunc1(other)
        return RationalFunc1(self.numerator * other.numerator, self.denominator * other.denominator)

    def is_zero(self):
        return self.numerator == galois.Poly.Zero(self.numerator.field)

    def __eq__(self, other):
        if not isinstance(other, RationalFunc1):
            return NotImplemented
        return self.numerator == other.numerator and self.denominator == other.denominator

    def __hash__(self):
        return hash((str(self.numerator), str(self.denominator)))

    def to_dict(self):
        return {
            "numerator": [int(c) for c in self.numerator.coeffs[::-1]],
            "denominator": [int(c) for c in self.denominator.coeffs[::-1]],
        }

    def __repr__(self):
        return f"({self.numerator})/({self.denominator})"


def normal_form(curve):
    """R(x) = (a x^3 + (a+b) x^2 + c x + c) / (x (x+1))."""
    f = curve.field
    numerator = f.poly([curve.c, curve.c, f.add(curve.a, curve.b), curve.a])
    denominator = f.poly([0, 1, 1])
    return RationalFunc1(numerator, denominator)


def apply_involution(R, S):
    """Effect of Y -> Y + S on the normal form: R + S^2 + S."""
    return R + (S * S + S)


def recover_curve(field, mu0, mu1, mu_inf):
    """The curve with (a, b, c) = (mu_inf, mu1, mu0)."""
    return curve_new(field, mu_inf, mu1, mu0)


def partial_fraction_form(field, mu0, mu1, mu_inf):
    """mu_inf x + mu0/x + mu1/(x+1) as a RationalFunc1."""
    x = field.poly([0, 1])
    one = field.poly([1])
    return (
        RationalFunc1(x * field.poly([mu_inf]))
        + RationalFunc1(field.poly([mu0]), x)
        + RationalFunc1(field.poly([mu1]), x + one)
    )


def curve_from_lambdas(field, lam0, lam1, lam_inf):
    """
    Curve determined by the Kummer relation constants:
    mu_inf = l_inf/(l0 l1), mu0 = l0/(l1 l_inf), mu1 = l1/(l0 l_inf).
    """
    mul, div = field.mul, field.div
    mu_inf = div(lam_inf, mul(lam0, lam1))
    mu0 = div(lam0, mul(lam1, lam_inf))
    mu1 = div(lam1, mul(lam0, lam_inf))
    return recover_curve(field, mu0, mu1, mu_inf)


# ----------------------------------------------------------------------
# S3 on the Weierstrass labels
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class S3Perm:
    """Permutation of the labels (0, 1, inf), stored as the images in that order."""

    images: tuple

    def __post_init__(self):
        if sorted(self.images) != sorted(LABELS):
            raise ValueError(f"{self.images} is not a permutation of {LABELS}")

    def __call__(self, label):
        return self.images[LABELS.index(label)]

    def compose(self, other):
        """self after other."""
        return S3Perm(tuple(self(other(label)) for label in LABELS))

    def inverse(self):
        out = [None] * 3
        for label, image in zip(LABELS, self.images):
            out[LABELS.index(image)] = label
        return S3Perm(tuple(out))

    @property
    def name(self):
        return ",".join(self.images)

    @classmethod
    def parse(cls, text):
        return cls(tuple(part.strip() for part in text.split(",")))


IDENTITY = S3Perm(LABELS)
S3 = [S3Perm(images) for images in itertools.permutations(LABELS)]


def s3_act(perm, curve):
    """Move the coefficient of each label to the image label."""
    moved = {perm(label): curve.coefficient(label) for label in LABELS}
    return curve_new(curve.field, moved["inf"], moved["1"], moved["0"])

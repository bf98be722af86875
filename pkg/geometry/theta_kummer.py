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
Kummer quartic of a characteristic-2 genus-2 curve and its exact check by
Abel-Jacobi pull-back.

Pull-backs live in the quotient ring k(x1, x2)[Y1, Y2] / (Y_i^2 + Y_i + R(x_i)),
represented by four polynomial components over one polynomial denominator.
"""

import logging
from dataclasses import dataclass, field as dc_field

from utils.enumeration import parallel_map

from .errors import FieldMismatch, IdentityFails, NonInvertible
from .forms import SparseForm
from .genus2 import Curve2, curve_from_lambdas

logger = logging.getLogger(__name__)

PAIR_NAMES = ("x1", "x2")


def _pair_terms(x00, x01, x10, x11):
    """The three pair terms attached to the labels 0, 1, inf."""
    sq = lambda v: v * v  # noqa: E731
    return (
        sq(x00) * sq(x10) + sq(x01) * sq(x11),
        sq(x00) * sq(x01) + sq(x10) * sq(x11),
        sq(x00) * sq(x11) + sq(x01) * sq(x10),
    )


def relation_form(field, lambda_sq, lambdas):
    """
    The Kummer relation in Z0 = x10/x00, Z1 = x01/x00, Z_inf = x11/x00,
    cleared by x00^4.
    """
    x00, x01, x10, x11 = SparseForm.variables(field, 4)
    t0, t1, t_inf = _pair_terms(x00, x01, x10, x11)
    cross = field.mul(field.mul(lambdas[0], lambdas[1]), lambdas[2])
    return (
        t0.scale(lambda_sq[0])
        + t1.scale(lambda_sq[1])
        + t_inf.scale(lambda_sq[2])
        + (x00 * x01 * x10 * x11).scale(cross)
    )


@dataclass(frozen=True)
class KummerQuartic2:
    curve: Curve2
    lambda_sq: tuple
    lambdas: tuple
    quartic: SparseForm

    def to_dict(self):
        return {
            "curve": self.curve.to_dict(),
            "lambda_sq": list(self.lambda_sq),
            "quartic": self.quartic.to_text(),
        }


def lambda_squares(curve):
    """(1/(ab), 1/(ac), 1/(bc))."""
    f = curve.field
    a, b, c = curve.a, curve.b, curve.c
    return (f.inv(f.mul(a, b)), f.inv(f.mul(a, c)), f.inv(f.mul(b, c)))


def kummer_quartic(curve):
    field = curve.field
    lambda_sq = lambda_squares(curve)
    lambdas = tuple(field.sqrt(v) for v in lambda_sq)

    x00, x01, x10, x11 = SparseForm.variables(field, 4)
    t0, t1, t_inf = _pair_terms(x00, x01, x10, x11)
    quartic = t0.scale(curve.c) + t1.scale(curve.b) + t_inf.scale(curve.a) + x00 * x01 * x10 * x11

    abc = field.mul(field.mul(curve.a, curve.b), curve.c)
    if relation_form(field, lambda_sq, lambdas).scale(abc) != quartic:
        raise IdentityFails("Quartic is not abc times the homogenised relation", curve=str(curve))
    return KummerQuartic2(curve, lambda_sq, lambdas, SparseForm(field, 4, quartic.terms, degree=4))


def curve_of_quartic(kummer):
    """Recover (a, b, c) from the relation constants lambda_0, lambda_1, lambda_inf."""
    return curve_from_lambdas(kummer.curve.field, *kummer.lambdas)


# ----------------------------------------------------------------------
# Artin-Schreier quotient ring
# ----------------------------------------------------------------------


class ASRing:
    """Context for one curve: x_i, h_i = x_i(x_i+1), N_i with R(x_i) = N_i / h_i."""

    def __init__(self, curve):
        self.curve = curve
        self.field = curve.field
        f = self.field
        x1, x2 = SparseForm.variables(f, 2, names=PAIR_NAMES)
        one = SparseForm.constant(f, 2, 1, names=PAIR_NAMES)
        self.x1, self.x2, self._one = x1, x2, one
        self.h = (x1 * (x1 + one), x2 * (x2 + one))
        self.N = tuple(
            (x ** 3).scale(curve.a) + (x ** 2).scale(f.add(curve.a, curve.b)) + x.scale(curve.c) + one.scale(curve.c)
            for x in (x1, x2)
        )

    def poly(self, form):
        return ASRingElem(self, (form, self.zero_form(), self.zero_form(), self.zero_form()), self._one)

    def zero_form(self):
        return SparseForm.zero(self.field, 2, names=PAIR_NAMES)

    def one(self):
        return self.poly(self._one)

    def y1(self):
        z = self.zero_form()
        return ASRingElem(self, (z, self._one, z, z), self._one)

    def y2(self):
        z = self.zero_form()
        return ASRingElem(self, (z, z, self._one, z), self._one)

    def fraction(self, numerator, denominator):
        z = self.zero_form()
        return ASRingElem(self, (numerator, z, z, z), denominator)


class ASRingElem:
    """(A + B*Y1 + C*Y2 + D*Y1*Y2) / den with polynomial A, B, C, D, den."""

    __slots__ = ("ring", "comps", "den")

    def __init__(self, ring, comps, den):
        if den.is_zero():
            raise NonInvertible("Zero denominator")
        self.ring = ring
        self.comps = tuple(comps)
        self.den = den

    def _check(self, other):
        if not isinstance(other, ASRingElem):
            raise TypeError(f"Expected ASRingElem, got {type(other).__name__}")
        if other.ring.curve != self.ring.curve:
            raise FieldMismatch("Elements belong to different curves")

    def is_zero(self):
        return all(c.is_zero() for c in self.comps)

    def __add__(self, other):
        self._check(other)
        if self.den == other.den:
            return ASRingElem(self.ring, [a + b for a, b in zip(self.comps, other.comps)], self.den)
        up = other.den.exact_divide(self.den)
        if up is not None:
            return ASRingElem(self.ring, [a * up + b for a, b in zip(self.comps, other.comps)], other.den)
        up = self.den.exact_divide(other.den)
        if up is not None:
            return ASRingElem(self.ring, [a + b * up for a, b in zip(self.comps, other.comps)], self.den)
        return ASRingElem(
            self.ring,
            [a * other.den + b * self.den for a, b in zip(self.comps, other.comps)],
            self.den * other.den,
        )

    __sub__ = __add__

    def scale_form(self, form):
        """Multiply by a Y-free polynomial."""
        return ASRingElem(self.ring, [c * form for c in self.comps], self.den)

    def scale(self, c):
        return ASRingElem(self.ring, [comp.scale(c) for comp in self.comps], self.den)

    def reduced(self):
        """Same element over denominator 1 when den divides every component."""
        quotients = [comp.exact_divide(self.den) for comp in self.comps]
        if any(q is None for q in quotients):
            return self
        return ASRingElem(self.ring, quotients, self.ring._one)

    def __mul__(self, other):
        if isinstance(other, SparseForm):
            return self.scale_form(other)
        self._check(other)
        A, B, C, D = self.comps
        E, F, G, H = other.comps
        # grid[i][j] = coefficient of Y1^i Y2^j, i, j <= 2
        grid = [
            [A * E, A * G + C * E, C * G],
            [A * F + B * E, A * H + B * G + C * F + D * E, C * H + D * G],
            [B * F, B * H + D * F, D * H],
        ]
        den = self.den * other.den
        ring = self.ring
        h1, h2 = ring.h
        N1, N2 = ring.N

        if any(not g.is_zero() for g in grid[2]):
            # Y1^2 = Y1 + N1/h1, scaled through by h1
            grid = [
                [grid[0][j] * h1 + grid[2][j] * N1 for j in range(3)],
                [(grid[1][j] + grid[2][j]) * h1 for j in range(3)],
            ]
            den = den * h1
        else:
            grid = grid[:2]
        if any(not row[2].is_zero() for row in grid):
            grid = [[row[0] * h2 + row[2] * N2, (row[1] + row[2]) * h2] for row in grid]
            den = den * h2
        else:
            grid = [row[:2] for row in grid]
        return ASRingElem(ring, (grid[0][0], grid[1][0], grid[0][1], grid[1][1]), den)

    def conjugate(self, flip1, flip2):
        """Image under Y1 -> Y1 + flip1, Y2 -> Y2 + flip2."""
        A, B, C, D = self.comps
        if flip1:
            A, C = A + B, C + D
        if flip2:
            A, B = A + C, B + D
        return ASRingElem(self.ring, (A, B, C, D), self.den)

    def swap(self):
        """Exchange (x1, Y1) with (x2, Y2)."""
        ring = self.ring
        exchange = [ring.x2, ring.x1]
        swapped = [c.substitute(exchange, check_degree=False) for c in self.comps]
        A, B, C, D = swapped
        return ASRingElem(ring, (A, C, B, D), self.den.substitute(exchange, check_degree=False))

    def __eq__(self, other):
        if not isinstance(other, ASRingElem):
            return NotImplemented
        return all(a * other.den == b * self.den for a, b in zip(self.comps, other.comps))

    __hash__ = None

    def to_dict(self):
        return {
            "A": self.comps[0].to_text(),
            "B": self.comps[1].to_text(),
            "C": self.comps[2].to_text(),
            "D": self.comps[3].to_text(),
            "den": self.den.to_text(),
        }


def as_mul(u, v, curve):
    if u.ring.curve != curve or v.ring.curve != curve:
        raise FieldMismatch("Element does not belong to this curve")
    return u * v


def as_inverse(u):
    """Inverse through the norm u * u^(1,0) * u^(0,1) * u^(1,1)."""
    ring = u.ring
    numerator_part = ASRingElem(ring, u.comps, ring._one)
    others = numerator_part.conjugate(1, 0) * numerator_part.conjugate(0, 1) * numerator_part.conjugate(1, 1)
    norm = numerator_part * others
    A, B, C, D = norm.comps
    if not (B.is_zero() and C.is_zero() and D.is_zero()):
        raise IdentityFails("Norm is not Y-free")
    if A.is_zero():
        raise NonInvertible("Element has zero norm")
    # u^-1 = den_u * others / (A / den_norm)
    return ASRingElem(ring, [c * norm.den * u.den for c in others.comps], others.den * A)


def aj_pullback(curve, lambdas=None):
    """
    Pull-backs of Z0, Z1, Z_inf: alpha * P * m / (Y1+Y2)^2 with alpha = 1/lambda,
    P = (x1+x2)^2 / (x1 x2 (x1+1)(x2+1)) and m = x1 x2, (x1+1)(x2+1), 1.
    """
    f = curve.field
    if lambdas is None:
        lambdas = tuple(f.sqrt(v) for v in lambda_squares(curve))
    ring = ASRing(curve)
    x1, x2, one = ring.x1, ring.x2, ring._one
    m = (x1 * x2, (x1 + one) * (x2 + one), one)
    diff = x1 + x2
    s = ring.y1() + ring.y2()
    s_inv = as_inverse(s)
    s_inv2 = s_inv * s_inv
    out = []
    for lam, mono in zip(lambdas, m):
        alpha = f.inv(lam)
        P = ring.fraction((diff * diff * mono).scale(alpha), m[0] * m[1])
        out.append(P * s_inv2)
    return tuple(out)


@dataclass
class Certificate:
    curve: dict
    lambda_sq: list
    cleared_identity: str
    cleared_denominator: str
    components: dict = dc_field(default_factory=dict)
    status: str = "ok"

    def to_dict(self):
        return {
            "curve": self.curve,
            "lambda_sq": self.lambda_sq,
            "cleared_identity": self.cleared_identity,
            "cleared_denominator": self.cleared_denominator,
            "components": self.components,
            "status": self.status,
        }


def verify_pullback(curve, lambda_sq=None, strict=True):
    """
    Substitute the Abel-Jacobi pull-backs into the Kummer relation, clear
    (Y1+Y2)^8 and (x1 x2 (x1+1)(x2+1))^4, and check the result is zero.

    lambda_sq overrides the relation constants (alpha stays 1/lambda).
    """
    f = curve.field
    if lambda_sq is None:
        lambda_sq = lambda_squares(curve)
    lambdas = tuple(f.sqrt(v) for v in lambda_sq)

    pullbacks = aj_pullback(curve, lambdas)
    ring = pullbacks[0].ring
    x1, x2, one = ring.x1, ring.x2, ring._one
    mm = x1 * x2 * (x1 + one) * (x2 + one)

    # clear = (Y1+Y2)^2 mm, so each clear * Z_phi is a polynomial
    s = ring.y1() + ring.y2()
    clear = as_mul(as_mul(s, s, curve), ring.poly(mm), curve)
    w = [as_mul(z, clear, curve).reduced() for z in pullbacks]
    clear2 = as_mul(clear, clear, curve)
    sq = [as_mul(v, v, curve) for v in w]

    # relation * clear^4, term by term
    total = ring.poly(ring.zero_form())
    for phi, (psi, chi) in enumerate(((1, 2), (0, 2), (0, 1))):
        total = total + as_mul(sq[phi], clear2, curve).scale(lambda_sq[phi])
        total = total + as_mul(sq[psi], sq[chi], curve).scale(lambda_sq[phi])
    cross = f.mul(f.mul(lambdas[0], lambdas[1]), lambdas[2])
    product = as_mul(as_mul(w[0], w[1], curve), w[2], curve)
    total = total + as_mul(product, clear, curve).scale(cross)

    components = {name: comp.to_text() for name, comp in zip("ABCD", total.comps)}
    certificate = Certificate(
        curve=curve.to_dict(),
        lambda_sq=list(lambda_sq),
        cleared_identity="0" if total.is_zero() else "nonzero",
        cleared_denominator=f"(Y1+Y2)^8*({mm.to_text()})^4",
        components=components,
        status="ok" if total.is_zero() else "failed",
    )
    if not total.is_zero():
        logger.info("Kummer identity fails for curve %s", curve)
        if strict:
            raise IdentityFails(f"Cleared identity is nonzero for curve {curve}", certificate=certificate.to_dict())
    return certificate


def verify_batch(curves, threads=1, strict=True):
    """verify_pullback over many curves; output order follows input order."""
    return parallel_map(lambda c: verify_pullback(c, strict=strict), curves, threads)

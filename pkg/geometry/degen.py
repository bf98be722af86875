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
Degeneration of the ordinary Verschiebung equations to a Hasse-Witt one curve.

Coefficients live in k((t)) with k = GF(2^n).  The family
y^2 + (s x^2 + x) y = lambda x^5 + mu x^3 + x is written in (a, b, c) form with
a = lambda/s^3, b = alpha^2 + alpha, c = s, alpha^2 = lambda/s^3 + mu/s + s,
and s = v t^nu.  Valuations are handled symbolically in nu; series are only
built once nu is a multiple of 4, where every square root has integer
exponents.
"""

import logging
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Optional

from .errors import (
    EmptyWindow,
    NoBalance,
    SpanMismatch,
    WindowExhausted,
    ZeroLambda,
)
from .forms import Z_NAMES, SparseForm, express_in_span, order_key
from .gf import GF
from .laurent import LaurentSeries, ValSymbol
from .versch import RationalMapP3, quadrics_Q

logger = logging.getLogger(__name__)

DEFAULT_WINDOW = 40
UNIT_EXPONENTS = (0, 3, 4, 5)  # u = 1 + t^3 + t^4 + t^5
MAX_REDUCTION_STEPS = 64


class SeriesForm:
    """Polynomial in nvars variables with LaurentSeries coefficients."""

    __slots__ = ("field", "nvars", "coeffs", "names")

    def __init__(self, field, nvars, coeffs=None, names=Z_NAMES):
        self.field = field
        self.nvars = nvars
        self.names = names
        self.coeffs = {e: c for e, c in (coeffs or {}).items() if not c.is_zero()}

    @classmethod
    def variable(cls, field, nvars, index, series, names=Z_NAMES):
        exps = [0] * nvars
        exps[index] = 1
        return cls(field, nvars, {tuple(exps): series}, names)

    def _new(self, coeffs):
        return SeriesForm(self.field, self.nvars, coeffs, self.names)

    def __add__(self, other):
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out[e] + c if e in out else c
        return self._new(out)

    __sub__ = __add__

    def __mul__(self, other):
        if isinstance(other, LaurentSeries):
            return self._new({e: c * other for e, c in self.coeffs.items()})
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out[e] + c1 * c2 if e in out else c1 * c2
        return self._new(out)

    def scale(self, code):
        return self._new({e: c.scale(code) for e, c in self.coeffs.items()})

    def shift(self, k):
        return self._new({e: c.shift(k) for e, c in self.coeffs.items()})

    def is_zero(self):
        return not self.coeffs

    def valuation(self):
        if not self.coeffs:
            raise EmptyWindow("Series form vanishes on its whole window")
        return min(c.val() for c in self.coeffs.values())

    def coefficients_at(self, k):
        """The form over k collecting the t^k coefficients."""
        return SparseForm(
            self.field,
            self.nvars,
            {e: c.coeff(k) for e, c in self.coeffs.items()},
            names=self.names,
        )

    def coefficient(self, exps):
        return self.coeffs.get(tuple(exps))

    def agrees_with(self, other):
        for e in set(self.coeffs) | set(other.coeffs):
            a, b = self.coeffs.get(e), other.coeffs.get(e)
            if a is None or b is None:
                return False
            if not a.agrees_with(b):
                return False
        return True

    def to_dict(self):
        out = {}
        for e in sorted(self.coeffs, key=order_key, reverse=True):
            name = "*".join(f"{n}^{k}" if k > 1 else n for n, k in zip(self.names, e) if k) or "1"
            out[name] = self.coeffs[e].to_text()
        return out


class SeriesQuadric(SeriesForm):
    """Quadric in z00, z01, z10, z11 with Laurent coefficients."""

    def __init__(self, field, coeffs=None, names=Z_NAMES):
        super().__init__(field, 4, coeffs, names)
        for e in self.coeffs:
            if sum(e) != 2:
                raise ValueError(f"Monomial {e} is not quadratic")

    @classmethod
    def of(cls, form):
        return cls(form.field, form.coeffs, form.names)

    def _new(self, coeffs):
        return SeriesQuadric(self.field, coeffs, self.names)


# ----------------------------------------------------------------------
# Elliptic family V^2 Z + t^4 U V Z + V Z^2 = U^3 + U Z^2
# ----------------------------------------------------------------------


def _t(field, k, window):
    return LaurentSeries.monomial(field, k, 1, window=window + max(-k, 0))


def _poly(field, exponents, window):
    return LaurentSeries.polynomial(field, exponents, window)


@dataclass
class EllipticData:
    u0: LaurentSeries
    v0: LaurentSeries
    two_torsion: tuple
    a4: LaurentSeries
    a: LaurentSeries
    g_matrix: list
    theta_in_UZ: dict
    checks: dict = dc_field(default_factory=dict)

    def to_dict(self):
        return {
            "two_torsion": [c.to_text() for c in self.two_torsion],
            "a4": self.a4.to_text(),
            "a": self.a.to_text(),
            "g_matrix": [[c.to_text() for c in row] for row in self.g_matrix],
            "theta_in_UZ": {k: [c.to_text() for c in v] for k, v in self.theta_in_UZ.items()},
            "checks": self.checks,
        }


def _mat_mul(m1, m2):
    return [
        [m1[i][0] * m2[0][j] + m1[i][1] * m2[1][j] for j in range(2)]
        for i in range(2)
    ]


def elliptic_data(window=DEFAULT_WINDOW):
    """
    Two-torsion point, a4, a = sqrt(a4), the action g of the two-torsion point
    on the basis (U, Z), and the theta basis X0, X1 in (U, Z).
    """
    k = GF(2, 1)
    one = LaurentSeries.one(k, window)
    u0 = _t(k, -4, window)
    v0 = _t(k, -2, window) + _t(k, -6, window)
    t4 = _t(k, 4, window)

    two_torsion = tuple((c * _t(k, 6, window)).with_window(window) for c in (u0, v0, one))
    a4 = one + u0 * u0 + t4 * v0
    a = a4.sqrt()
    a_inv = a.inv()

    # g.X = a Z and g.Z = X / a with X = U + u0 Z
    g_u = (u0 * a_inv, a + u0 * u0 * a_inv)
    g_z = (a_inv, u0 * a_inv)
    g_matrix = [[g_u[0], g_z[0]], [g_u[1], g_z[1]]]

    x0 = (t4, one)
    x1 = (t4 * g_u[0] + g_z[0], t4 * g_u[1] + g_z[1])
    theta = {"X0": x0, "X1": x1}

    expected_a4 = _poly(k, (0, -8, 2, -2), window)
    unit = _poly(k, UNIT_EXPONENTS, window)
    expected_a = unit.shift(-4)
    square = _mat_mul(g_matrix, g_matrix)
    checks = {
        "a4_matches": a4.agrees_with(expected_a4),
        "sqrt_a4_matches": a.agrees_with(expected_a),
        "a_squared_is_a4": (a * a).agrees_with(a4),
        "g_involution": all(
            square[i][j].agrees_with(one if i == j else LaurentSeries.zero(k, window))
            for i in range(2)
            for j in range(2)
        ),
        "g_matrix_matches": g_u[0].agrees_with(unit.inv())
        and g_u[1].agrees_with(_poly(k, (2, 4, 6), window) * unit.inv())
        and g_z[0].agrees_with(t4 * unit.inv())
        and g_z[1].agrees_with(unit.inv()),
        "X1_is_unit_times_Z": x1[0].is_zero() and x1[1].agrees_with(unit),
        "special_fibre_coincide": x0[0].at_zero() == x1[0].at_zero() and x0[1].at_zero() == x1[1].at_zero(),
    }
    logger.debug("Elliptic data checks: %s", checks)
    return EllipticData(u0, v0, two_torsion, a4, a, g_matrix, theta, checks)


def elliptic_curve_check(window=DEFAULT_WINDOW):
    """
    X = U + u0 Z, Y = V + v0 Z carries Y^2 Z + a1 XYZ = X^3 + a2 X^2 Z + a4 X Z^2
    (a1 = t^4, a2 = u0) to the family cubic, and the two-torsion point lies on
    the cubic with dF/dV = 0 there.
    """
    k = GF(2, 1)
    data = elliptic_data(window)
    names = ("U", "V", "Z")
    one = LaurentSeries.one(k, window)
    t4 = _t(k, 4, window)
    U, V, Z = (SeriesForm.variable(k, 3, i, one, names) for i in range(3))

    family = V * V * Z + U * V * Z * t4 + V * Z * Z + U * U * U + U * Z * Z

    X = U + Z * data.u0
    Y = V + Z * data.v0
    weierstrass = Y * Y * Z + X * Y * Z * t4 + X * X * X + X * X * Z * data.u0 + X * Z * Z * data.a4

    # evaluate at the two-torsion point (t^2 : t^4 + 1 : t^6)
    pu, pv, pz = data.two_torsion

    def at_point(form):
        total = LaurentSeries.zero(k, window)
        for (e_u, e_v, e_z), c in form.coeffs.items():
            total = total + c * (pu ** e_u) * (pv ** e_v) * (pz ** e_z)
        return total

    dF_dV = U * Z * t4 + Z * Z
    return {
        "substitution_matches": family.agrees_with(weierstrass),
        "two_torsion_on_curve": at_point(family).is_zero(),
        "two_torsion_vertical": at_point(dF_dV).is_zero(),
    }


# ----------------------------------------------------------------------
# The specialising family
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class FamilyParams:
    field: object
    lam: int
    mu: int
    nu: Optional[Fraction] = None
    v: Optional[LaurentSeries] = None
    window: int = DEFAULT_WINDOW

    def __post_init__(self):
        if not self.lam:
            raise ZeroLambda("lambda must be nonzero")
        if self.nu is not None:
            object.__setattr__(self, "nu", Fraction(self.nu))
            if self.nu <= 0:
                raise ValueError(f"nu must be positive, got {self.nu}")

    def with_nu(self, nu):
        return FamilyParams(self.field, self.lam, self.mu, Fraction(nu), self.v, self.window)

    def materializable(self):
        return self.nu is not None and self.nu.denominator == 1 and self.nu.numerator % 4 == 0

    def to_dict(self):
        return {
            "lambda": self.lam,
            "mu": self.mu,
            "nu": None if self.nu is None else str(self.nu),
            "field": self.field.spec.format(),
        }


@dataclass
class FamilyCoefficients:
    valuations: dict
    series: dict = dc_field(default_factory=dict)

    def to_dict(self):
        return {
            "valuations": {k: v.to_text() for k, v in self.valuations.items()},
            "series": {k: v.to_text() for k, v in self.series.items()},
        }


def coefficient_valuations():
    """Valuations of a, b, c and their square roots as functions of nu."""
    val_a = ValSymbol("a", 0, -3)
    val_b = ValSymbol("b", 0, -3)
    val_c = ValSymbol("c", 0, 1)
    out = {"a": val_a, "b": val_b, "c": val_c}
    for name in ("a", "b", "c"):
        out[f"sqrt_{name}"] = out[name].half()
    out["sqrt_abc"] = (out["sqrt_a"] + out["sqrt_b"] + out["sqrt_c"]).renamed("sqrt(abc)")
    return out


def family_coeffs(params):
    """
    Valuation symbols for a, b, c and their roots; the series themselves when
    nu is a multiple of 4.
    """
    if not params.lam:
        raise ZeroLambda("lambda must be nonzero")
    valuations = coefficient_valuations()
    result = FamilyCoefficients(valuations)
    if not params.materializable():
        return result

    f = params.field
    # square roots halve the window
    window = 2 * params.window
    nu = int(params.nu)
    if params.v is None:
        s_half = _t(f, nu // 2, window)
    else:
        s_half = params.v.sqrt().shift(nu // 2)
    s_half_inv = s_half.inv()
    s_half_inv3 = s_half_inv * s_half_inv * s_half_inv

    sqrt_a = s_half_inv3.scale(f.sqrt(params.lam))
    alpha = sqrt_a + s_half_inv.scale(f.sqrt(params.mu)) + s_half
    sqrt_alpha = alpha.sqrt()
    sqrt_b = alpha + sqrt_alpha
    sqrt_c = s_half

    result.series = {
        "a": sqrt_a * sqrt_a,
        "b": alpha * alpha + alpha,
        "c": sqrt_c * sqrt_c,
        "alpha": alpha,
        "sqrt_a": sqrt_a,
        "sqrt_b": sqrt_b,
        "sqrt_c": sqrt_c,
        "sqrt_abc": sqrt_a * sqrt_b * sqrt_c,
    }
    return result


def transition(field, window, coefficient_power=2):
    """
    x00 = w z00, x01 = w z01, x10 = z00 + t^(4k) z10, x11 = z01 + t^(4k) z11
    with w = (1 + t^3 + t^4 + t^5)^k and k = coefficient_power.
    """
    one = LaurentSeries.one(field, window)
    unit = _poly(field, UNIT_EXPONENTS, window)
    w = unit ** coefficient_power
    t_shift = _t(field, 4 * coefficient_power, window)
    z = [SeriesForm.variable(field, 4, i, one) for i in range(4)]
    return (z[0] * w, z[1] * w, z[0] + z[2] * t_shift, z[1] + z[3] * t_shift)


def _P(x):
    x00, x01, x10, x11 = x
    return (
        x00 * x00 + x01 * x01 + x10 * x10 + x11 * x11,
        x00 * x01 + x10 * x11,
        x00 * x10 + x01 * x11,
        x00 * x11 + x10 * x01,
    )


def substituted_P(field, window=DEFAULT_WINDOW):
    """P_ij composed with the squared transition formulae."""
    return tuple(SeriesQuadric.of(p) for p in _P(transition(field, window)))


def build_Rij(params):
    """
    R00 = S00/u, R01 = S01/u, R10 = t^-4 (R00 + S10), R11 = t^-4 (R01 + S11),
    where S_ij = lambda_ij P_ij(trans(z)), (lambda_ij) = (sqrt(abc), sqrt(b), sqrt(c), sqrt(a)).
    """
    coeffs = family_coeffs(params)
    if not coeffs.series:
        raise WindowExhausted(f"Series need nu divisible by 4, got {params.nu}")
    s = coeffs.series
    f = params.field
    window = 2 * params.window
    P = substituted_P(f, window)
    S = [
        P[0] * s["sqrt_abc"],
        P[1] * s["sqrt_b"],
        P[2] * s["sqrt_c"],
        P[3] * s["sqrt_a"],
    ]
    unit_inv = _poly(f, UNIT_EXPONENTS, window).inv()
    R00 = S[0] * unit_inv
    R01 = S[1] * unit_inv
    R10 = (R00 + S[2]).shift(-4)
    R11 = (R01 + S[3]).shift(-4)
    return [SeriesQuadric.of(r) for r in (R00, R01, R10, R11)]


def displayed_Rij(params):
    """The R_ij written out term by term."""
    coeffs = family_coeffs(params)
    if not coeffs.series:
        raise WindowExhausted(f"Series need nu divisible by 4, got {params.nu}")
    s = coeffs.series
    f = params.field
    window = 2 * params.window
    one = LaurentSeries.one(f, window)
    z00, z01, z10, z11 = (SeriesForm.variable(f, 4, i, one) for i in range(4))
    unit_inv = _poly(f, UNIT_EXPONENTS, window).inv()
    big = _poly(f, (12, 16, 20), window)
    t8 = _t(f, 8, window)
    t16 = _t(f, 16, window)
    w = _poly(f, (0, 6, 8, 10), window)

    R00 = ((z00 * z00 + z01 * z01) * big + (z10 * z10 + z11 * z11) * t16) * (s["sqrt_abc"] * unit_inv)
    R01 = (z00 * z01 * big + (z00 * z11 + z10 * z01) * t8 + z10 * z11 * t16) * (s["sqrt_b"] * unit_inv)
    R10 = (R00 + (z00 * z00 + z01 * z01 + (z00 * z10 + z11 * z01) * t8) * (s["sqrt_c"] * w)).shift(-4)
    R11 = (R01 + (z00 * z11 + z01 * z10) * (s["sqrt_a"] * w * t8)).shift(-4)
    return [SeriesQuadric.of(r) for r in (R00, R01, R10, R11)]


# ----------------------------------------------------------------------
# Valuations
# ----------------------------------------------------------------------


def bracket_valuations(field=None, window=DEFAULT_WINDOW):
    """Lowest t-power of P00 and P01 after the transition, before the lambda_ij."""
    field = field or GF(2, 1)
    P = substituted_P(field, window)
    return P[0].valuation(), P[1].valuation()


def valuation_table(params=None):
    """Symbolic valuations of the coefficients and of R00, R01."""
    vals = coefficient_valuations()
    p00, p01 = bracket_valuations(params.field if params else None)
    table = dict(vals)
    table["R00"] = (vals["sqrt_abc"] + p00).renamed("R00")
    table["R01"] = (vals["sqrt_b"] + p01).renamed("R01")
    out = {name: sym.to_text() for name, sym in table.items()}
    if params is not None and params.nu is not None:
        out["at_nu"] = {name: str(sym.at(params.nu)) for name, sym in table.items()}
    return table, out


def balance_valuations(params):
    """
    nu at which R00 and R01 have equal valuation, checked by building the
    quadrics there and reducing them to a common lowest valuation.
    """
    table, _ = valuation_table(params)
    nu = table["R00"].solve_equal(table["R01"])
    expected = table["R01"].at(nu)
    if nu <= 0:
        raise NoBalance(f"Balancing gives non-positive nu = {nu}", nu=str(nu))

    at_nu = params.with_nu(nu)
    if at_nu.materializable():
        reduced = reduce_quadrics(build_Rij(at_nu))
        valuations = [r.valuation for r in reduced]
        if any(v != expected for v in valuations):
            raise NoBalance(
                f"Reduced valuations {valuations} are not all {expected}",
                nu=str(nu),
                valuations=valuations,
            )
    logger.info("Balanced valuations at nu = %s (common valuation %s)", nu, expected)
    return nu


# ----------------------------------------------------------------------
# Leading map
# ----------------------------------------------------------------------


@dataclass
class ReducedQuadric:
    form: SeriesQuadric
    valuation: int
    lead: SparseForm
    steps: int


def reduce_quadrics(quadrics):
    """
    t-adic echelon form: while the lowest-order part of a quadric lies in the
    span of the leading parts of the earlier ones, subtract the matching
    multiples of those.
    """
    reduced = []
    for quadric in quadrics:
        current = quadric
        for step in range(MAX_REDUCTION_STEPS):
            try:
                val = current.valuation()
            except EmptyWindow:
                raise WindowExhausted("Quadric vanished before its leading part separated") from None
            lead = current.coefficients_at(val)
            combo = express_in_span([r.lead for r in reduced], lead) if reduced else None
            if combo is None:
                break
            for c, r in zip(combo, reduced):
                if c:
                    current = current - r.form.scale(c).shift(val - r.valuation)
        else:
            raise WindowExhausted(f"No separated leading part after {MAX_REDUCTION_STEPS} steps")
        reduced.append(ReducedQuadric(current, val, lead, step))
    return reduced


@dataclass
class LeadingMap:
    params: dict
    nu: Fraction
    quadrics: list
    valuations: list
    certificate: list
    rmap: RationalMapP3

    def to_dict(self):
        return {
            "nu": str(self.nu),
            "params": self.params,
            "leading_quadrics": [q.to_text() for q in self.quadrics],
            "valuations": self.valuations,
            "span_certificate": self.certificate,
        }


def leading_map(params, nu=None):
    """
    Limit quadrics at t = 0 and the lower-triangular matrix M with
    L_i = sum_j M[i][j] Q_j.
    """
    nu = Fraction(nu if nu is not None else balance_valuations(params))
    at_nu = params.with_nu(nu)
    f = params.field
    reduced = reduce_quadrics(build_Rij(at_nu))
    leads = [r.lead for r in reduced]
    basis = quadrics_Q(f)

    certificate = []
    for i, lead in enumerate(leads):
        row = express_in_span(basis, lead)
        if row is None:
            raise SpanMismatch(f"Leading quadric {i} is outside the expected span", quadric=lead.to_text())
        certificate.append(row)
    for i, row in enumerate(certificate):
        if not row[i] or any(row[j] for j in range(i + 1, 4)):
            raise SpanMismatch("Certificate is not invertible lower-triangular", certificate=certificate)

    rmap = RationalMapP3(f, tuple(leads), "leading")
    logger.info("Leading map for lambda=%s mu=%s at nu=%s", params.lam, params.mu, nu)
    return LeadingMap(
        params=at_nu.to_dict(),
        nu=nu,
        quadrics=leads,
        valuations=[r.valuation for r in reduced],
        certificate=certificate,
        rmap=rmap,
    )


def specialize(field, lam, mu, nu=None, window=DEFAULT_WINDOW):
    """Balance, reduce and report, as one record."""
    params = FamilyParams(field, int(lam), int(mu), window=window)
    nu = Fraction(nu) if nu is not None else balance_valuations(params)
    result = leading_map(params, nu)
    _, table = valuation_table(params.with_nu(nu))
    return {
        "nu": str(nu),
        "valuation_table": table,
        "leading_quadrics": [q.to_text() for q in result.quadrics],
        "valuations": result.valuations,
        "span_certificate": result.certificate,
    }

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
Truncated Laurent series over GF(2^n) and affine valuation symbols.

A LaurentSeries knows its coefficients for exponents lo <= k < trunc; every
operation shrinks the window to what is certified by its operands.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    EmptyWindow,
    FieldMismatch,
    NoBalance,
    OddExponentPresent,
    OddValuation,
    WindowExhausted,
    WrongCharacteristic,
)

DEFAULT_WINDOW = 32


class LaurentSeries:
    """Immutable truncated Laurent series sum_{lo <= k < trunc} c_k t^k."""

    __slots__ = ("field", "lo", "coeffs", "trunc")

    def __init__(self, field, lo, coeffs, trunc):
        coeffs = list(coeffs)[: max(trunc - lo, 0)]
        start = 0
        while start < len(coeffs) and not coeffs[start]:
            start += 1
        self.field = field
        self.trunc = trunc
        if start == len(coeffs):
            self.lo = trunc
            self.coeffs = ()
        else:
            self.lo = lo + start
            end = len(coeffs)
            while not coeffs[end - 1]:
                end -= 1
            self.coeffs = tuple(coeffs[start:end])

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def from_terms(cls, field, terms, trunc):
        """Series from an exponent -> code mapping; terms at or past trunc are dropped."""
        terms = {k: c for k, c in terms.items() if c and k < trunc}
        if not terms:
            return cls(field, trunc, (), trunc)
        lo = min(terms)
        coeffs = [0] * (trunc - lo)
        for k, c in terms.items():
            coeffs[k - lo] = field.add(coeffs[k - lo], c)
        return cls(field, lo, coeffs, trunc)

    @classmethod
    def monomial(cls, field, k, coeff=1, window=DEFAULT_WINDOW):
        return cls(field, k, [coeff], k + window)

    @classmethod
    def one(cls, field, window=DEFAULT_WINDOW):
        return cls.monomial(field, 0, 1, window)

    @classmethod
    def zero(cls, field, trunc):
        return cls(field, trunc, (), trunc)

    @classmethod
    def polynomial(cls, field, exponents, trunc):
        """Sum of t^k over the given exponents, each with coefficient 1."""
        terms = {}
        for k in exponents:
            terms[k] = field.add(terms.get(k, 0), 1)
        return cls.from_terms(field, terms, trunc)

    def _new(self, lo, coeffs, trunc):
        return LaurentSeries(self.field, lo, coeffs, trunc)

    # ------------------------------------------------------------------
    # Inspection
    # ------------------------------------------------------------------

    def is_zero(self):
        """True when every certified coefficient vanishes."""
        return not self.coeffs

    def val(self):
        if not self.coeffs:
            raise EmptyWindow(f"Series is zero up to t^{self.trunc}", trunc=self.trunc)
        return self.lo

    def leading_coeff(self):
        if not self.coeffs:
            raise EmptyWindow(f"Series is zero up to t^{self.trunc}", trunc=self.trunc)
        return self.coeffs[0]

    def coeff(self, k):
        if k >= self.trunc:
            raise WindowExhausted(f"Coefficient of t^{k} is past the window t^{self.trunc}", exponent=k, trunc=self.trunc)
        if k < self.lo or k >= self.lo + len(self.coeffs):
            return 0
        return self.coeffs[k - self.lo]

    def terms(self):
        """Nonzero certified terms as {exponent: code}."""
        return {self.lo + i: c for i, c in enumerate(self.coeffs) if c}

    @property
    def precision(self):
        """Number of certified coefficients past the valuation."""
        return self.trunc - self.lo

    def is_unit(self):
        return bool(self.coeffs) and self.lo == 0

    def at_zero(self):
        """Constant coefficient of a series without poles (its residue-field value)."""
        if self.coeffs and self.lo < 0:
            raise ValueError(f"Series has a pole of order {-self.lo}")
        return self.coeff(0)

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, LaurentSeries):
            raise TypeError(f"Expected LaurentSeries, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __add__(self, other):
        self._check(other)
        trunc = min(self.trunc, other.trunc)
        lo = min(self.lo, other.lo, trunc)
        add = self.field.add
        coeffs = [0] * (trunc - lo)
        for series in (self, other):
            for i, c in enumerate(series.coeffs):
                k = series.lo + i - lo
                if k < len(coeffs):
                    coeffs[k] = add(coeffs[k], c)
        return self._new(lo, coeffs, trunc)

    def __neg__(self):
        neg = self.field.neg
        return self._new(self.lo, [neg(c) for c in self.coeffs], self.trunc)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if not c:
            return LaurentSeries.zero(self.field, self.trunc)
        mul = self.field.mul
        return self._new(self.lo, [mul(c, v) for v in self.coeffs], self.trunc)

    def shift(self, k):
        """Multiply by t^k."""
        return self._new(self.lo + k, self.coeffs, self.trunc + k)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        trunc = min(self.lo + other.trunc, other.lo + self.trunc)
        lo = self.lo + other.lo
        if lo >= trunc:
            return LaurentSeries.zero(self.field, trunc)
        size = trunc - lo
        mul, add = self.field.mul, self.field.add
        out = [0] * size
        for i, a in enumerate(self.coeffs[:size]):
            if not a:
                continue
            for j, b in enumerate(other.coeffs[: size - i]):
                if b:
                    out[i + j] = add(out[i + j], mul(a, b))
        return self._new(lo, out, trunc)

    __rmul__ = __mul__

    def inv(self):
        """Multiplicative inverse to the certified relative precision."""
        v = self.val()
        field = self.field
        precision = self.trunc - v
        c0_inv = field.inv(self.coeffs[0])
        f = list(self.coeffs) + [0] * max(precision - len(self.coeffs), 0)
        g = [c0_inv]
        mul, add = field.mul, field.add
        for k in range(1, precision):
            acc = 0
            for j in range(1, k + 1):
                if f[j]:
                    acc = add(acc, mul(f[j], g[k - j]))
            g.append(field.neg(mul(acc, c0_inv)))
        return self._new(-v, g, -v + precision)

    def __truediv__(self, other):
        return self * other.inv()

    def div(self, other):
        return self / other

    def __pow__(self, k):
        if k < 0:
            return self.inv() ** (-k)
        result = LaurentSeries.one(self.field, window=self.precision)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def sqrt(self):
        """The unique g with g^2 = self in characteristic 2."""
        field = self.field
        if field.p != 2:
            raise WrongCharacteristic("Series square roots need characteristic 2", p=field.p)
        v = self.val()
        if v % 2:
            raise OddValuation(f"Valuation {v} is odd", valuation=v)
        odd = [self.lo + i for i, c in enumerate(self.coeffs) if c and (self.lo + i) % 2]
        if odd:
            raise OddExponentPresent(f"Odd exponents present: {odd[:5]}", exponents=odd)
        half = [field.sqrt(c) for c in self.coeffs[::2]]
        return self._new(v // 2, half, (self.trunc + 1) // 2)

    def with_window(self, trunc):
        """Same series with the window cut down to trunc."""
        if trunc > self.trunc:
            raise WindowExhausted(f"Cannot extend window {self.trunc} to {trunc}")
        return self._new(self.lo, self.coeffs, trunc)

    def map_coefficients(self, fn):
        return self._new(self.lo, [fn(c) for c in self.coeffs], self.trunc)

    def frobenius(self):
        """Square every coefficient (not the variable)."""
        return self.map_coefficients(self.field.frobenius)

    # ------------------------------------------------------------------
    # Comparison and text
    # ------------------------------------------------------------------

    def agrees_with(self, other, upto=None):
        """Equality of all coefficients both series certify (below upto if given)."""
        self._check(other)
        limit = min(self.trunc, other.trunc)
        if upto is not None:
            limit = min(limit, upto)
        low = min(self.lo, other.lo)
        return all(self.coeff(k) == other.coeff(k) for k in range(low, limit))

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (
            self.field == other.field
            and self.trunc == other.trunc
            and self.lo == other.lo
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field.spec, self.lo, self.coeffs, self.trunc))

    def to_text(self):
        rel = self.trunc - self.lo
        if not self.coeffs:
            return f"O(t^{self.trunc})"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append("t" if c == 1 else f"{c}*t")
            else:
                parts.append(f"t^{i}" if c == 1 else f"{c}*t^{i}")
        parts.append(f"O(t^{rel})")
        return f"t^{self.lo}*(" + " + ".join(parts) + ")"

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"LaurentSeries({self.to_text()!r})"


def _half_denominator(value):
    value = Fraction(value)
    if value.denominator not in (1, 2):
        raise ValueError(f"{value} does not have denominator 1 or 2")
    return value


@dataclass(frozen=True)
class ValSymbol:
    """
    Valuation const + coef * nu of a named quantity, with nu left symbolic.
    """

    name: str
    const: Fraction = Fraction(0)
    coef: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "const", _half_denominator(self.const))
        object.__setattr__(self, "coef", _half_denominator(self.coef))

    def at(self, nu):
        return self.const + self.coef * Fraction(nu)

    def __add__(self, other):
        if isinstance(other, ValSymbol):
            return ValSymbol(f"{self.name}*{other.name}", self.const + other.const, self.coef + other.coef)
        return ValSymbol(self.name, self.const + Fraction(other), self.coef)

    def __sub__(self, other):
        return ValSymbol(f"{self.name}/{other.name}", self.const - other.const, self.coef - other.coef)

    def half(self):
        """Valuation of the square root."""
        return ValSymbol(f"sqrt({self.name})", self.const / 2, self.coef / 2)

    def renamed(self, name):
        return ValSymbol(name, self.const, self.coef)

    def solve_equal(self, other):
        """The nu at which both valuations agree."""
        if self.coef == other.coef:
            raise NoBalance(
                f"{self} and {other} have the same slope in nu",
                left=str(self),
                right=str(other),
            )
        return (other.const - self.const) / (self.coef - other.coef)

    def to_text(self):
        parts = []
        if self.const:
            parts.append(str(self.const))
        if self.coef:
            coef = "" if self.coef == 1 else "-" if self.coef == -1 else f"{self.coef}*"
            parts.append(f"{coef}nu")
        return " + ".join(parts).replace("+ -", "- ") or "0"

    def __str__(self):
        return self.to_text()

    def to_dict(self):
        return {"name": self.name, "valuation": self.to_text()}

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
Exact arithmetic in GF(2^n) and GF(3^n).

Elements are integer codes whose base-p digits are the coefficients of the
polynomial-basis representation (digit i is the coefficient of x^i).  This
is the same integer representation galois uses, so codes move freely
between scalar arithmetic here and vectorised galois FieldArrays.

Scalar arithmetic runs on exp/log tables built once per field from the
galois primitive element.  Addition in characteristic 2 is XOR; in
characteristic 3 it goes through a Zech logarithm table.
"""

import logging
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import galois
import numpy as np

from .errors import DivideByZero, FieldMismatch, RejectsReducibleModulus, WrongCharacteristic

logger = logging.getLogger(__name__)

MAX_DEGREE = {2: 20, 3: 12}
CONWAY_MAX_DEGREE = 12

# Sparse irreducible (primitive) polynomials over GF(2) for degrees past the
# Conway range, as integer codes.
FALLBACK_MODULI = {
    13: (1 << 13) | 0b11011,  # x^13 + x^4 + x^3 + x + 1
    14: (1 << 14) | (1 << 10) | (1 << 6) | 0b11,  # x^14 + x^10 + x^6 + x + 1
    15: (1 << 15) | 0b11,  # x^15 + x + 1
    16: (1 << 16) | (1 << 12) | 0b1011,  # x^16 + x^12 + x^3 + x + 1
    17: (1 << 17) | 0b1001,  # x^17 + x^3 + 1
    18: (1 << 18) | (1 << 7) | 1,  # x^18 + x^7 + 1
    19: (1 << 19) | 0b100111,  # x^19 + x^5 + x^2 + x + 1
    20: (1 << 20) | 0b1001,  # x^20 + x^3 + 1
}

_SPEC_RE = re.compile(r"^\s*(\d+)\s*\^\s*(\d+)\s*(?:/\s*(0[xX][0-9a-fA-F]+|\d+))?\s*$")


def default_modulus(p, n):
    """Conway polynomial for n <= 12, fallback table beyond (p = 2 only)."""
    if n <= CONWAY_MAX_DEGREE:
        return int(galois.conway_poly(p, n))
    if p == 2 and n in FALLBACK_MODULI:
        return FALLBACK_MODULI[n]
    raise ValueError(f"No default modulus for GF({p}^{n})")


def digits(code, p, length):
    """Base-p digits of code, lowest first, padded to length."""
    out = []
    for _ in range(length):
        code, d = divmod(code, p)
        out.append(d)
    return out


@dataclass(frozen=True)
class FieldSpec:
    """Characteristic, extension degree and modulus of a finite field."""

    p: int
    n: int
    modulus_code: int = 0

    def __post_init__(self):
        if self.p not in MAX_DEGREE:
            raise WrongCharacteristic(
                f"Only characteristics 2 and 3 are supported, got {self.p}", p=self.p
            )
        if not 1 <= self.n <= MAX_DEGREE[self.p]:
            raise ValueError(
                f"Extension degree {self.n} out of range for p={self.p} "
                f"(1..{MAX_DEGREE[self.p]})"
            )
        if not self.modulus_code:
            object.__setattr__(self, "modulus_code", default_modulus(self.p, self.n))

    @property
    def q(self):
        return self.p**self.n

    @property
    def modulus(self):
        """Modulus coefficients, constant term first."""
        return digits(self.modulus_code, self.p, self.n + 1)

    @classmethod
    def parse(cls, text):
        """Parse "p^n" or "p^n/c" (c decimal or 0x-hex)."""
        match = _SPEC_RE.match(text or "")
        if not match:
            raise ValueError(f"Invalid field spec: {text!r} (expected p^n/c)")
        p, n, modulus = match.groups()
        return cls(int(p), int(n), int(modulus, 0) if modulus else 0)

    def format(self):
        modulus = hex(self.modulus_code) if self.p == 2 else str(self.modulus_code)
        return f"{self.p}^{self.n}/{modulus}"

    def __str__(self):
        return self.format()


class Field:
    """
    Immutable handle on GF(p^n).

    All methods take and return integer codes.  Use element() for operator
    overloading on single values.
    """

    def __init__(self, spec):
        self.spec = spec
        self.p = spec.p
        self.n = spec.n
        self.q = spec.q
        self.char = spec.p

        prime_field = galois.GF(self.p)
        modulus = galois.Poly.Int(spec.modulus_code, field=prime_field)
        if modulus.degree != self.n or not modulus.is_monic:
            raise RejectsReducibleModulus(
                f"Modulus {spec.modulus_code} is not monic of degree {self.n}",
                modulus=spec.modulus_code,
            )
        if not modulus.is_irreducible():
            raise RejectsReducibleModulus(
                f"Modulus {modulus} is reducible over GF({self.p})",
                modulus=spec.modulus_code,
            )

        if self.n == 1:
            self.GF = prime_field
        else:
            self.GF = galois.GF(self.q, irreducible_poly=modulus)

        self._build_tables()
        logger.debug("Built field %s", spec)

    def _build_tables(self):
        order = self.q - 1
        generator = self.GF.primitive_element
        powers = generator ** np.arange(order)
        exp = powers.view(np.ndarray).astype(np.int64).tolist()
        log = [0] * self.q
        for i, value in enumerate(exp):
            log[value] = i
        self.primitive_element = int(generator)
        self._order = order
        self._exp = exp + exp
        self._log = log
        self._half = order // 2
        self._zech = None
        if self.p == 3:
            shifted = (powers + self.GF(1)).view(np.ndarray).astype(np.int64).tolist()
            self._zech = [log[v] if v else -1 for v in shifted]

    # ------------------------------------------------------------------
    # Scalar arithmetic on codes
    # ------------------------------------------------------------------

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def add(self, a, b):
        if self.p == 2:
            return a ^ b
        if not a:
            return b
        if not b:
            return a
        la = self._log[a]
        z = self._zech[(self._log[b] - la) % self._order]
        if z < 0:
            return 0
        return self._exp[la + z]

    def neg(self, a):
        if self.p == 2 or not a:
            return a
        return self._exp[self._log[a] + self._half]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if not a or not b:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a):
        if not a:
            raise DivideByZero("Inverse of zero")
        return self._exp[(self._order - self._log[a]) % self._order]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if e == 0:
            return 1
        if not a:
            if e < 0:
                raise DivideByZero("Negative power of zero")
            return 0
        return self._exp[(self._log[a] * e) % self._order]

    def scalar(self, k):
        """Image of the integer k in the prime field."""
        return k % self.p

    def frobenius(self, a):
        """x -> x^p."""
        return self.pow(a, self.p)

    def trace(self, a):
        """Absolute trace to GF(p), as a prime-field code."""
        total, term = 0, a
        for _ in range(self.n):
            total = self.add(total, term)
            term = self.frobenius(term)
        return total

    def is_square(self, a):
        if self.p == 2 or not a:
            return True
        return self._log[a] % 2 == 0

    def sqrt(self, a):
        """Unique square root in characteristic 2: a^(2^(n-1))."""
        if self.p != 2:
            raise WrongCharacteristic("sqrt_char2 needs characteristic 2", p=self.p)
        return self.pow(a, 1 << (self.n - 1))

    def square_root(self, a) -> Optional[int]:
        """Some square root of a in any characteristic, or None for a non-square."""
        if self.p == 2:
            return self.sqrt(a)
        if not a:
            return 0
        if not self.is_square(a):
            return None
        return self._exp[self._log[a] // 2]

    def artin_schreier_solve(self, mu) -> Optional[int]:
        """
        Solve s^2 + s = mu in characteristic 2.

        Returns the solution with zero constant coefficient (the other one is
        s + 1), or None when Tr(mu) = 1.
        """
        if self.p != 2:
            raise WrongCharacteristic("Artin-Schreier solving needs characteristic 2", p=self.p)
        if self.trace(mu):
            return None
        if not mu:
            return 0

        gf2 = galois.GF(2)
        columns = []
        for i in range(self.n):
            basis = 1 << i
            image = self.add(self.mul(basis, basis), basis)
            columns.append(digits(image, 2, self.n))
        augmented = np.column_stack([np.array(columns).T, digits(mu, 2, self.n)])
        reduced = gf2(augmented).row_reduce().view(np.ndarray)

        solution = 0
        for row in reduced:
            nonzero = np.flatnonzero(row[: self.n])
            if nonzero.size == 0:
                continue
            if row[self.n]:
                solution |= 1 << int(nonzero[0])
        if solution & 1:
            solution ^= 1
        return solution

    # ------------------------------------------------------------------
    # Sampling and enumeration
    # ------------------------------------------------------------------

    def elements(self):
        return range(self.q)

    def random_element(self, rng):
        return int(rng.integers(self.q))

    def random_nonzero(self, rng):
        return int(rng.integers(1, self.q))

    # ------------------------------------------------------------------
    # Bridges to galois
    # ------------------------------------------------------------------

    def array(self, codes):
        """galois FieldArray over this field."""
        return self.GF(np.asarray(codes, dtype=np.int64))

    def poly(self, coeffs):
        """galois Poly from coefficients given constant term first."""
        coeffs = list(coeffs) or [0]
        return galois.Poly(coeffs[::-1], field=self.GF)

    def element(self, code):
        return FieldElement(self, self.check_code(int(code)))

    def __call__(self, code):
        return self.element(code)

    def check_code(self, code):
        if not 0 <= code < self.q:
            raise ValueError(f"{code} is not an element code of GF({self.p}^{self.n})")
        return code

    def format(self, code):
        return str(code)

    def __eq__(self, other):
        return isinstance(other, Field) and other.spec == self.spec

    def __hash__(self):
        return hash(self.spec)

    def __repr__(self):
        return f"Field({self.spec})"


@dataclass(frozen=True, eq=False)
class FieldElement:
    """A single element, carrying its field for operator overloading."""

    field: Field
    code: int

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.code
        return self.field.check_code(int(other))

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.code, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.code, self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._other(other), self.code))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.code, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.code, self._other(other)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def __pow__(self, e):
        return FieldElement(self.field, self.field.pow(self.code, e))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.code))

    def frobenius(self):
        return FieldElement(self.field, self.field.frobenius(self.code))

    def trace(self):
        return self.field.trace(self.code)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.code == other.code
        if isinstance(other, int):
            return self.code == other
        return NotImplemented

    def __hash__(self):
        return hash((self.field.spec, self.code))

    def __bool__(self):
        return self.code != 0

    def __int__(self):
        return self.code

    def __repr__(self):
        return f"{self.code}@GF({self.field.p}^{self.field.n})"


class Embedding:
    """Field embedding GF(p^m) -> GF(p^n) for m | n."""

    def __init__(self, small, big):
        if small.p != big.p or big.n % small.n:
            raise FieldMismatch(f"No embedding {small.spec} -> {big.spec}")
        self.small = small
        self.big = big
        self.generator_image = self._generator_image()
        powers = [1]
        for _ in range(1, small.n):
            powers.append(big.mul(powers[-1], self.generator_image))
        self._powers = powers

    def _is_root(self, value):
        acc = 0
        for c in reversed(self.small.spec.modulus):
            acc = self.big.add(self.big.mul(acc, value), c)
        return acc == 0

    def _generator_image(self):
        if self.small.n == 1:
            return 0
        # Conway-compatible choice: primitive element maps to beta^((Q-1)/(q-1)).
        k = (self.big.q - 1) // (self.small.q - 1)
        log_x = self.small._log[self.small.p]
        candidate = self.big.pow(self.big.primitive_element, k * log_x)
        if self._is_root(candidate):
            return candidate
        roots = self.big.poly(self.small.spec.modulus).roots()
        return int(min(int(r) for r in roots))

    def __call__(self, code):
        if self.small.n == 1:
            return code
        out = 0
        for digit, power in zip(digits(code, self.small.p, self.small.n), self._powers):
            if digit:
                out = self.big.add(out, self.big.mul(self.big.scalar(digit), power))
        return out


@lru_cache(maxsize=None)
def get_field(spec):
    """Cached field handle for a FieldSpec."""
    return Field(spec)


def field_new(spec):
    """Field handle supporting add, mul, inv, pow, frobenius, trace and enumeration."""
    if isinstance(spec, str):
        spec = FieldSpec.parse(spec)
    return get_field(spec)


def GF(p, n, modulus_code=0):
    return get_field(FieldSpec(p, n, modulus_code))


@lru_cache(maxsize=None)
def subfield_embed(small, big):
    return Embedding(small, big)


def extension(field, k):
    """GF(p^(n*k)) with default modulus, plus the embedding of field into it."""
    big = GF(field.p, field.n * k)
    return big, subfield_embed(field, big)


def sqrt_char2(x):
    """Square root of a FieldElement in characteristic 2."""
    return FieldElement(x.field, x.field.sqrt(x.code))


def artin_schreier_solve(mu):
    """Solution s of s^2 + s = mu as a FieldElement, or None if Tr(mu) = 1."""
    s = mu.field.artin_schreier_solve(mu.code)
    return None if s is None else FieldElement(mu.field, s)

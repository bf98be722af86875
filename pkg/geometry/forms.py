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
Sparse multivariate polynomials over GF(p^n).

A SparseForm maps exponent tuples to nonzero coefficient codes.  Forms are
immutable; every operation returns a new form.  The canonical term order is
graded lexicographic with x00 > x01 > x10 > x11, largest term first, and it
fixes both equality-independent serialisation and the leading term used by
exact division.
"""

import itertools
from dataclasses import dataclass
from typing import Optional

import galois
import numpy as np

from .errors import (
    ArityMismatch,
    DegenerateSystem,
    DegreeMismatch,
    DivideByZero,
    ExponentOverflow,
    FieldMismatch,
)

MAX_EXPONENT = 255
P3_NAMES = ("x00", "x01", "x10", "x11")
Z_NAMES = ("z00", "z01", "z10", "z11")


def default_names(nvars):
    if nvars == 4:
        return P3_NAMES
    return tuple(f"u{i}" for i in range(nvars))


def order_key(exps):
    """Graded lexicographic sort key (larger key = larger term)."""
    return (sum(exps), exps)


def monomials(nvars, degree):
    """All exponent tuples of the given total degree, largest first."""
    out = [
        exps
        for exps in itertools.product(range(degree + 1), repeat=nvars)
        if sum(exps) == degree
    ]
    out.sort(key=order_key, reverse=True)
    return out


class SparseForm:
    """Polynomial in nvars variables over a Field, stored sparsely."""

    __slots__ = ("field", "nvars", "_terms", "names", "_degree")

    def __init__(self, field, nvars, terms=None, degree=None, names=None):
        self.field = field
        self.nvars = nvars
        self.names = names or default_names(nvars)
        clean = {}
        for exps, coeff in (terms or {}).items():
            if not coeff:
                continue
            if len(exps) != nvars:
                raise ArityMismatch(f"Exponent {exps} does not have {nvars} entries")
            if max(exps, default=0) > MAX_EXPONENT:
                raise ExponentOverflow(f"Exponent {exps} exceeds {MAX_EXPONENT}")
            clean[tuple(exps)] = coeff
        if degree is not None:
            for exps in clean:
                if sum(exps) != degree:
                    raise DegreeMismatch(
                        f"Term {exps} has degree {sum(exps)}, declared {degree}"
                    )
        self._terms = clean
        self._degree = degree

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def zero(cls, field, nvars=4, names=None):
        return cls(field, nvars, {}, names=names)

    @classmethod
    def constant(cls, field, nvars, value, names=None):
        return cls(field, nvars, {(0,) * nvars: value}, names=names)

    @classmethod
    def variable(cls, field, nvars, index, names=None):
        exps = [0] * nvars
        exps[index] = 1
        return cls(field, nvars, {tuple(exps): 1}, names=names)

    @classmethod
    def variables(cls, field, nvars=4, names=None):
        return [cls.variable(field, nvars, i, names=names) for i in range(nvars)]

    @classmethod
    def monomial(cls, field, exps, coeff=1, names=None):
        return cls(field, len(exps), {tuple(exps): coeff}, names=names)

    def _new(self, terms, degree=None):
        return SparseForm(self.field, self.nvars, terms, degree=degree, names=self.names)

    # ------------------------------------------------------------------
    # Inspection
    # ------------------------------------------------------------------

    @property
    def terms(self):
        """Exponent -> coefficient code mapping (read-only by convention)."""
        return self._terms

    def items(self):
        """Terms in canonical order, largest first."""
        return sorted(self._terms.items(), key=lambda kv: order_key(kv[0]), reverse=True)

    def coefficient(self, exps):
        return self._terms.get(tuple(exps), 0)

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    @property
    def degree(self):
        """Declared degree, or the common degree of all terms when homogeneous."""
        if self._degree is not None:
            return self._degree
        return self.homogeneous_degree()

    def homogeneous_degree(self) -> Optional[int]:
        degrees = {sum(exps) for exps in self._terms}
        if len(degrees) == 1:
            return degrees.pop()
        return None

    def is_homogeneous(self):
        return self.is_zero() or self.homogeneous_degree() is not None

    def total_degree(self):
        return max((sum(exps) for exps in self._terms), default=-1)

    def degree_in(self, var):
        return max((exps[var] for exps in self._terms), default=-1)

    def involves(self, var):
        return any(exps[var] for exps in self._terms)

    def leading_term(self):
        if not self._terms:
            raise DivideByZero("Zero form has no leading term")
        exps = max(self._terms, key=order_key)
        return exps, self._terms[exps]

    # ------------------------------------------------------------------
    # Ring arithmetic
    # ------------------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, SparseForm):
            raise TypeError(f"Expected SparseForm, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        if other.nvars != self.nvars:
            raise ArityMismatch(f"{self.nvars} vs {other.nvars} variables")

    def __add__(self, other):
        self._check(other)
        add = self.field.add
        terms = dict(self._terms)
        for exps, c in other._terms.items():
            terms[exps] = add(terms.get(exps, 0), c)
        return self._new(terms)

    def __neg__(self):
        neg = self.field.neg
        return self._new({e: neg(c) for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if not c:
            return self._new({})
        mul = self.field.mul
        return self._new({e: mul(c, v) for e, v in self._terms.items()}, self._degree)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        mul, add = self.field.mul, self.field.add
        out = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                out[exps] = add(out.get(exps, 0), mul(c1, c2))
        return self._new(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        result = SparseForm.constant(self.field, self.nvars, 1, names=self.names)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, SparseForm):
            return NotImplemented
        return (
            self.field == other.field
            and self.nvars == other.nvars
            and self._terms == other._terms
        )

    def __hash__(self):
        return hash((self.field.spec, self.nvars, frozenset(self._terms.items())))

    # ------------------------------------------------------------------
    # Evaluation
    # ------------------------------------------------------------------

    def eval(self, point):
        """Value at a point given as PointP3 or a sequence of codes."""
        coords = point.coords if isinstance(point, PointP3) else tuple(point)
        if len(coords) != self.nvars:
            raise ArityMismatch(f"Point has {len(coords)} coordinates, form has {self.nvars}")
        if isinstance(point, PointP3) and point.field != self.field:
            raise FieldMismatch(f"{point.field} vs {self.field}")
        mul, add, pw = self.field.mul, self.field.add, self.field.pow
        total = 0
        for exps, c in self._terms.items():
            value = c
            for x, e in zip(coords, exps):
                if e:
                    value = mul(value, pw(x, e))
                    if not value:
                        break
            total = add(total, value)
        return total

    def eval_array(self, coords):
        """
        Vectorised evaluation on a galois FieldArray of shape (m, nvars).

        Returns a FieldArray of length m.
        """
        GF = self.field.GF
        m = coords.shape[0]
        result = GF.Zeros(m)
        cache = {}
        for exps, c in self._terms.items():
            value = GF.Ones(m) * GF(c)
            for i, e in enumerate(exps):
                if e:
                    key = (i, e)
                    if key not in cache:
                        cache[key] = coords[:, i] ** e
                    value = value * cache[key]
            result = result + value
        return result

    # ------------------------------------------------------------------
    # Calculus and composition
    # ------------------------------------------------------------------

    def partial(self, i):
        """Formal partial derivative; exponents are reduced mod p as coefficients."""
        if not 0 <= i < self.nvars:
            raise ArityMismatch(f"No variable {i} in {self.nvars} variables")
        mul, scalar = self.field.mul, self.field.scalar
        out = {}
        for exps, c in self._terms.items():
            e = exps[i]
            factor = scalar(e)
            if not factor:
                continue
            lowered = exps[:i] + (e - 1,) + exps[i + 1 :]
            out[lowered] = mul(factor, c)
        degree = self._degree - 1 if self._degree else None
        return self._new(out, degree)

    def gradient(self):
        return [self.partial(i) for i in range(self.nvars)]

    def substitute(self, gs, check_degree=True):
        """
        Composition f(g_0, ..., g_{n-1}).

        With check_degree the g's must be homogeneous of one common degree.
        """
        if len(gs) != self.nvars:
            raise ArityMismatch(f"Need {self.nvars} substitutions, got {len(gs)}")
        target = gs[0]
        for g in gs:
            target._check(g)
        if check_degree:
            degrees = {g.homogeneous_degree() for g in gs if not g.is_zero()}
            if None in degrees or len(degrees) > 1:
                raise DegreeMismatch(f"Substituted forms have degrees {sorted(map(str, degrees))}")

        one = SparseForm.constant(self.field, target.nvars, 1, names=target.names)
        powers = [{0: one, 1: g} for g in gs]

        def power(i, e):
            cache = powers[i]
            if e not in cache:
                half = power(i, e // 2)
                value = half * half
                if e % 2:
                    value = value * gs[i]
                cache[e] = value
            return cache[e]

        add, mul = self.field.add, self.field.mul
        out = {}
        for exps, c in self.items():
            product = None
            for i, e in enumerate(exps):
                if e:
                    factor = power(i, e)
                    product = factor if product is None else product * factor
                    if product.is_zero():
                        break
            if product is None:
                product = one
            for e, v in product._terms.items():
                out[e] = add(out.get(e, 0), mul(c, v))
        return SparseForm(self.field, target.nvars, out, names=target.names)

    def linear_change(self, matrix):
        """Substitute x_i -> sum_j M[i][j] x_j."""
        xs = SparseForm.variables(self.field, self.nvars, names=self.names)
        images = []
        for row in matrix:
            image = SparseForm.zero(self.field, self.nvars, names=self.names)
            for c, x in zip(row, xs):
                if c:
                    image = image + x.scale(c)
            images.append(image)
        return self.substitute(images, check_degree=False)

    def fix(self, var, value):
        """Set variable var to the constant value and drop it."""
        mul, add, pw = self.field.mul, self.field.add, self.field.pow
        names = self.names[:var] + self.names[var + 1 :]
        out = {}
        for exps, c in self._terms.items():
            v = mul(c, pw(value, exps[var]))
            if v:
                reduced = exps[:var] + exps[var + 1 :]
                out[reduced] = add(out.get(reduced, 0), v)
        return SparseForm(self.field, self.nvars - 1, out, names=names)

    def dehomogenize(self, chart):
        return self.fix(chart, 1)

    def map_field(self, embedding):
        """Same form with coefficients pushed through a field embedding."""
        return SparseForm(
            embedding.big,
            self.nvars,
            {e: embedding(c) for e, c in self._terms.items()},
            degree=self._degree,
            names=self.names,
        )

    def coefficients_in(self, var):
        """Split as sum_k c_k * var^k; returns {k: c_k} with var removed from c_k."""
        out = {}
        for exps, c in self._terms.items():
            k = exps[var]
            base = exps[:var] + (0,) + exps[var + 1 :]
            out.setdefault(k, {})[base] = c
        return {k: self._new(t) for k, t in out.items()}

    # ------------------------------------------------------------------
    # Division
    # ------------------------------------------------------------------

    def exact_divide(self, g) -> Optional["SparseForm"]:
        """
        Quotient q with self = q * g, or None when g does not divide self.

        Long division by g alone against its graded-lex leading term, checked
        by re-multiplication.
        """
        self._check(g)
        if g.is_zero():
            raise DivideByZero("Division by the zero form")
        if self.is_zero():
            return self._new({})
        lead_exps, lead_c = g.leading_term()
        inv_lead = self.field.inv(lead_c)
        mul, sub = self.field.mul, self.field.sub
        g_terms = list(g._terms.items())

        remainder = dict(self._terms)
        quotient = {}
        while remainder:
            exps = max(remainder, key=order_key)
            shift = tuple(a - b for a, b in zip(exps, lead_exps))
            if min(shift) < 0:
                return None
            factor = mul(remainder[exps], inv_lead)
            quotient[shift] = factor
            for ge, gc in g_terms:
                target = tuple(a + b for a, b in zip(shift, ge))
                value = sub(remainder.get(target, 0), mul(factor, gc))
                if value:
                    remainder[target] = value
                else:
                    remainder.pop(target, None)

        result = self._new(quotient)
        if result * g != self:
            return None
        return result

    def sqrt(self) -> Optional["SparseForm"]:
        """
        Square root G with G^2 = self in odd characteristic, or None.

        Leading coefficient must be a square; callers normalise first.
        """
        if self.field.p == 2:
            raise NotImplementedError("Use Frobenius in characteristic 2")
        if self.is_zero():
            return self._new({})
        field = self.field
        lead_exps, lead_c = self.leading_term()
        if any(e % 2 for e in lead_exps) or not field.is_square(lead_c):
            return None
        root_c = field.square_root(lead_c)
        root = self._new({tuple(e // 2 for e in lead_exps): root_c})
        two_lead = field.mul(field.scalar(2), root_c)
        root_lead = tuple(e // 2 for e in lead_exps)

        remainder = self - root * root
        steps = 0
        while not remainder.is_zero():
            exps, c = remainder.leading_term()
            shift = tuple(a - b for a, b in zip(exps, root_lead))
            if min(shift) < 0 or order_key(shift) >= order_key(root_lead) or steps > len(self._terms) ** 2 + 64:
                return None
            term = self._new({shift: field.div(c, two_lead)})
            root = root + term
            remainder = self - root * root
            steps += 1
        return root

    # ------------------------------------------------------------------
    # Text
    # ------------------------------------------------------------------

    def to_text(self):
        """Canonical text: graded-lex order, coefficient 1 and exponent 1 elided."""
        if not self._terms:
            return "0"
        parts = []
        for exps, c in self.items():
            factors = []
            for name, e in zip(self.names, exps):
                if e == 1:
                    factors.append(name)
                elif e:
                    factors.append(f"{name}^{e}")
            if c != 1 or not factors:
                factors.insert(0, str(c))
            parts.append("*".join(factors))
        return "+".join(parts)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"SparseForm({self.to_text()!r}, {self.field.spec})"


def parse_form(text, field, names=P3_NAMES):
    """Parse the canonical polynomial grammar."""
    nvars = len(names)
    index = {name: i for i, name in enumerate(names)}
    add, mul = field.add, field.mul
    terms = {}
    text = "".join((text or "").split())
    if text in ("", "0"):
        return SparseForm(field, nvars, {}, names=names)
    for chunk in text.split("+"):
        coeff = 1
        exps = [0] * nvars
        for factor in chunk.split("*"):
            name, _, power = factor.partition("^")
            if name in index:
                exps[index[name]] += int(power) if power else 1
            else:
                coeff = mul(coeff, field.check_code(int(name, 0)))
        key = tuple(exps)
        terms[key] = add(terms.get(key, 0), coeff)
    return SparseForm(field, nvars, terms, names=names)


@dataclass(frozen=True)
class PointP3:
    """Projective point with its first nonzero coordinate scaled to 1."""

    field: object
    coords: tuple

    @classmethod
    def of(cls, field, coords):
        coords = tuple(int(c) for c in coords)
        for c in coords:
            if c:
                inv = field.inv(c)
                return cls(field, tuple(field.mul(inv, x) for x in coords))
        raise ValueError("The zero vector is not a projective point")

    @classmethod
    def parse(cls, text, field):
        body = text.strip().strip("()")
        return cls.of(field, [field.check_code(int(part, 0)) for part in body.split(":")])

    def __str__(self):
        return "(" + ":".join(str(c) for c in self.coords) + ")"

    def to_dict(self):
        return list(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]


def is_collinear(field, points):
    """True when all points lie on one projective line."""
    rows = [list(p.coords) for p in points]
    if len(rows) <= 2:
        return True
    matrix = field.array(rows)
    return int(np.linalg.matrix_rank(matrix)) <= 2


# ----------------------------------------------------------------------
# Elimination
# ----------------------------------------------------------------------


def bareiss_determinant(matrix, one, zero, is_zero, exact_div):
    """Fraction-free determinant of a square matrix over an integral domain."""
    n = len(matrix)
    if n == 0:
        return one
    m = [list(row) for row in matrix]
    negate = False
    previous = one
    for k in range(n - 1):
        if is_zero(m[k][k]):
            for i in range(k + 1, n):
                if not is_zero(m[i][k]):
                    m[k], m[i] = m[i], m[k]
                    negate = not negate
                    break
            else:
                return zero
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = exact_div(m[i][j] * pivot - m[i][k] * m[k][j], previous)
        previous = pivot
    det = m[n - 1][n - 1]
    return -det if negate else det


def sylvester_matrix(f_coeffs, g_coeffs, zero):
    """
    Sylvester matrix from coefficient lists, highest degree first.
    """
    m = len(f_coeffs) - 1
    n = len(g_coeffs) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([zero] * i + list(f_coeffs) + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + list(g_coeffs) + [zero] * (size - n - 1 - i))
    return rows


def _form_exact_div(a, b):
    q = a.exact_divide(b)
    if q is None:
        raise ArithmeticError("Bareiss step was not exact")
    return q


def resultant(f, g, var):
    """Sylvester resultant of two forms with respect to variable var."""
    f._check(g)
    zero = SparseForm.zero(f.field, f.nvars, names=f.names)
    one = SparseForm.constant(f.field, f.nvars, 1, names=f.names)
    if f.is_zero() or g.is_zero():
        return zero
    fc = f.coefficients_in(var)
    gc = g.coefficients_in(var)
    m, n = max(fc), max(gc)
    f_coeffs = [fc.get(k, zero) for k in range(m, -1, -1)]
    g_coeffs = [gc.get(k, zero) for k in range(n, -1, -1)]
    matrix = sylvester_matrix(f_coeffs, g_coeffs, zero)
    return bareiss_determinant(matrix, one, zero, SparseForm.is_zero, _form_exact_div)


def _poly_is_zero(p):
    return p.degree == 0 and int(p.coeffs[0]) == 0


def _poly_exact_div(a, b):
    quotient, remainder = divmod(a, b)
    if not _poly_is_zero(remainder):
        raise ArithmeticError("Bareiss step was not exact")
    return quotient


def to_univariate(form, var):
    """galois Poly in variable var for a form involving no other variable."""
    coeffs = [0] * (form.degree_in(var) + 1 if not form.is_zero() else 1)
    for exps, c in form.terms.items():
        if any(e for i, e in enumerate(exps) if i != var):
            raise ValueError("Form involves more than one variable")
        coeffs[exps[var]] = c
    return form.field.poly(coeffs)


def univariate_resultant(f, g, var, keep):
    """
    Resultant in var of two forms involving only var and keep, as a galois
    Poly in keep.
    """
    field = f.field
    zero = field.poly([0])
    one = field.poly([1])

    def split(form):
        parts = form.coefficients_in(var)
        top = max(parts)
        return [to_univariate(parts[k], keep) if k in parts else zero for k in range(top, -1, -1)]

    matrix = sylvester_matrix(split(f), split(g), zero)
    return bareiss_determinant(matrix, one, zero, _poly_is_zero, _poly_exact_div)


def _eliminate_step(forms, var):
    """One resultant round: drop var from a list of forms."""
    with_var = [f for f in forms if f.involves(var)]
    out = [f for f in forms if not f.involves(var)]
    if len(with_var) >= 2:
        head = with_var[0]
        for other in with_var[1:]:
            res = resultant(head, other, var)
            if res.is_zero():
                raise DegenerateSystem(f"Resultant in variable {var} vanishes identically")
            out.append(res)
    return out


def eliminate(system, chart):
    """
    Univariate eliminant for three homogeneous forms on P^3.

    The chart coordinate is set to 1; the returned galois Poly is in the first
    remaining coordinate and its roots contain that coordinate of every
    isolated solution in the chart.  Candidates must be back-substituted.
    """
    if len(system) != 3:
        raise ArityMismatch(f"Expected 3 forms, got {len(system)}")
    for f in system:
        if not f.is_homogeneous():
            raise DegreeMismatch("eliminate needs homogeneous forms")
    affine = [f.dehomogenize(chart) for f in system]
    field = affine[0].field

    stage_one = _eliminate_step(affine, 2)
    with_u1 = [f for f in stage_one if f.involves(1)]
    candidates = []
    for f in stage_one:
        if not f.involves(1) and not f.involves(2):
            candidates.append(to_univariate(f, 0))
    if len(with_u1) >= 2:
        head = with_u1[0]
        for other in with_u1[1:]:
            res = univariate_resultant(head, other, 1, 0)
            if _poly_is_zero(res):
                raise DegenerateSystem("Second resultant vanishes identically")
            candidates.append(res)

    candidates = [p for p in candidates if not _poly_is_zero(p)]
    if not candidates:
        raise DegenerateSystem("No univariate eliminant in this chart")
    result = candidates[0]
    for p in candidates[1:]:
        result = galois.gcd(result, p)
    if result.degree == 0 and int(result.coeffs[0]) != 0:
        result = field.poly([1])
    return result


# ----------------------------------------------------------------------
# Linear algebra on coefficient vectors
# ----------------------------------------------------------------------


def coefficient_matrix(forms, monomial_list=None):
    """Rows = forms, columns = monomials (union of supports unless given)."""
    if monomial_list is None:
        support = set()
        for f in forms:
            support.update(f.terms)
        monomial_list = sorted(support, key=order_key, reverse=True)
    rows = [[f.coefficient(m) for m in monomial_list] for f in forms]
    return rows, monomial_list


def express_in_span(basis, target):
    """
    Coefficients c with target = sum c_i basis_i, or None when target is not in
    the span.  The basis must be linearly independent.
    """
    if not basis:
        return None if not target.is_zero() else []
    field = target.field
    rows, _ = coefficient_matrix(list(basis) + [target])
    matrix = field.array(rows).T
    kernel = matrix.null_space()
    for vector in kernel:
        last = int(vector[-1])
        if last:
            scale = field.neg(field.inv(last))
            return [field.mul(int(v), scale) for v in vector[:-1]]
    return None


def rank(forms):
    if not forms:
        return 0
    rows, _ = coefficient_matrix(forms)
    return int(np.linalg.matrix_rank(forms[0].field.array(rows)))

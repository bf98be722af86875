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
Characteristic-3 polar maps of Heisenberg-invariant Kummer quartics.

The Verschiebung in characteristic 3 is the map given by the four partials of
a 16-nodal quartic Q.  This module finds such quartics, certifies their
nodes and tropes, recovers the image Kummer K_X from K_X o grad Q = c K_X1 Q^2
and counts fibers by resultant elimination over extension fields.
"""

import itertools
import logging
from dataclasses import dataclass, field as dc_field
from typing import Optional

import galois
import numpy as np

from utils.enumeration import DEFAULT_BUDGET, DEFAULT_CHUNK, enumerate_p3

from .errors import (
    BudgetExceeded,
    BudgetExhausted,
    ConfigViolation,
    DegenerateSystem,
    NoSolution,
    NonUniqueBeyondScalar,
    PairingAmbiguous,
    UnresolvedFiber,
    WrongCharacteristic,
)
from .forms import (
    PointP3,
    SparseForm,
    eliminate,
    monomials,
    to_univariate,
    univariate_resultant,
)
from .gf import extension, subfield_embed
from .versch import RationalMapP3

logger = logging.getLogger(__name__)

PARAM_NAMES = ("A", "B", "C", "D", "E")
NODE_COUNT = 16
TROPE_NODES = 6
BEZOUT = 27
EXPECTED_DEGREE = 11
DEFAULT_MAX_EXTENSION = 12


def heis_basis(field):
    """sum x^4, the three pair terms x_i^2 x_j^2 + x_k^2 x_l^2, and x00 x01 x10 x11."""
    x00, x01, x10, x11 = SparseForm.variables(field, 4)
    s00, s01, s10, s11 = (v * v for v in (x00, x01, x10, x11))
    return (
        s00 * s00 + s01 * s01 + s10 * s10 + s11 * s11,
        s00 * s01 + s10 * s11,
        s00 * s10 + s01 * s11,
        s00 * s11 + s01 * s10,
        x00 * x01 * x10 * x11,
    )


@dataclass(frozen=True)
class HeisQuartic:
    field: object
    params: tuple

    def __post_init__(self):
        if self.field.p != 3:
            raise WrongCharacteristic("Heisenberg quartics are built in characteristic 3", p=self.field.p)
        if len(self.params) != 5:
            raise ValueError(f"Need five parameters A..E, got {len(self.params)}")
        object.__setattr__(self, "params", tuple(self.field.check_code(int(c)) for c in self.params))
        if not any(self.params):
            raise ValueError("The zero quartic is not a surface")

    @classmethod
    def parse(cls, text, field):
        return cls(field, tuple(int(part, 0) for part in text.split(",")))

    @property
    def quartic(self):
        total = SparseForm.zero(self.field, 4)
        for c, form in zip(self.params, heis_basis(self.field)):
            if c:
                total = total + form.scale(c)
        return SparseForm(self.field, 4, total.terms, degree=4)

    def to_dict(self):
        return dict(zip(PARAM_NAMES, self.params))


@dataclass
class KummerQuartic3:
    """A 16-nodal Heisenberg quartic with its nodes and tropes over the node field."""

    heis: HeisQuartic
    field: object
    quartic: SparseForm
    nodes: list
    tropes: list = dc_field(default_factory=list)

    def to_dict(self):
        return {
            "params": self.heis.to_dict(),
            "basis": "A*sum(x^4)+B*(x00^2x01^2+x10^2x11^2)+C*(x00^2x10^2+x01^2x11^2)+D*(x00^2x11^2+x01^2x10^2)+E*x00x01x10x11",
            "field": self.heis.field.spec.format(),
            "node_field": self.field.spec.format(),
            "quartic": self.quartic.to_text(),
            "nodes": [n.to_dict() for n in self.nodes],
            "tropes": [t.to_text() for t in self.tropes],
        }


# ----------------------------------------------------------------------
# Singular points
# ----------------------------------------------------------------------


def _lift_form(form, field):
    if form.field == field:
        return form
    return form.map_field(subfield_embed(form.field, field))


def singular_points(quartic, field=None, threads=1, chunk=DEFAULT_CHUNK, budget=DEFAULT_BUDGET):
    """Rational points of P^3 where every partial of the form vanishes."""
    field = field or quartic.field
    quartic = _lift_form(quartic, field)
    partials = quartic.gradient()

    def scan(coords, start):
        mask = np.ones(coords.shape[0], dtype=bool)
        for partial in partials:
            if not partial.is_zero():
                mask &= partial.eval_array(coords).view(np.ndarray) == 0
        hits = np.flatnonzero(mask)
        return [tuple(int(c) for c in coords[i].view(np.ndarray)) for i in hits]

    found = enumerate_p3(field, scan, threads=threads, chunk=chunk, budget=budget)
    return [PointP3(field, c) for block in found for c in block]


def hessian(form):
    return [[form.partial(i).partial(j) for j in range(form.nvars)] for i in range(form.nvars)]


def hessian_rank(form, point):
    """Rank of the Hessian matrix at a point."""
    field = point.field
    form = _lift_form(form, field)
    matrix = [[h.eval(point) for h in row] for row in hessian(form)]
    return int(np.linalg.matrix_rank(field.array(matrix)))


def _plane_through(field, points):
    """Coefficient vector of the plane through three points, or None if collinear."""
    kernel = field.array([list(p.coords) for p in points]).null_space()
    if kernel.shape[0] != 1:
        return None
    return PointP3.of(field, [int(v) for v in kernel[0]])


def linear_form(field, coeffs, names=None):
    xs = SparseForm.variables(field, 4, names=names)
    total = SparseForm.zero(field, 4, names=names)
    for c, x in zip(coeffs, xs):
        if c:
            total = total + x.scale(c)
    return total


def find_tropes(field, nodes, threshold=TROPE_NODES):
    """Planes containing at least `threshold` of the nodes, in a canonical order."""
    planes = set()
    for triple in itertools.combinations(nodes, 3):
        plane = _plane_through(field, triple)
        if plane is not None:
            planes.add(plane.coords)
    dot = lambda plane, node: _dot(field, plane, node.coords)  # noqa: E731
    tropes = [p for p in sorted(planes) if sum(1 for n in nodes if not dot(p, n)) >= threshold]
    return [linear_form(field, p) for p in tropes]


def _dot(field, a, b):
    total = 0
    for x, y in zip(a, b):
        total = field.add(total, field.mul(x, y))
    return total


def _trope_coeffs(trope):
    return tuple(trope.coefficient(e) for e in ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)))


def certify_kummer(heis, threads=1, chunk=DEFAULT_CHUNK, budget=DEFAULT_BUDGET) -> Optional[KummerQuartic3]:
    """
    The certified Kummer when the quartic has exactly 16 singular points, all
    with Hessian rank 3, over its field or its quadratic extension.
    """
    field = heis.field
    quartic = heis.quartic
    nodes = singular_points(quartic, field, threads=threads, chunk=chunk, budget=budget)
    node_field = field
    if 0 < len(nodes) < NODE_COUNT:
        big, _ = extension(field, 2)
        try:
            nodes = singular_points(quartic, big, threads=threads, chunk=chunk, budget=budget)
        except BudgetExceeded:
            return None
        node_field = big
    if len(nodes) != NODE_COUNT:
        return None
    lifted = _lift_form(quartic, node_field)
    if any(hessian_rank(lifted, n) != 3 for n in nodes):
        return None
    return KummerQuartic3(heis, node_field, lifted, nodes, find_tropes(node_field, nodes))


def seeded_params(field, rng):
    """Random point of the parameter space of quartics singular at a random point."""
    coords = [field.random_element(rng) for _ in range(4)]
    if not any(coords):
        return None
    point = PointP3.of(field, coords)
    rows = []
    for i in range(4):
        rows.append([b.partial(i).eval(point) for b in heis_basis(field)])
    kernel = field.array(rows).null_space()
    if kernel.shape[0] == 0:
        return None
    weights = field.array([field.random_element(rng) for _ in range(kernel.shape[0])])
    params = weights @ kernel
    params = [int(c) for c in params]
    return tuple(params) if any(params) else None


def find_kummer(field, budget=100000, rng=None, seed=0, strategy="seeded", threads=1, chunk=DEFAULT_CHUNK):
    """Search the Heisenberg family for a 16-nodal quartic."""
    if field.p != 3:
        raise WrongCharacteristic("find_kummer needs characteristic 3", p=field.p)
    if rng is None:
        rng = np.random.default_rng(seed)
    tried = []
    for attempt in range(budget):
        if strategy == "seeded":
            params = seeded_params(field, rng)
        else:
            params = tuple(field.random_element(rng) for _ in range(5))
        if params is None or not any(params):
            continue
        tried.append(params)
        kummer = certify_kummer(HeisQuartic(field, params), threads=threads, chunk=chunk)
        if kummer is not None:
            logger.info("Found Kummer quartic %s over %s after %d samples", params, field.spec, attempt + 1)
            return kummer
    raise BudgetExhausted(
        f"No Kummer quartic after {budget} samples",
        tried=len(tried),
        last=[list(p) for p in tried[-5:]],
    )


def kummer_from_params(field, params, threads=1):
    kummer = certify_kummer(HeisQuartic(field, params), threads=threads)
    if kummer is None:
        raise ConfigViolation(f"Parameters {params} do not give a 16-nodal quartic", params=list(params))
    return kummer


# ----------------------------------------------------------------------
# Polar map and the image Kummer
# ----------------------------------------------------------------------


def polar_map(kummer):
    return RationalMapP3(kummer.field, tuple(kummer.quartic.gradient()), "polar")


@dataclass
class ImageKummer:
    K_X: SparseForm
    K_X1: SparseForm
    c: int
    nullspace_dim: int
    identity_ok: bool
    K_X1_nodes: Optional[int] = None

    def to_dict(self):
        return {
            "K_X": self.K_X.to_text(),
            "K_X1": self.K_X1.to_text(),
            "c": self.c,
            "nullspace_dim": self.nullspace_dim,
            "identity_ok": self.identity_ok,
            "K_X1_nodes": self.K_X1_nodes,
        }


def _monic(form):
    _, lead = form.leading_term()
    return form.scale(form.field.inv(lead)), lead


def recover_image_kummer(kummer, strict=False, count_nodes=True, threads=1):
    """
    Solve K o grad Q = K1 Q^2 for quartics K, K1 (70 unknowns), normalise both
    monic and report the scalar c in K o grad Q = c K1 Q^2.
    """
    field = kummer.field
    Q = kummer.quartic
    V = Q.gradient()
    quartics = monomials(4, 4)
    targets = monomials(4, 12)
    row_of = {m: i for i, m in enumerate(targets)}

    pulled = [SparseForm.monomial(field, m).substitute(V) for m in quartics]
    Q2 = Q * Q
    times_q2 = [-(SparseForm.monomial(field, m) * Q2) for m in quartics]

    matrix = np.zeros((len(targets), 2 * len(quartics)), dtype=np.int64)
    for col, form in enumerate(pulled + times_q2):
        for exps, c in form.terms.items():
            matrix[row_of[exps], col] = c
    kernel = field.array(matrix).null_space()
    dim = kernel.shape[0]
    if dim == 0:
        raise NoSolution("K o grad Q = K1 Q^2 has only the zero solution")
    if dim > 1:
        logger.info("Image Kummer system has a %d-dimensional solution space", dim)
        if strict:
            raise NonUniqueBeyondScalar(f"Solution space has dimension {dim}", nullspace_dim=dim)

    n = len(quartics)
    chosen = None
    for vector in kernel:
        values = [int(v) for v in vector]
        if any(values[:n]) and any(values[n:]):
            chosen = values
            break
    if chosen is None:
        raise NoSolution("No solution with both quartics nonzero", nullspace_dim=dim)

    K = SparseForm(field, 4, {m: c for m, c in zip(quartics, chosen[:n])}, degree=4)
    K1 = SparseForm(field, 4, {m: c for m, c in zip(quartics, chosen[n:])}, degree=4)
    K, _ = _monic(K)
    K1, _ = _monic(K1)
    lhs = K.substitute(V)
    rhs = K1 * Q2
    c = field.div(lhs.leading_term()[1], rhs.leading_term()[1]) if lhs else 0
    identity_ok = bool(c) and lhs == rhs.scale(c)
    if not identity_ok:
        raise NoSolution("Recovered quartics fail the polar identity")

    record = ImageKummer(K, K1, c, dim, identity_ok)
    if count_nodes:
        record.K_X1_nodes = len(singular_points(K1, field, threads=threads))
    return record


def kummer_image_check(kummer, record, samples=500, rng=None, seed=0):
    """Sampled points of {K_X1 = 0} off the nodes map into {K_X = 0}."""
    field = kummer.field
    if rng is None:
        rng = np.random.default_rng(seed)
    K1 = record.K_X1

    def scan(coords, start):
        hits = np.flatnonzero(K1.eval_array(coords).view(np.ndarray) == 0)
        return [tuple(int(c) for c in coords[i].view(np.ndarray)) for i in hits]

    on_surface = [c for block in enumerate_p3(field, scan) for c in block]
    node_set = {n.coords for n in kummer.nodes}
    candidates = [c for c in on_surface if c not in node_set]
    if len(candidates) > samples:
        picks = sorted(rng.choice(len(candidates), size=samples, replace=False))
        candidates = [candidates[i] for i in picks]
    rmap = polar_map(kummer)
    failures = []
    for coords in candidates:
        image = [f.eval(coords) for f in rmap.forms]
        if any(image) and record.K_X.eval(image):
            failures.append(list(coords))
    return {"checked": len(candidates), "failures": failures, "ok": not failures}


# ----------------------------------------------------------------------
# Tropes and the 16_6 configuration
# ----------------------------------------------------------------------


def restrict_to_plane(form, plane_coeffs):
    """form restricted to {sum l_i x_i = 0}, solved for the last variable with l_j != 0."""
    field = form.field
    j = max(i for i, c in enumerate(plane_coeffs) if c)
    xs = SparseForm.variables(field, 4, names=form.names)
    inv = field.inv(plane_coeffs[j])
    image = SparseForm.zero(field, 4, names=form.names)
    for i, c in enumerate(plane_coeffs):
        if i != j and c:
            image = image + xs[i].scale(field.neg(field.mul(c, inv)))
    gs = list(xs)
    gs[j] = image
    return form.substitute(gs, check_degree=False)


def is_double_conic(form, plane_coeffs):
    """The restriction to the plane is a nonzero constant times a square."""
    restricted = restrict_to_plane(form, plane_coeffs)
    if restricted.is_zero():
        return False
    monic, _ = _monic(restricted)
    return monic.sqrt() is not None


def configuration(field, quartic, nodes, tropes, strict=True):
    """Incidence counts, double-conic tests and the 16_6 verdict."""
    trope_coeffs = [_trope_coeffs(t) for t in tropes]
    incidence = [[not _dot(field, t, n.coords) for n in nodes] for t in trope_coeffs]
    nodes_per_trope = [sum(row) for row in incidence]
    tropes_per_node = [sum(incidence[i][j] for i in range(len(tropes))) for j in range(len(nodes))]
    double = [is_double_conic(quartic, t) for t in trope_coeffs]
    ok = (
        len(nodes) == NODE_COUNT
        and len(tropes) == NODE_COUNT
        and all(v == TROPE_NODES for v in nodes_per_trope)
        and all(v == TROPE_NODES for v in tropes_per_node)
        and all(double)
    )
    certificate = {
        "nodes": len(nodes),
        "tropes": len(tropes),
        "nodes_per_trope": nodes_per_trope,
        "tropes_per_node": tropes_per_node,
        "incidences": sum(nodes_per_trope),
        "double_conics": double,
        "config_ok": ok,
    }
    if not ok and strict:
        raise ConfigViolation("Nodes and tropes do not form a 16_6 configuration", certificate=certificate)
    return certificate


def tropes_and_config(kummer, strict=True):
    return configuration(kummer.field, kummer.quartic, kummer.nodes, kummer.tropes, strict=strict)


def image_tropes(kummer, record):
    """
    Tropes of K_X: the planes whose coefficient vector is a node of Q and on
    which K_X restricts to a double conic.
    """
    field = kummer.field
    out = []
    for node in kummer.nodes:
        if is_double_conic(record.K_X, node.coords):
            out.append(linear_form(field, node.coords, names=("y00", "y01", "y10", "y11")))
    return out


def trope_cubic(kummer, record, kappa_index, tropes=None):
    """
    C = l o grad Q for the trope l = 0 of K_X, with the node of Q at which all
    partials of C vanish.
    """
    tropes = tropes if tropes is not None else image_tropes(kummer, record)
    if not 0 <= kappa_index < len(tropes):
        raise IndexError(f"Trope index {kappa_index} out of range (have {len(tropes)})")
    field = kummer.field
    coeffs = _trope_coeffs(tropes[kappa_index])
    V = kummer.quartic.gradient()
    cubic = SparseForm.zero(field, 4)
    for c, v in zip(coeffs, V):
        if c:
            cubic = cubic + v.scale(c)
    gradient = cubic.gradient()
    singular = [n for n in kummer.nodes if not any(g.eval(n) for g in gradient)]
    if len(singular) > 1:
        raise PairingAmbiguous(
            f"{len(singular)} nodes are singular on trope cubic {kappa_index}",
            nodes=[n.to_dict() for n in singular],
        )
    if not singular:
        raise ConfigViolation(f"Trope cubic {kappa_index} is smooth at every node")
    return {
        "trope": tropes[kappa_index].to_text(),
        "cubic": cubic.to_text(),
        "degree": cubic.homogeneous_degree(),
        "paired_node": singular[0].to_dict(),
        "gradient_at_node": [g.eval(singular[0]) for g in gradient],
    }


# ----------------------------------------------------------------------
# Fiber counting by elimination
# ----------------------------------------------------------------------


@dataclass
class FiberSolution:
    point: PointP3
    degree: int
    kind: str

    def to_dict(self):
        return {"point": self.point.to_dict(), "field": self.point.field.spec.format(), "degree": self.degree, "kind": self.kind}


def minor_system(V, target):
    """V_j(z) y_k - V_k(z) y_j for j != k, with k the first nonzero coordinate of y."""
    y = target.coords
    k = next(i for i, c in enumerate(y) if c)
    return [V[j].scale(y[k]) - V[k].scale(y[j]) for j in range(4) if j != k]


def random_change(field, rng):
    while True:
        matrix = [[field.random_element(rng) for _ in range(4)] for _ in range(4)]
        if int(np.linalg.matrix_rank(field.array(matrix))) == 4:
            return matrix


def _lift(field, degree):
    """Extension of the given degree with the embedding, or None for the field itself."""
    if degree == 1:
        return field, None
    return extension(field, degree)


def _roots(field, poly_codes):
    """Distinct roots in field of a polynomial given constant term first."""
    poly = field.poly(poly_codes)
    if poly.degree <= 0:
        return []
    return sorted(int(r) for r in poly.roots())


def _poly_codes(poly):
    return [int(c) for c in poly.coeffs[::-1]]


def _solve_in_chart(system, field, max_extension, enough=None):
    """
    Solutions with w3 = 1 of three cubics in w0..w3, grouped by the degree of
    their w0 coordinate over the field.  Returns (solutions, eliminant degree,
    skipped factor degrees).
    """
    eliminant = eliminate(system, 3)
    if eliminant.degree == 0:
        return [], 0, []
    monic = eliminant // field.poly([int(eliminant.coeffs[0])])
    blocks = []
    square_free, _ = monic.square_free_factors()
    for part in square_free:
        factors, degrees = part.distinct_degree_factors()
        blocks.extend((int(d), f) for f, d in zip(factors, degrees))
    blocks.sort(key=lambda b: b[0])

    affine = [g.dehomogenize(3) for g in system]
    solutions = []
    skipped = []
    for degree, factor in blocks:
        if enough is not None and enough(solutions):
            break
        if field.n * degree > max_extension:
            skipped.append(degree)
            continue
        big, emb = _lift(field, degree)
        lifted = affine if emb is None else [g.map_field(emb) for g in affine]
        codes = _poly_codes(factor)
        for r in _roots(big, codes if emb is None else [emb(c) for c in codes]):
            solutions.extend((degree, big, w) for w in _complete(big, lifted, r))
    return solutions, int(eliminant.degree), skipped


def _complete(field, affine, r):
    """All (r, s, u, 1) in the field solving the affine system."""
    fixed = [g.fix(0, r) for g in affine]
    nonzero = [g for g in fixed if not g.is_zero()]
    if not nonzero:
        return []
    s_candidates = None
    for a, b in itertools.combinations(nonzero, 2):
        res = univariate_resultant(a, b, 1, 0)
        if res.degree == 0 and int(res.coeffs[0]) == 0:
            continue
        roots = set(_roots(field, _poly_codes(res))) if res.degree > 0 else set()
        s_candidates = roots if s_candidates is None else s_candidates & roots
    if s_candidates is None:
        return []
    out = []
    for s in sorted(s_candidates):
        polys = [to_univariate(g.fix(0, s), 0) for g in nonzero]
        polys = [p for p in polys if not (p.degree == 0 and int(p.coeffs[0]) == 0)]
        if not polys:
            continue
        common = polys[0]
        for p in polys[1:]:
            common = galois.gcd(common, p)
        for u in _roots(field, _poly_codes(common)):
            out.append((r, s, u, 1))
    return out


def _apply(field, matrix, w, embed):
    return [
        _dot(field, [embed(c) for c in row], w)
        for row in matrix
    ]


def _classify(raw, V, target, change, field):
    """Map chart solutions back through the coordinate change and split nodes from fiber points."""
    lifted = {}
    seen = set()
    solutions = []
    for degree, big, w in raw:
        if big not in lifted:
            embed = (lambda c: c) if big == field else subfield_embed(field, big)
            lifted[big] = (embed, [_lift_form(v, big) for v in V], [embed(c) for c in target.coords])
        embed, big_V, y = lifted[big]
        z = _apply(big, change, list(w), embed)
        if not any(z):
            continue
        point = PointP3.of(big, z)
        key = (big.spec, point.coords)
        if key in seen:
            continue
        values = [v.eval(point) for v in big_V]
        minors_ok = all(
            not big.sub(big.mul(values[i], y[j]), big.mul(values[j], y[i]))
            for i in range(4)
            for j in range(i + 1, 4)
        )
        if not minors_ok:
            continue
        seen.add(key)
        solutions.append(FiberSolution(point, degree, "fiber" if any(values) else "node"))
    return solutions


@dataclass
class DegreeCount:
    target: PointP3
    eliminant_degree: int
    node_solutions: int
    fiber_solutions: int
    resolved: bool
    degrees: dict
    skipped_degrees: list
    solutions: list = dc_field(default_factory=list)

    def contains(self, point):
        return any(s.point.field == point.field and s.point.coords == point.coords for s in self.solutions)

    def to_dict(self):
        return {
            "target": self.target.to_dict(),
            "total_with_multiplicity_candidates": self.eliminant_degree,
            "node_solutions": self.node_solutions,
            "fiber_solutions": self.fiber_solutions,
            "resolved": self.resolved,
            "fiber_degrees": self.degrees,
            "skipped_degrees": self.skipped_degrees,
            "bezout_ok": (not self.resolved) or self.node_solutions + self.fiber_solutions == BEZOUT,
        }


def degree_count(kummer, target, rng=None, seed=0, max_extension=DEFAULT_MAX_EXTENSION, attempts=4, strict=False):
    """
    Distinct solutions of the 2x2 minors of (grad Q(z), y), split into the 16
    nodes and the fiber over y.
    """
    field = kummer.field
    if rng is None:
        rng = np.random.default_rng(seed)
    V = kummer.quartic.gradient()
    system = minor_system(V, target)
    best = None

    for _ in range(attempts):
        change = random_change(field, rng)
        changed = [g.linear_change(change) for g in system]
        try:
            raw, elim_degree, skipped = _solve_in_chart(
                changed,
                field,
                max_extension,
                enough=lambda sols: len(sols) >= BEZOUT,
            )
        except DegenerateSystem:
            continue

        solutions = _classify(raw, V, target, change, field)

        nodes = sum(1 for s in solutions if s.kind == "node")
        fiber = sum(1 for s in solutions if s.kind == "fiber")
        degrees = {}
        for s in solutions:
            if s.kind == "fiber":
                degrees[str(s.degree)] = degrees.get(str(s.degree), 0) + 1
        result = DegreeCount(
            target=target,
            eliminant_degree=elim_degree,
            node_solutions=nodes,
            fiber_solutions=fiber,
            resolved=nodes == NODE_COUNT and nodes + fiber == BEZOUT,
            degrees=degrees,
            skipped_degrees=skipped,
            solutions=solutions,
        )
        if best is None or nodes + fiber > best.node_solutions + best.fiber_solutions:
            best = result
        if result.resolved:
            break

    if best is None:
        raise DegenerateSystem("Every random coordinate change gave a degenerate elimination")
    if best.fiber_solutions > EXPECTED_DEGREE:
        raise ConfigViolation(
            f"Fiber has {best.fiber_solutions} points, more than {EXPECTED_DEGREE}",
            count=best.to_dict(),
        )
    if not best.resolved:
        logger.info("Fiber over %s unresolved: %d nodes, %d fiber points", target, best.node_solutions, best.fiber_solutions)
        if strict:
            raise UnresolvedFiber(
                f"Certified {best.fiber_solutions} fiber points before the extension budget ran out",
                count=best.to_dict(),
            )
    return best


def on_trope(target, tropes):
    return any(not t.eval(target) for t in tropes)


def sample_target(kummer, rng, tropes=()):
    """Image of a random rational non-node point that avoids the given tropes."""
    field = kummer.field
    rmap = polar_map(kummer)
    node_set = {n.coords for n in kummer.nodes}
    for _ in range(10000):
        coords = [field.random_element(rng) for _ in range(4)]
        if not any(coords):
            continue
        source = PointP3.of(field, coords)
        if source.coords in node_set:
            continue
        values = [f.eval(source) for f in rmap.forms]
        if not any(values):
            continue
        target = PointP3.of(field, values)
        if tropes and on_trope(target, tropes):
            continue
        return source, target
    raise BudgetExhausted("No generic target found")


def surjectivity_check(kummer, targets, max_extension=DEFAULT_MAX_EXTENSION, rng=None, seed=0):
    """Every target has a non-node preimage over some enumerated extension."""
    if rng is None:
        rng = np.random.default_rng(seed)
    field = kummer.field
    V = kummer.quartic.gradient()
    failures = []
    reached = 0
    for target in targets:
        found = False
        for _ in range(3):
            change = random_change(field, rng)
            system = [g.linear_change(change) for g in minor_system(V, target)]
            try:
                raw, _, _ = _solve_in_chart(system, field, max_extension, enough=lambda sols: _has_fiber(sols, V, field, change))
            except DegenerateSystem:
                continue
            if _has_fiber(raw, V, field, change):
                found = True
                break
        if found:
            reached += 1
        else:
            failures.append(target.to_dict())
    return {"targets": len(targets), "reached": reached, "failures": failures, "ok": not failures}


def _has_fiber(raw, V, field, change):
    for degree, big, w in raw:
        embed = (lambda c: c) if big == field else subfield_embed(field, big)
        z = _apply(big, change, list(w), embed)
        if any(z) and any(_lift_form(v, big).eval(z) for v in V):
            return True
    return False

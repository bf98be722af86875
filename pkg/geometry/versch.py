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
Explicit Verschiebung maps on P^3 in characteristic 2, their base loci,
Kummer pull-backs and fiber censuses.
"""

import logging
from dataclasses import dataclass, field as dc_field
from enum import Enum
from typing import Optional

import numpy as np

from utils.enumeration import (
    DEFAULT_BUDGET,
    DEFAULT_CHUNK,
    INDETERMINATE,
    enumerate_p3,
    normalize_rows,
    point_index,
    points_block,
)

from .errors import ArityMismatch, DegreeMismatch, ZeroCoefficient
from .forms import Z_NAMES, PointP3, SparseForm, is_collinear
from .genus2 import frobenius_twist
from .gf import subfield_embed
from .theta_kummer import kummer_quartic

logger = logging.getLogger(__name__)

E_BAD = (0, 0, 1, 1)

TWIST_CONVENTIONS = ("identity", "frobenius")


@dataclass(frozen=True)
class RationalMapP3:
    """Four homogeneous forms of one degree, up to a common scalar."""

    field: object
    forms: tuple
    name: str = "map"

    def __post_init__(self):
        if len(self.forms) != 4:
            raise ArityMismatch(f"A map to P^3 needs 4 forms, got {len(self.forms)}")
        if all(f.is_zero() for f in self.forms):
            raise DegreeMismatch("All four forms vanish")
        degrees = {f.homogeneous_degree() for f in self.forms if not f.is_zero()}
        if None in degrees or len(degrees) != 1:
            raise DegreeMismatch(f"Forms are not homogeneous of one degree: {degrees}")

    @property
    def degree(self):
        return next(f.homogeneous_degree() for f in self.forms if not f.is_zero())

    def over(self, field):
        """The same map with coefficients pushed into an extension field."""
        if field == self.field:
            return self
        embedding = subfield_embed(self.field, field)
        return RationalMapP3(field, tuple(f.map_field(embedding) for f in self.forms), self.name)

    def to_dict(self):
        return {
            "name": self.name,
            "field": self.field.spec.format(),
            "degree": self.degree,
            "forms": [f.to_text() for f in self.forms],
        }


def quadrics_P(field):
    """P00, P01, P10, P11 in x00, x01, x10, x11."""
    x00, x01, x10, x11 = SparseForm.variables(field, 4)
    return (
        x00 * x00 + x01 * x01 + x10 * x10 + x11 * x11,
        x00 * x01 + x10 * x11,
        x00 * x10 + x01 * x11,
        x00 * x11 + x10 * x01,
    )


def quadrics_Q(field):
    """Q00, Q01, Q10, Q11 in z00, z01, z10, z11 (same variable slots as x)."""
    z00, z01, z10, z11 = SparseForm.variables(field, 4, names=Z_NAMES)
    return (
        z00 * z00 + z01 * z01,
        z00 * z11 + z10 * z01,
        z00 * z00 + z01 * z01 + z10 * z10 + z11 * z11,
        z00 * z01,
    )


def ordinary_map(curve):
    """(sqrt(abc) P00 : sqrt(b) P01 : sqrt(c) P10 : sqrt(a) P11)."""
    f = curve.field
    abc = f.mul(f.mul(curve.a, curve.b), curve.c)
    coefficients = (f.sqrt(abc), f.sqrt(curve.b), f.sqrt(curve.c), f.sqrt(curve.a))
    forms = tuple(p.scale(c) for p, c in zip(quadrics_P(f), coefficients))
    return RationalMapP3(f, forms, "ordinary")


def hw1_map(field, lambdas=(1, 1, 1, 1)):
    """(l00 Q00 : l01 Q01 : l10 Q10 : l11 Q11) for nonzero l_ij."""
    lambdas = tuple(int(v) for v in lambdas)
    if len(lambdas) != 4:
        raise ArityMismatch(f"Need four lambda_ij, got {len(lambdas)}")
    if not all(lambdas):
        raise ZeroCoefficient(f"lambda_ij must be nonzero, got {lambdas}", lambdas=list(lambdas))
    forms = tuple(q.scale(c) for q, c in zip(quadrics_Q(field), lambdas))
    return RationalMapP3(field, forms, "hw1")


def eval_map(rmap, point) -> Optional[PointP3]:
    """Image point, or None where all four forms vanish."""
    values = [f.eval(point) for f in rmap.forms]
    if not any(values):
        return None
    return PointP3.of(rmap.field, values)


def hw1_contracted_conic(field, lambdas=(1, 1, 1, 1)):
    """
    l10 l11 y01^2 + l01^2 y10 y11, the conic in {y00 = 0} onto which the plane
    {z00 = z01} is contracted.
    """
    _, y01, y10, y11 = SparseForm.variables(field, 4, names=("y00", "y01", "y10", "y11"))
    l00, l01, l10, l11 = lambdas
    return (y01 * y01).scale(field.mul(l10, l11)) + (y10 * y11).scale(field.mul(l01, l01))


def degree_structure(maps, p):
    """Every form of every map has degree exactly p."""
    degrees = {m.name: sorted({f.homogeneous_degree() for f in m.forms if not f.is_zero()}) for m in maps}
    return {"p": p, "degrees": degrees, "ok": all(d == [p] for d in degrees.values())}


# ----------------------------------------------------------------------
# Exhaustive image tables
# ----------------------------------------------------------------------


class ImageTable:
    """Index of the image of every point of P^3(F_q), INDETERMINATE on the base locus."""

    def __init__(self, rmap, images):
        self.map = rmap
        self.field = rmap.field
        self.q = rmap.field.q
        self.images = images
        self._order = np.argsort(images, kind="stable")
        self._sorted = images[self._order]

    def preimages(self, target_index):
        lo = np.searchsorted(self._sorted, target_index, side="left")
        hi = np.searchsorted(self._sorted, target_index, side="right")
        return np.sort(self._order[lo:hi])

    def base_locus_indices(self):
        return self.preimages(INDETERMINATE)

    def point(self, index):
        coords = points_block(self.q, int(index), int(index) + 1)[0]
        return PointP3(self.field, tuple(int(c) for c in coords))

    def image_of(self, index):
        value = int(self.images[int(index)])
        return None if value == INDETERMINATE else self.point(value)


def image_table(rmap, field=None, threads=1, chunk=DEFAULT_CHUNK, budget=DEFAULT_BUDGET):
    """Exhaustive image of P^3(F_q) under the map."""
    rmap = rmap.over(field) if field is not None else rmap
    forms = rmap.forms
    GF = rmap.field.GF

    def evaluate(coords, start):
        values = GF.Zeros((coords.shape[0], 4))
        for i, f in enumerate(forms):
            values[:, i] = f.eval_array(coords)
        return normalize_rows(rmap.field, values)

    parts = enumerate_p3(rmap.field, evaluate, threads=threads, chunk=chunk, budget=budget)
    images = np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)
    logger.info("Image table of %s over %s: %d points", rmap.name, rmap.field.spec, images.size)
    return ImageTable(rmap, images)


def base_locus(rmap, field=None, threads=1, chunk=DEFAULT_CHUNK, budget=DEFAULT_BUDGET):
    """All rational points where the four forms vanish together."""
    table = image_table(rmap, field, threads=threads, chunk=chunk, budget=budget)
    return [table.point(i) for i in table.base_locus_indices()]


# ----------------------------------------------------------------------
# Kummer pull-back
# ----------------------------------------------------------------------


def pullback_kummer(rmap, k_target):
    """k_target composed with the map."""
    return k_target.substitute(list(rmap.forms))


def divisibility_check(form, k_source):
    """Quotient form / k_source when exact, else None."""
    return form.exact_divide(k_source)


def twist_oracle(curves):
    """
    For each curve X, test whether kummer(X) pulled back by ordinary_map(X) is
    divisible by the Kummer quartic of X ("identity") or of its Frobenius
    twist ("frobenius").  The winner divides for every curve.
    """
    results = {name: [] for name in TWIST_CONVENTIONS}
    quotients = []
    for curve in curves:
        pulled = pullback_kummer(ordinary_map(curve), kummer_quartic(curve).quartic)
        sources = {
            "identity": kummer_quartic(curve).quartic,
            "frobenius": kummer_quartic(frobenius_twist(curve)).quartic,
        }
        for name in TWIST_CONVENTIONS:
            quotient = divisibility_check(pulled, sources[name])
            results[name].append(quotient is not None)
            if name == "frobenius" and quotient is not None:
                quotients.append(quotient.to_text())
    winners = [name for name in TWIST_CONVENTIONS if results[name] and all(results[name])]
    winner = winners[0] if len(winners) == 1 else None
    logger.info("Twist oracle over %d curves: %s", len(curves), winner)
    return {
        "winner": winner,
        "divides": {name: sum(flags) for name, flags in results.items()},
        "curves": len(curves),
        "quotients": quotients,
    }


# ----------------------------------------------------------------------
# Fiber census
# ----------------------------------------------------------------------


class FiberClass(Enum):
    """Classification of a fiber."""

    GENERIC_ORBIT = "generic-orbit"
    EMPTY = "empty"
    LINE_THROUGH_EBAD = "line-through-EBAD"
    BASE_LOCUS_ARTIFACT = "base-locus-artifact"


@dataclass
class FiberReport:
    target: PointP3
    preimages: list
    tag: FiberClass
    target_class: str

    def to_dict(self):
        return {
            "target": self.target.to_dict(),
            "size": len(self.preimages),
            "tag": self.tag.value,
            "class": self.target_class,
        }


@dataclass
class CensusResult:
    map: dict
    field: str
    samples: int
    seed: int
    histogram: dict = dc_field(default_factory=dict)
    violations: list = dc_field(default_factory=list)
    checks: dict = dc_field(default_factory=dict)
    reports: list = dc_field(default_factory=list)

    def to_dict(self):
        return {
            "map": self.map,
            "field": self.field,
            "samples": self.samples,
            "seed": self.seed,
            "histogram": self.histogram,
            "violations": self.violations,
            "checks": self.checks,
        }


def _classify(field, preimages, target_class):
    size = len(preimages)
    if size == 0:
        return FiberClass.EMPTY
    if size >= field.q - 1 and is_collinear(field, [*preimages, PointP3(field, E_BAD)]):
        return FiberClass.LINE_THROUGH_EBAD
    if size == 2 and target_class == "generic":
        return FiberClass.GENERIC_ORBIT
    return FiberClass.BASE_LOCUS_ARTIFACT


def conic_points(field, lambdas):
    """Rational points of the contracted conic: (0:1:y:z) with y z = l10 l11 / l01^2, (0:0:1:0), (0:0:0:1)."""
    _, l01, l10, l11 = lambdas
    k = field.div(field.mul(l10, l11), field.mul(l01, l01))
    points = [PointP3(field, (0, 1, y, field.div(k, y))) for y in range(1, field.q)]
    points.append(PointP3(field, (0, 0, 1, 0)))
    points.append(PointP3(field, (0, 0, 0, 1)))
    return points


def fiber_census(
    rmap,
    samples=200,
    rng=None,
    seed=0,
    special_loci=True,
    lambdas=(1, 1, 1, 1),
    threads=1,
    chunk=DEFAULT_CHUNK,
    budget=DEFAULT_BUDGET,
):
    """
    Sample targets, enumerate their rational fibers exhaustively and classify.

    Generic targets are images of random sources off {z00 = z01}.  With
    special_loci (hw1 maps) targets on {y00 = 0} off and on the contracted
    conic are added.
    """
    field = rmap.field
    q = field.q
    if rng is None:
        rng = np.random.default_rng(seed)
    table = image_table(rmap, threads=threads, chunk=chunk, budget=budget)

    def fiber(target):
        idx = point_index(q, target.coords)
        return [table.point(i) for i in table.preimages(idx)]

    reports = []
    violations = []

    generic = 0
    attempts = 0
    while generic < samples and attempts < 50 * samples:
        attempts += 1
        coords = [field.random_element(rng) for _ in range(4)]
        if not any(coords):
            continue
        source = PointP3.of(field, coords)
        if source.coords[0] == source.coords[1]:
            continue
        target = eval_map(rmap, source)
        if target is None:
            continue
        generic += 1
        preimages = fiber(target)
        tag = _classify(field, preimages, "generic")
        reports.append(FiberReport(target, preimages, tag, "generic"))
        if special_loci and target.coords[0] and len(preimages) > 2:
            violations.append({"class": "generic", "target": target.to_dict(), "size": len(preimages)})

    if special_loci:
        conic = hw1_contracted_conic(field, lambdas)
        off = 0
        attempts = 0
        while off < samples and attempts < 50 * samples:
            attempts += 1
            coords = [0] + [field.random_element(rng) for _ in range(3)]
            if not any(coords) or not conic.eval(coords):
                continue
            target = PointP3.of(field, coords)
            off += 1
            preimages = fiber(target)
            reports.append(FiberReport(target, preimages, _classify(field, preimages, "off-conic"), "off-conic"))
            if preimages:
                violations.append({"class": "off-conic", "target": target.to_dict(), "size": len(preimages)})

        on = conic_points(field, lambdas)
        if q > 256 and len(on) > samples:
            picks = rng.choice(len(on), size=samples, replace=False)
            on = [on[i] for i in sorted(picks)]
        for target in on:
            preimages = fiber(target)
            tag = _classify(field, preimages, "on-conic")
            reports.append(FiberReport(target, preimages, tag, "on-conic"))
            if tag is not FiberClass.LINE_THROUGH_EBAD:
                violations.append({"class": "on-conic", "target": target.to_dict(), "size": len(preimages)})

    histogram = {}
    for report in reports:
        bucket = histogram.setdefault(report.target_class, {})
        key = str(len(report.preimages))
        bucket[key] = bucket.get(key, 0) + 1

    generic_reports = [r for r in reports if r.target_class == "generic"]
    size_two = sum(1 for r in generic_reports if len(r.preimages) == 2)
    checks = {
        "generic_size_two": size_two,
        "generic_total": len(generic_reports),
        "generic_fraction_ok": bool(generic_reports) and size_two >= 0.9 * len(generic_reports),
    }
    if special_loci:
        checks["off_conic_empty"] = all(not r.preimages for r in reports if r.target_class == "off-conic")
        checks["on_conic_lines"] = all(
            r.tag is FiberClass.LINE_THROUGH_EBAD for r in reports if r.target_class == "on-conic"
        )
    logger.info("Fiber census of %s over %s: %d targets, %d violations", rmap.name, field.spec, len(reports), len(violations))

    return CensusResult(
        map=rmap.to_dict(),
        field=field.spec.format(),
        samples=samples,
        seed=seed,
        histogram=histogram,
        violations=violations,
        checks=checks,
        reports=reports,
    )

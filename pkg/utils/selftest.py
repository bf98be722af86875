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
Acceptance checks behind the selftest command.

Every check returns a dict with at least "name" and "ok".  Each check draws
from its own generator spawned from the run seed, so selecting a subset of
checks does not change the others.  The "quick" scale runs the same code
paths with fewer samples and smaller fields.
"""

import logging
import time

from geometry.degen import FamilyParams, balance_valuations, elliptic_curve_check, elliptic_data, leading_map
from geometry.errors import BudgetExceeded
from geometry.forms import PointP3, SparseForm
from geometry.genus2 import random_curve
from geometry.gf import GF, extension
from geometry.polar3 import (
    EXPECTED_DEGREE,
    NODE_COUNT,
    configuration,
    degree_count,
    find_kummer,
    find_tropes,
    image_tropes,
    kummer_image_check,
    polar_map,
    recover_image_kummer,
    sample_target,
    singular_points,
    tropes_and_config,
)
from geometry.theta_kummer import lambda_squares, verify_batch, verify_pullback
from geometry.versch import (
    E_BAD,
    base_locus,
    degree_structure,
    eval_map,
    fiber_census,
    hw1_map,
    ordinary_map,
    quadrics_Q,
    twist_oracle,
)

from .reporting import canonical_json, spawn_rngs

logger = logging.getLogger(__name__)

SCALES = ("quick", "full")

SCALE_SETTINGS = {
    "quick": {
        "kummer_fields": ((2, 4), (2, 8)),
        "kummer_curves": 5,
        "mainthm_samples": 4,
        "hw1_samples": 5,
        "census_field": (2, 4),
        "census_samples": 40,
        "polar_field": (3, 2),
        "image_samples": 50,
        "degree_targets": 1,
        "twist_curves": 3,
    },
    "full": {
        "kummer_fields": ((2, 4), (2, 8), (2, 12)),
        "kummer_curves": 50,
        "mainthm_samples": 20,
        "hw1_samples": 20,
        "census_field": (2, 8),
        "census_samples": 200,
        "polar_field": (3, 2),
        "image_samples": 500,
        "degree_targets": 20,
        "twist_curves": 10,
    },
}

CHECK_COUNT = 15


def _random_curves(field, count, rng):
    return [random_curve(field, rng) for _ in range(count)]


def check_kummer_formula(ctx, rng):
    counts = {}
    for p, n in ctx["settings"]["kummer_fields"]:
        field = GF(p, n)
        certificates = verify_batch(_random_curves(field, ctx["settings"]["kummer_curves"], rng), threads=ctx["threads"], strict=False)
        counts[field.spec.format()] = sum(1 for c in certificates if c.status == "ok")
    total = ctx["settings"]["kummer_curves"]
    return {"passed": counts, "curves_per_field": total, "ok": all(v == total for v in counts.values())}


def check_negative_control(ctx, rng):
    broken = {}
    total = ctx["settings"]["kummer_curves"]
    for p, n in ctx["settings"]["kummer_fields"]:
        field = GF(p, n)
        failures = 0
        for i, curve in enumerate(_random_curves(field, total, rng)):
            perturbed = list(lambda_squares(curve))
            perturbed[i % 3] = field.mul(perturbed[i % 3], field.primitive_element)
            if verify_pullback(curve, tuple(perturbed), strict=False).status != "ok":
                failures += 1
        broken[field.spec.format()] = failures
    return {"broken": broken, "ok": all(v >= total - 1 for v in broken.values())}


def check_elliptic_family(ctx, rng):
    data = elliptic_data(40)
    curve = elliptic_curve_check(40)
    checks = dict(data.checks)
    checks.update(curve)
    return {"checks": checks, "ok": all(checks.values())}


def check_balancing(ctx, rng):
    params = FamilyParams(GF(2, 6), 1, 0)
    nu = balance_valuations(params)
    valuations = leading_map(params, nu).valuations
    return {"nu": str(nu), "valuations": valuations, "ok": nu == 4 and valuations == [2, 2, 2, 2]}


def check_leading_span(ctx, rng):
    field = GF(2, 6)
    passed = 0
    samples = ctx["settings"]["mainthm_samples"]
    for _ in range(samples):
        params = FamilyParams(field, field.random_nonzero(rng), field.random_element(rng))
        leading_map(params, 4)
        passed += 1
    return {"samples": samples, "passed": passed, "ok": passed == samples}


def check_hw1_base_point(ctx, rng):
    field = GF(2, 8)
    in_base = 0
    samples = ctx["settings"]["hw1_samples"]
    for _ in range(samples):
        lambdas = tuple(field.random_nonzero(rng) for _ in range(4))
        if eval_map(hw1_map(field, lambdas), PointP3(field, E_BAD)) is None:
            in_base += 1
    z = SparseForm.variables(field, 4, names=quadrics_Q(field)[0].names)
    contracted = quadrics_Q(field)[0].substitute([z[0], z[0], z[2], z[3]])
    return {
        "samples": samples,
        "ebad_in_base_locus": in_base,
        "Q00_vanishes_on_H1": contracted.is_zero(),
        "ok": in_base == samples and contracted.is_zero(),
    }


def check_fiber_census(ctx, rng):
    p, n = ctx["settings"]["census_field"]
    result = fiber_census(
        hw1_map(GF(p, n)),
        samples=ctx["settings"]["census_samples"],
        rng=rng,
        seed=ctx["seed"],
        threads=ctx["threads"],
    )
    checks = result.checks
    ok = checks["generic_fraction_ok"] and checks["off_conic_empty"] and checks["on_conic_lines"]
    return {"histogram": result.histogram, "checks": checks, "ok": bool(ok)}


def _kummer(ctx, rng):
    if "kummer" not in ctx:
        p, n = ctx["settings"]["polar_field"]
        ctx["kummer"] = find_kummer(GF(p, n), budget=ctx.get("polar_budget", 100000), rng=rng, threads=ctx["threads"])
    return ctx["kummer"]


def _image(ctx, rng):
    if "image" not in ctx:
        ctx["image"] = recover_image_kummer(_kummer(ctx, rng), threads=ctx["threads"])
    return ctx["image"]


def check_kummer_search(ctx, rng):
    kummer = _kummer(ctx, rng)
    return {
        "params": kummer.heis.to_dict(),
        "node_field": kummer.field.spec.format(),
        "nodes": len(kummer.nodes),
        "ok": len(kummer.nodes) == NODE_COUNT,
    }


def check_base_points(ctx, rng):
    kummer = _kummer(ctx, rng)
    rmap = polar_map(kummer)
    nodes = {n.coords for n in kummer.nodes}
    here = {pt.coords for pt in base_locus(rmap, threads=ctx["threads"])}
    big, emb = extension(kummer.field, 2)
    lifted = {PointP3.of(big, [emb(c) for c in n.coords]).coords for n in kummer.nodes}
    try:
        there = {pt.coords for pt in base_locus(rmap, big, threads=ctx["threads"])}
    except BudgetExceeded:
        # nodes already live in the quadratic extension
        there = None
    return {
        "node_field": len(here),
        "quadratic_extension": None if there is None else len(there),
        "ok": here == nodes and (there is None or there == lifted),
    }


def check_polar_identity(ctx, rng):
    kummer = _kummer(ctx, rng)
    image = _image(ctx, rng)
    sampled = kummer_image_check(kummer, image, samples=ctx["settings"]["image_samples"], rng=rng)
    return {
        "nullspace_dim": image.nullspace_dim,
        "identity_ok": image.identity_ok,
        "K_X1_nodes": image.K_X1_nodes,
        "image_check": sampled,
        "ok": image.identity_ok and image.K_X1_nodes == NODE_COUNT and sampled["ok"],
    }


def check_configuration(ctx, rng):
    kummer = _kummer(ctx, rng)
    image = _image(ctx, rng)
    own = tropes_and_config(kummer, strict=False)
    nodes = singular_points(image.K_X1, kummer.field, threads=ctx["threads"])
    other = configuration(kummer.field, image.K_X1, nodes, find_tropes(kummer.field, nodes), strict=False)
    return {"Q": own, "K_X1": other, "ok": own["config_ok"] and other["config_ok"]}


def check_degree_eleven(ctx, rng):
    kummer = _kummer(ctx, rng)
    tropes = image_tropes(kummer, _image(ctx, rng))
    counts = []
    resolved = 0
    first = None
    contains_source = True
    wanted = ctx["settings"]["degree_targets"]
    full = ctx["scale"] == "full"
    limit = 2 * wanted + 10 if full else wanted + 1
    while len(counts) < limit:
        if first is not None and len(counts) - first - 1 >= wanted:
            break
        source, target = sample_target(kummer, rng, tropes)
        count = degree_count(kummer, target, rng=rng, max_extension=ctx.get("max_extension", 12))
        counts.append(count.to_dict())
        if count.resolved:
            resolved += 1
            contains_source = contains_source and count.contains(source)
            if first is None:
                first = len(counts) - 1
    further = 0 if first is None else len(counts) - first - 1
    bounded = all(c["fiber_solutions"] <= EXPECTED_DEGREE for c in counts)
    return {
        "counts": counts,
        "resolved": resolved,
        "further_targets": further,
        "ok": bounded and contains_source and (not full or (resolved >= 1 and further >= wanted)),
    }


def check_degree_structure(ctx, rng):
    field = GF(2, 8)
    maps = [ordinary_map(random_curve(field, rng)), hw1_map(field)]
    char2 = degree_structure(maps, 2)
    char3 = degree_structure([polar_map(_kummer(ctx, rng))], 3)
    return {"char2": char2, "char3": char3, "ok": char2["ok"] and char3["ok"]}


def check_twist_oracle(ctx, rng):
    winners = {}
    for n in (6, 8):
        field = GF(2, n)
        result = twist_oracle(_random_curves(field, ctx["settings"]["twist_curves"], rng))
        winners[field.spec.format()] = result["winner"]
    values = set(winners.values())
    return {"winners": winners, "ok": len(values) == 1 and None not in values}


def check_determinism(ctx, rng):
    """Repeat the other selected checks on a different thread count and compare."""
    numbers = [n for n in ctx["selected"] if n != CHECK_COUNT] or list(range(1, CHECK_COUNT))
    other = 2 if ctx["threads"] == 1 else 1
    earlier = [r for r in ctx["results"] if r["number"] in numbers]
    if len(earlier) != len(numbers):
        earlier = run_checks(ctx["scale"], ctx["seed"], ctx["threads"], numbers, ctx["config"])["checks"]
    again = run_checks(ctx["scale"], ctx["seed"], other, numbers, ctx["config"])["checks"]
    return {
        "checks": numbers,
        "threads": [ctx["threads"], other],
        "ok": canonical_json(earlier) == canonical_json(again),
    }


CHECKS = (
    ("kummer_formula", check_kummer_formula),
    ("negative_control", check_negative_control),
    ("elliptic_family", check_elliptic_family),
    ("valuation_balancing", check_balancing),
    ("leading_span", check_leading_span),
    ("hw1_base_point", check_hw1_base_point),
    ("fiber_census", check_fiber_census),
    ("kummer_search", check_kummer_search),
    ("base_points_are_nodes", check_base_points),
    ("polar_identity", check_polar_identity),
    ("configuration_16_6", check_configuration),
    ("degree_eleven", check_degree_eleven),
    ("degree_structure", check_degree_structure),
    ("twist_oracle", check_twist_oracle),
    ("determinism", check_determinism),
)


def run_checks(scale="quick", seed=0, threads=1, only=None, config=None):
    """
    Run the numbered checks (1-based) in `only`, or all of them.  Returns
    {"scale", "seed", "checks": [...], "ok"}.
    """
    if scale not in SCALES:
        raise ValueError(f"Unknown scale {scale!r}; expected one of {SCALES}")
    config = config or {}
    ctx = {
        "scale": scale,
        "seed": seed,
        "threads": threads,
        "settings": SCALE_SETTINGS[scale],
        "polar_budget": config.get("VERSCH_POLAR_BUDGET", 100000),
        "max_extension": config.get("VERSCH_MAX_EXTENSION", 12),
        "config": config,
    }
    rngs = spawn_rngs(seed, CHECK_COUNT)
    # the polar checks share one surface, found with its own stream
    polar_rng = spawn_rngs(seed + 1, 1)[0]
    selected = sorted(set(only)) if only else range(1, CHECK_COUNT + 1)
    if any(not 1 <= n <= CHECK_COUNT for n in selected):
        raise ValueError(f"Check numbers must lie in 1..{CHECK_COUNT}, got {list(selected)}")

    results = []
    ctx.update({"selected": list(selected), "results": results})
    for number in selected:
        name, check = CHECKS[number - 1]
        started = time.time()
        if 8 <= number <= 13 and "kummer" not in ctx:
            _kummer(ctx, polar_rng)
        result = check(ctx, rngs[number - 1])
        result.update({"number": number, "name": name})
        results.append(result)
        logger.info("Check %d (%s): %s in %.1fs", number, name, "ok" if result["ok"] else "FAILED", time.time() - started)
    return {
        "scale": scale,
        "seed": seed,
        "checks": results,
        "ok": all(r["ok"] for r in results),
    }

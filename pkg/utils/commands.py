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
Command implementations shared by the CLI and the HTTP blueprints.

Every function takes plain strings and numbers as they arrive from flags or
query parameters and returns a Report.  Verification errors propagate; a
certificate that fails without raising sets status to "failed".
"""

import logging
import time

from geometry.degen import DEFAULT_WINDOW, specialize
from geometry.genus2 import Curve2
from geometry.gf import field_new
from geometry.polar3 import (
    DEFAULT_MAX_EXTENSION,
    configuration,
    degree_count,
    find_kummer,
    find_tropes,
    image_tropes,
    kummer_from_params,
    recover_image_kummer,
    sample_target,
    singular_points,
    tropes_and_config,
)
from geometry.theta_kummer import kummer_quartic, relation_form, verify_pullback
from geometry.versch import fiber_census, hw1_map, ordinary_map, twist_oracle

from .reporting import STATUS_FAILED, STATUS_OK, Report, make_rng
from .selftest import run_checks

logger = logging.getLogger(__name__)

COMMANDS = (
    "kummer-eq",
    "verify-kummer",
    "versch-eq",
    "fiber-census",
    "specialize",
    "polar3 find",
    "polar3 analyze",
    "selftest",
)


def parse_codes(text, count=None, name="value"):
    """Comma-separated integer codes (decimal or 0x...)."""
    try:
        codes = tuple(int(part.strip(), 0) for part in str(text).split(","))
    except ValueError:
        raise ValueError(f"Invalid {name} {text!r}: expected comma-separated integers") from None
    if count is not None and len(codes) != count:
        raise ValueError(f"{name} needs {count} values, got {len(codes)}")
    return codes


def _timed(report, started):
    report.wall_time = time.time() - started
    return report


def kummer_eq(field_text, curve_text):
    started = time.time()
    field = field_new(field_text)
    curve = Curve2.parse(curve_text, field)
    kummer = kummer_quartic(curve)
    report = Report(
        command="kummer-eq",
        field=field.spec.format(),
        inputs={"curve": str(curve)},
        outputs={
            "quartic": kummer.quartic.to_text(),
            "lambda_sq": list(kummer.lambda_sq),
            "relation": relation_form(field, kummer.lambda_sq, kummer.lambdas).to_text(),
        },
    )
    return _timed(report, started)


def verify_kummer(field_text, curve_text, lambda_sq_text=None):
    started = time.time()
    field = field_new(field_text)
    curve = Curve2.parse(curve_text, field)
    lambda_sq = parse_codes(lambda_sq_text, 3, "lambda_sq") if lambda_sq_text else None
    certificate = verify_pullback(curve, lambda_sq, strict=False)
    report = Report(
        command="verify-kummer",
        field=field.spec.format(),
        inputs={"curve": str(curve), "lambda_sq": list(lambda_sq) if lambda_sq else None},
        outputs=certificate.to_dict(),
        status=STATUS_OK if certificate.status == "ok" else STATUS_FAILED,
    )
    return _timed(report, started)


def _map_for(case, field, curve_text=None, lambdas_text=None):
    if case == "ordinary":
        if not curve_text:
            raise ValueError("The ordinary map needs --curve a,b,c")
        return ordinary_map(Curve2.parse(curve_text, field))
    if case == "hw1":
        lambdas = parse_codes(lambdas_text, 4, "lambdas") if lambdas_text else (1, 1, 1, 1)
        return hw1_map(field, lambdas)
    raise ValueError(f"Unknown case {case!r}; expected ordinary or hw1")


def versch_eq(case, field_text, curve_text=None, lambdas_text=None):
    started = time.time()
    field = field_new(field_text)
    rmap = _map_for(case, field, curve_text, lambdas_text)
    report = Report(
        command="versch-eq",
        field=field.spec.format(),
        inputs={"case": case, "curve": curve_text, "lambdas": lambdas_text},
        outputs=rmap.to_dict(),
    )
    return _timed(report, started)


def census(case, field_text, samples=200, seed=0, curve_text=None, lambdas_text=None, threads=1, config=None):
    started = time.time()
    config = config or {}
    field = field_new(field_text)
    rmap = _map_for(case, field, curve_text, lambdas_text)
    lambdas = parse_codes(lambdas_text, 4, "lambdas") if lambdas_text else (1, 1, 1, 1)
    result = fiber_census(
        rmap,
        samples=int(samples),
        rng=make_rng(seed),
        seed=seed,
        special_loci=case == "hw1",
        lambdas=lambdas,
        threads=threads,
        chunk=config.get("VERSCH_ENUM_CHUNK", 1 << 18),
        budget=config.get("VERSCH_ENUM_BUDGET", 1 << 30),
    )
    twist = None
    if case == "ordinary":
        twist = twist_oracle([Curve2.parse(curve_text, field)])["winner"]
    outputs = result.to_dict()
    outputs["twist_convention"] = twist
    passed = not result.violations
    if case == "hw1":
        passed = passed and all(v for v in result.checks.values() if isinstance(v, bool))
    report = Report(
        command="fiber-census",
        field=field.spec.format(),
        inputs={"case": case, "samples": int(samples), "curve": curve_text, "lambdas": list(lambdas)},
        outputs=outputs,
        seed=seed,
        status=STATUS_OK if passed else STATUS_FAILED,
    )
    return _timed(report, started)


def specialize_family(field_text, lam, mu, nu=None, window=DEFAULT_WINDOW):
    started = time.time()
    field = field_new(field_text)
    nu = None if nu in (None, "", "auto") else nu
    record = specialize(field, int(str(lam), 0), int(str(mu), 0), nu=nu, window=int(window))
    report = Report(
        command="specialize",
        field=field.spec.format(),
        inputs={"lambda": int(str(lam), 0), "mu": int(str(mu), 0), "nu": nu or "auto"},
        outputs=record,
        certificates={"span_certificate": record["span_certificate"]},
    )
    return _timed(report, started)


def polar3_find(field_text, budget=100000, seed=0, strategy="seeded", threads=1):
    started = time.time()
    field = field_new(field_text)
    kummer = find_kummer(field, budget=int(budget), rng=make_rng(seed), strategy=strategy, threads=threads)
    certificate = tropes_and_config(kummer, strict=False)
    report = Report(
        command="polar3 find",
        field=field.spec.format(),
        inputs={"budget": int(budget), "strategy": strategy},
        outputs=kummer.to_dict(),
        certificates={"configuration": certificate},
        seed=seed,
        status=STATUS_OK if certificate["config_ok"] else STATUS_FAILED,
    )
    return _timed(report, started)


def polar3_analyze(field_text, quartic_text, seed=0, targets=1, max_extension=DEFAULT_MAX_EXTENSION, threads=1):
    """Nodes, tropes, image Kummer and fiber degree counts for one quartic."""
    started = time.time()
    field = field_new(field_text)
    params = parse_codes(quartic_text, 5, "quartic")
    kummer = kummer_from_params(field, params, threads=threads)
    rng = make_rng(seed)

    config = tropes_and_config(kummer, strict=False)
    image = recover_image_kummer(kummer, threads=threads)
    k1_nodes = singular_points(image.K_X1, kummer.field, threads=threads)
    k1_config = configuration(kummer.field, image.K_X1, k1_nodes, find_tropes(kummer.field, k1_nodes), strict=False)
    tropes = image_tropes(kummer, image)

    counts = []
    for _ in range(int(targets)):
        _, target = sample_target(kummer, rng, tropes)
        counts.append(degree_count(kummer, target, rng=rng, max_extension=int(max_extension)).to_dict())

    outputs = {
        "nodes": [n.to_dict() for n in kummer.nodes],
        "node_field": kummer.field.spec.format(),
        "tropes": [t.to_text() for t in kummer.tropes],
        "config_ok": config["config_ok"],
        "K_X": image.K_X.to_text(),
        "K_X1": image.K_X1.to_text(),
        "c": image.c,
        "identity_ok": image.identity_ok,
        "nullspace_dim": image.nullspace_dim,
        "K_X1_nodes": image.K_X1_nodes,
        "image_tropes": len(tropes),
        "degree_counts": counts,
    }
    report = Report(
        command="polar3 analyze",
        field=field.spec.format(),
        inputs={"quartic": list(params), "targets": int(targets), "max_extension": int(max_extension)},
        outputs=outputs,
        certificates={"configuration": config, "K_X1_configuration": k1_config},
        seed=seed,
        status=STATUS_OK if config["config_ok"] and image.identity_ok else STATUS_FAILED,
    )
    return _timed(report, started)


def selftest(scale="quick", seed=0, threads=1, only=None, config=None):
    started = time.time()
    result = run_checks(scale=scale, seed=seed, threads=threads, only=only, config=config)
    report = Report(
        command="selftest",
        inputs={"scale": scale, "only": list(only) if only else None},
        outputs=result,
        seed=seed,
        status=STATUS_OK if result["ok"] else STATUS_FAILED,
    )
    return _timed(report, started)

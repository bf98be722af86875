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

"""Verschiebung equation and fiber census routes."""

from flask import Blueprint, current_app, request

from routes.common import report_endpoint, required_arg, seed_arg, threads
from utils import commands

versch_bp = Blueprint("versch", __name__, url_prefix="/api/versch")


@versch_bp.route("/equations", methods=["GET"])
@report_endpoint
def equations():
    return commands.versch_eq(
        request.args.get("case", "hw1"),
        required_arg("field"),
        request.args.get("curve"),
        request.args.get("lambdas"),
    )


@versch_bp.route("/census", methods=["GET"])
@report_endpoint
def census():
    """Exhaustive fibers over sampled targets."""
    samples = min(
        request.args.get("samples", current_app.config["VERSCH_CENSUS_SAMPLES"], type=int),
        1000,
    )
    return commands.census(
        request.args.get("map", "hw1"),
        required_arg("field"),
        samples=samples,
        seed=seed_arg(),
        curve_text=request.args.get("curve"),
        lambdas_text=request.args.get("lambdas"),
        threads=threads(),
        config=current_app.config,
    )

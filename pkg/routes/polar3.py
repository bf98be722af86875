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

"""Characteristic-3 polar map routes."""

from flask import Blueprint, current_app, request

from routes.common import report_endpoint, required_arg, seed_arg, threads
from utils import commands

polar3_bp = Blueprint("polar3", __name__, url_prefix="/api/polar3")


@polar3_bp.route("/find", methods=["GET"])
@report_endpoint
def find():
    budget = min(
        request.args.get("budget", current_app.config["VERSCH_POLAR_BUDGET"], type=int),
        current_app.config["VERSCH_POLAR_BUDGET"],
    )
    return commands.polar3_find(
        request.args.get("field", "3^2"),
        budget=budget,
        seed=seed_arg(),
        strategy=request.args.get("strategy", "seeded"),
        threads=threads(),
    )


@polar3_bp.route("/analyze", methods=["GET"])
@report_endpoint
def analyze():
    """Full pipeline for one Heisenberg quartic."""
    return commands.polar3_analyze(
        request.args.get("field", "3^2"),
        required_arg("quartic"),
        seed=seed_arg(),
        targets=min(request.args.get("targets", 1, type=int), 5),
        max_extension=current_app.config["VERSCH_MAX_EXTENSION"],
        threads=threads(),
    )

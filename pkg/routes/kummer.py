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

"""Genus-2 Kummer quartic routes."""

from flask import Blueprint, request

from routes.common import report_endpoint, required_arg
from utils import commands

kummer_bp = Blueprint("kummer", __name__, url_prefix="/api/kummer")


@kummer_bp.route("/equation", methods=["GET"])
@report_endpoint
def equation():
    """Kummer quartic and lambda^2 values of the curve a,b,c."""
    return commands.kummer_eq(required_arg("field"), required_arg("curve"))


@kummer_bp.route("/verify", methods=["GET"])
@report_endpoint
def verify():
    """Cleared Abel-Jacobi identity certificate."""
    return commands.verify_kummer(
        required_arg("field"),
        required_arg("curve"),
        request.args.get("lambda_sq"),
    )

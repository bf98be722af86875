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

"""Degeneration routes."""

from flask import Blueprint, current_app, request

from routes.common import report_endpoint, required_arg
from utils import commands

degen_bp = Blueprint("degen", __name__, url_prefix="/api/degen")


@degen_bp.route("/specialize", methods=["GET"])
@report_endpoint
def specialize():
    """Balanced nu, valuation table and leading quadrics for (lambda, mu)."""
    return commands.specialize_family(
        request.args.get("field", "2^6"),
        required_arg("lambda"),
        request.args.get("mu", "0"),
        nu=request.args.get("nu"),
        window=current_app.config["VERSCH_DEGEN_WINDOW"],
    )

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

"""Report archive routes."""

from flask import Blueprint, jsonify, request

from models import RunReport

reports_bp = Blueprint("reports", __name__, url_prefix="/api/reports")


@reports_bp.route("", methods=["GET"])
def list_reports():
    """List archived runs, newest first."""
    page = request.args.get("page", 1, type=int)
    per_page = min(request.args.get("per_page", 20, type=int), 100)

    query = RunReport.query
    command = request.args.get("command")
    if command:
        query = query.filter_by(command=command)
    status = request.args.get("status")
    if status:
        query = query.filter_by(status=status)
    query = query.order_by(RunReport.created_at.desc(), RunReport.id.desc())

    pagination = query.paginate(page=page, per_page=per_page, error_out=False)
    return jsonify(
        {
            "reports": [r.to_dict() for r in pagination.items],
            "total": pagination.total,
            "pages": pagination.pages,
            "current_page": page,
        }
    )


@reports_bp.route("/<int:report_id>", methods=["GET"])
def get_report(report_id):
    row = RunReport.query.get(report_id)
    if not row:
        return jsonify({"error": "not_found", "message": f"No archived report {report_id}"}), 404
    return jsonify(row.to_dict(include_report=True))

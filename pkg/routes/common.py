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

"""Helpers shared by the Versch Forge blueprints."""

from functools import wraps

from flask import current_app, jsonify, request

from geometry.errors import VerificationFailure, VerschError
from models import archive
from utils.reporting import STATUS_OK


def threads():
    return current_app.config.get("VERSCH_THREADS", 1)


def seed_arg():
    return request.args.get("seed", current_app.config.get("VERSCH_DEFAULT_SEED", 0), type=int)


def required_arg(name):
    """Query parameter that must be present."""
    value = request.args.get(name)
    if value is None or value == "":
        raise ValueError(f"Missing query parameter '{name}'")
    return value


def report_endpoint(f):
    """Decorator turning a Report-returning view into an archived JSON response."""

    @wraps(f)
    def decorated_function(*args, **kwargs):
        try:
            report = f(*args, **kwargs)
        except VerificationFailure as e:
            current_app.logger.warning(f"Verification failed: {e.code}: {e.message}")
            return jsonify(e.to_dict()), 422
        except VerschError as e:
            return jsonify(e.to_dict()), 400
        except ValueError as e:
            return jsonify({"error": "bad_request", "message": str(e)}), 400

        row = archive(report)
        current_app.logger.info(f"Archived {report.command} run {row.id} ({report.status}, {report.wall_time:.2f}s)")
        data = report.to_dict()
        data["report_id"] = row.id
        return jsonify(data), 200 if report.status == STATUS_OK else 422

    return decorated_function

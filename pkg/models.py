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

"""SQLAlchemy models for the Versch Forge report archive."""

import json
from datetime import datetime, timezone
from enum import Enum

from flask_sqlalchemy import SQLAlchemy

db = SQLAlchemy()


class RunStatus(Enum):
    """Outcome of an archived run."""

    OK = "ok"  # All certificates passed
    FAILED = "failed"  # A certificate did not check out
    ERROR = "error"  # Rejected input or domain error


class RunReport(db.Model):
    """One completed command run and its canonical JSON report."""

    __tablename__ = "run_reports"

    id = db.Column(db.Integer, primary_key=True)
    command = db.Column(db.String(40), nullable=False, index=True)
    field = db.Column(db.String(40), nullable=True, index=True)
    seed = db.Column(db.Integer, nullable=True)
    status = db.Column(db.String(20), default=RunStatus.OK.value, nullable=False, index=True)
    report_json = db.Column(db.Text, nullable=False)
    wall_time = db.Column(db.Float, nullable=True)
    created_at = db.Column(db.DateTime, default=lambda: datetime.now(timezone.utc), nullable=False)

    @classmethod
    def from_report(cls, report):
        """Build an archive row from a utils.reporting.Report."""
        return cls(
            command=report.command,
            field=report.field,
            seed=report.seed,
            status=report.status,
            report_json=report.to_json(),
            wall_time=report.wall_time,
        )

    def report(self):
        return json.loads(self.report_json)

    def to_dict(self, include_report=False):
        """Serialize run to dictionary."""
        data = {
            "id": self.id,
            "command": self.command,
            "field": self.field,
            "seed": self.seed,
            "status": self.status,
            "wall_time": self.wall_time,
            "created_at": self.created_at.isoformat(),
        }
        if include_report:
            data["report"] = self.report()
        return data


def archive(report):
    """Store a report; returns the new row."""
    row = RunReport.from_report(report)
    db.session.add(row)
    db.session.commit()
    return row


def init_db(app):
    """Initialize the database with the Flask app."""
    db.init_app(app)
    with app.app_context():
        db.create_all()

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
Versch Forge - Verschiebung Equations Toolkit

A Flask service and command-line toolkit for explicit Verschiebung maps on
moduli of rank-2 bundles over genus-2 curves:
- Kummer quartics and their Abel-Jacobi certificate in characteristic 2
- Ordinary and Hasse-Witt one Verschiebung maps with fiber censuses
- Degeneration of the ordinary family to the Hasse-Witt one limit
- Polar maps of 16-nodal Kummer quartics in characteristic 3
- An archive of every run's canonical JSON report

Run with: python app.py
Or with gunicorn: gunicorn -w 4 -b 0.0.0.0:5000 "app:create_app()"
Command line: python cli.py --help
"""

import logging
import os
from logging.handlers import RotatingFileHandler

from flask import Flask, jsonify, request
from flask_cors import CORS
from flask_limiter import Limiter
from flask_limiter.util import get_remote_address

from config import get_config
from models import db, init_db
from utils.reporting import __version__


HTTP_ERRORS = {
    400: "bad_request",
    404: "not_found",
    405: "method_not_allowed",
    429: "rate_limited",
}


def _http_error(code, status):
    def handler(error):
        return jsonify({"error": code, "message": getattr(error, "description", str(error))}), status

    return handler


def _file_logging(app):
    """Rotating log file shared by the app logger and the library loggers."""
    log_dir = app.config.get("VERSCH_LOG_DIR", "logs")
    os.makedirs(log_dir, exist_ok=True)
    handler = RotatingFileHandler(os.path.join(log_dir, "versch_forge.log"), maxBytes=10240000, backupCount=10)
    handler.setFormatter(logging.Formatter("%(asctime)s %(levelname)s: %(message)s [in %(pathname)s:%(lineno)d]"))
    handler.setLevel(logging.INFO)
    for logger in (app.logger, logging.getLogger("geometry"), logging.getLogger("utils")):
        logger.addHandler(handler)
        logger.setLevel(logging.INFO)
    app.logger.info("Versch Forge startup")


def create_app(config_name=None):
    """Application factory for creating the Flask app."""
    app = Flask(__name__)

    # Load configuration
    if config_name:
        from config import config

        app.config.from_object(config[config_name])
    else:
        app.config.from_object(get_config())

    # Initialize extensions
    init_db(app)

    CORS(
        app,
        origins=app.config.get("CORS_ORIGINS", ["*"]),
        allow_headers=["Content-Type"],
        methods=["GET", "OPTIONS"],
    )

    limiter = Limiter(
        key_func=get_remote_address,
        app=app,
        default_limits=[app.config.get("RATELIMIT_DEFAULT", "100 per minute")],
        storage_uri=app.config.get("RATELIMIT_STORAGE_URL", "memory://"),
    )

    if not app.debug:
        _file_logging(app)

    # Register blueprints
    from routes import kummer_bp, versch_bp, degen_bp, polar3_bp, reports_bp

    app.register_blueprint(kummer_bp)
    app.register_blueprint(versch_bp)
    app.register_blueprint(degen_bp)
    app.register_blueprint(polar3_bp)
    app.register_blueprint(reports_bp)

    # Enumeration-heavy endpoints get a tighter limit
    heavy = app.config.get("RATELIMIT_HEAVY", "10 per minute")
    limiter.limit(heavy)(versch_bp)
    limiter.limit(heavy)(polar3_bp)
    limiter.limit("60 per minute")(kummer_bp)
    limiter.limit("60 per minute")(degen_bp)

    # HTTP errors use the same envelope as VerschError.to_dict()
    for status, code in HTTP_ERRORS.items():
        app.register_error_handler(status, _http_error(code, status))

    @app.errorhandler(500)
    def internal_error(error):
        db.session.rollback()
        app.logger.error(f"Internal error: {error}")
        return jsonify({"error": "internal_error", "message": "Internal server error"}), 500

    # API info endpoint
    @app.route("/api")
    def api_info():
        return jsonify(
            {
                "name": "Versch Forge",
                "version": __version__,
                "description": "Verschiebung Equations Toolkit API",
                "documentation": "/api/docs",
                "endpoints": {
                    "kummer": "/api/kummer",
                    "versch": "/api/versch",
                    "degen": "/api/degen",
                    "polar3": "/api/polar3",
                    "reports": "/api/reports",
                },
            }
        )

    # API documentation endpoint
    @app.route("/api/docs")
    def api_docs():
        return jsonify(
            {
                "title": "Versch Forge API Documentation",
                "version": __version__,
                "base_url": request.host_url.rstrip("/"),
                "formats": {
                    "field": "p^n or p^n/c with c the modulus as an integer whose base-p digits are its coefficients, e.g. 2^8/0x11d",
                    "curve": "a,b,c as field element codes",
                    "quartic": "A,B,C,D,E as field element codes",
                    "polynomials": "canonical graded-lex text, e.g. x00^2*x01^2+3*x10*x11",
                },
                "status_codes": {
                    "200": "Run completed and every certificate passed",
                    "400": "Invalid input",
                    "422": "A certificate failed",
                },
                "endpoints": {
                    "kummer": {
                        "GET /api/kummer/equation?field&curve": "Kummer quartic and lambda^2 values",
                        "GET /api/kummer/verify?field&curve[&lambda_sq]": "Abel-Jacobi identity certificate",
                    },
                    "versch": {
                        "GET /api/versch/equations?field&case[&curve|&lambdas]": "The four Verschiebung forms",
                        "GET /api/versch/census?field&map[&samples&seed&curve&lambdas]": "Fiber census",
                    },
                    "degen": {
                        "GET /api/degen/specialize?lambda[&mu&nu&field]": "Balanced nu and leading quadrics",
                    },
                    "polar3": {
                        "GET /api/polar3/find?[field&budget&seed&strategy]": "Search for a 16-nodal Heisenberg quartic",
                        "GET /api/polar3/analyze?quartic[&field&seed&targets]": "Nodes, tropes, image Kummer, degree counts",
                    },
                    "reports": {
                        "GET /api/reports[?command&status&page&per_page]": "List archived runs",
                        "GET /api/reports/<id>": "One archived report",
                    },
                },
            }
        )

    return app


if __name__ == "__main__":
    port = int(os.environ.get("PORT", 5000))
    debug = os.environ.get("FLASK_DEBUG", "true").lower() == "true"
    app = create_app()

    print(f"\n{'=' * 60}")
    print("Versch Forge - Verschiebung Equations Toolkit")
    print(f"{'=' * 60}")
    print(f"Running on http://0.0.0.0:{port}")
    print(f"Debug mode: {debug}")
    print(f"{'=' * 60}\n")

    app.run(host="0.0.0.0", port=port, debug=debug)

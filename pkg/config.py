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

"""Configuration settings for Versch Forge."""

import os

from dotenv import load_dotenv

load_dotenv()


def _int(name, default):
    return int(os.environ.get(name, default))


class Config:
    """Base configuration."""

    # Flask
    SECRET_KEY = os.environ.get("SECRET_KEY", "dev-secret-key-change-in-production")
    DEBUG = False
    TESTING = False

    # Report archive
    SQLALCHEMY_DATABASE_URI = os.environ.get("DATABASE_URL", "sqlite:///versch_forge.db")
    SQLALCHEMY_TRACK_MODIFICATIONS = False

    # CORS
    CORS_ORIGINS = [
        "https://versch-forge.org",
        "https://www.versch-forge.org",
    ]

    # Rate Limiting
    RATELIMIT_DEFAULT = "100 per minute"
    RATELIMIT_HEAVY = "10 per minute"
    RATELIMIT_STORAGE_URL = "memory://"
    RATELIMIT_STRATEGY = "fixed-window"

    # Enumeration
    VERSCH_THREADS = _int("VERSCH_THREADS", 1)
    VERSCH_ENUM_CHUNK = _int("VERSCH_ENUM_CHUNK", 1 << 18)
    VERSCH_ENUM_BUDGET = _int("VERSCH_ENUM_BUDGET", 2**30)

    # Laurent windows
    VERSCH_SERIES_WINDOW = _int("VERSCH_SERIES_WINDOW", 32)
    VERSCH_DEGEN_WINDOW = _int("VERSCH_DEGEN_WINDOW", 40)

    # Sampling and search
    VERSCH_CENSUS_SAMPLES = _int("VERSCH_CENSUS_SAMPLES", 200)
    VERSCH_DEFAULT_SEED = _int("VERSCH_DEFAULT_SEED", 0)
    VERSCH_MAX_EXTENSION = _int("VERSCH_MAX_EXTENSION", 12)
    VERSCH_POLAR_BUDGET = _int("VERSCH_POLAR_BUDGET", 100000)

    # Paths
    VERSCH_CORPUS_DIR = os.environ.get("VERSCH_CORPUS_DIR", os.path.join(os.path.dirname(__file__), "corpus"))
    VERSCH_LOG_DIR = os.environ.get("VERSCH_LOG_DIR", "logs")


class DevelopmentConfig(Config):
    """Development configuration."""

    DEBUG = True
    CORS_ORIGINS = ["*"]  # Allow all origins in development


class ProductionConfig(Config):
    """Production configuration."""

    DEBUG = False
    TESTING = False
    # SECRET_KEY and DATABASE_URL come from the environment in production


class TestingConfig(Config):
    """Testing configuration."""

    TESTING = True
    DEBUG = True
    SQLALCHEMY_DATABASE_URI = "sqlite:///:memory:"
    RATELIMIT_ENABLED = False
    VERSCH_CENSUS_SAMPLES = 20


config = {
    "development": DevelopmentConfig,
    "production": ProductionConfig,
    "testing": TestingConfig,
    "default": DevelopmentConfig,
}


def get_config():
    """Get configuration based on environment."""
    env = os.environ.get("FLASK_ENV", "development")
    return config.get(env, config["default"])


def settings(config_class=None):
    """The VERSCH_* values of a configuration class as a plain dict."""
    config_class = config_class or get_config()
    return {name: getattr(config_class, name) for name in dir(config_class) if name.startswith("VERSCH_")}

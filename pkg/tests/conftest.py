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

"""Shared fixtures for the Versch Forge test suite."""

import pytest

from app import create_app
from geometry.gf import GF
from utils.reporting import make_rng


@pytest.fixture
def app():
    """Application with the testing config and an in-memory archive."""
    app = create_app("testing")
    yield app


@pytest.fixture
def client(app):
    return app.test_client()


@pytest.fixture
def gf2():
    return GF(2, 1)


@pytest.fixture
def gf16():
    return GF(2, 4)


@pytest.fixture
def gf64():
    return GF(2, 6)


@pytest.fixture
def gf256():
    return GF(2, 8)


@pytest.fixture
def gf9():
    return GF(3, 2)


@pytest.fixture
def rng():
    return make_rng(0)

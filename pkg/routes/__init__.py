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

"""Routes package for the Versch Forge API."""

from .kummer import kummer_bp
from .versch import versch_bp
from .degen import degen_bp
from .polar3 import polar3_bp
from .reports import reports_bp

__all__ = [
    "kummer_bp",
    "versch_bp",
    "degen_bp",
    "polar3_bp",
    "reports_bp",
]

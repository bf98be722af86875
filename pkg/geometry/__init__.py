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
Mathematical core of Versch Forge.

The arithmetic layer (fields, forms, series, curves) is re-exported here.
Modules that enumerate points (theta_kummer, versch, degen, polar3) are
imported by path.
"""

from .errors import VerificationFailure, VerschError
from .forms import PointP3, SparseForm, parse_form
from .genus2 import Curve2, S3Perm, curve_new, s3_act
from .gf import GF, Field, FieldSpec, extension, field_new, subfield_embed
from .laurent import LaurentSeries, ValSymbol

__all__ = [
    "Curve2",
    "Field",
    "FieldSpec",
    "GF",
    "LaurentSeries",
    "PointP3",
    "S3Perm",
    "SparseForm",
    "ValSymbol",
    "VerificationFailure",
    "VerschError",
    "curve_new",
    "extension",
    "field_new",
    "parse_form",
    "s3_act",
    "subfield_embed",
]

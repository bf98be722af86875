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

"""Error types raised by the geometry package."""

import re


class VerschError(Exception):
    """Base class for all toolkit errors."""

    def __init__(self, message="", **details):
        super().__init__(message)
        self.message = message
        self.details = details

    @property
    def code(self):
        """Machine-readable snake_case name of the error."""
        return re.sub(r"(?<!^)(?=[A-Z])", "_", type(self).__name__).lower()

    def to_dict(self):
        """Convert to dictionary."""
        data = {"error": self.code, "message": self.message}
        if self.details:
            data["details"] = self.details
        return data


class VerificationFailure(VerschError):
    """A certificate did not check out."""


# Fields
class RejectsReducibleModulus(VerschError):
    pass


class WrongCharacteristic(VerschError):
    pass


class FieldMismatch(VerschError):
    pass


# Forms
class ArityMismatch(VerschError):
    pass


class DegreeMismatch(VerschError):
    pass


class DivideByZero(VerschError):
    pass


class ExponentOverflow(VerschError):
    pass


class DegenerateSystem(VerschError):
    pass


# Laurent series
class EmptyWindow(VerschError):
    pass


class OddValuation(VerschError):
    pass


class OddExponentPresent(VerschError):
    pass


# Curves and Kummer quartics
class SingularCurve(VerschError):
    pass


class NonInvertible(VerschError):
    pass


class IdentityFails(VerificationFailure):
    pass


# Maps and censuses
class ZeroCoefficient(VerschError):
    pass


class BudgetExceeded(VerschError):
    pass


# Degeneration
class ZeroLambda(VerschError):
    pass


class WindowExhausted(VerschError):
    pass


class NoBalance(VerificationFailure):
    pass


class SpanMismatch(VerificationFailure):
    pass


# Characteristic 3
class BudgetExhausted(VerschError):
    pass


class NoSolution(VerificationFailure):
    pass


class NonUniqueBeyondScalar(VerschError):
    pass


class ConfigViolation(VerificationFailure):
    pass


class PairingAmbiguous(VerschError):
    pass


class UnresolvedFiber(VerschError):
    pass
